#ifndef OBSTRUCTOR_NEWFORM_HPP
#define OBSTRUCTOR_NEWFORM_HPP

#include <string>
#include <vector>

#include "obstructor/dirichlet.hpp"
#include "obstructor/number_field.hpp"

namespace obstructor {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, const std::string& where)
      : Error(what + " [" + where + "]"), location(where) {}
  std::string location;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

struct NewformData {
  std::string label;
  int weight = 0;
  BigInt level;
  DirichletCharacter character;
  FieldPtr field;
  std::vector<FieldElement> an;  // an[i] is a_{i+1}
  int precision = 0;

  bool has(long n) const { return n >= 1 && n <= precision; }
  const FieldElement& a(long n) const {
    if (!has(n))
      throw InsufficientData(label + ": coefficient a_" + std::to_string(n) + " beyond precision");
    return an[static_cast<size_t>(n - 1)];
  }
};

// Parse the newform JSON schema; source_name is used in error locations.
NewformData parse_newform_json(const std::string& text, const std::string& source_name);
NewformData load_newform(const std::string& path);
std::string newform_to_json(const NewformData& f);

struct ValidationIssue {
  std::string check;
  std::string message;
  long index = 0;  // offending coefficient index when applicable
  bool fatal = false;
};

struct ValidationReport {
  enum class Status { valid, valid_with_warnings, invalid };
  Status status = Status::valid;
  std::vector<ValidationIssue> issues;
  std::vector<std::string> checks_run;

  std::vector<long> warning_indices() const;
  bool ok() const { return status != Status::invalid; }
};

// Hecke-recursion, multiplicativity, character, squarefree-level and
// Weil-bound checks.  Prime-power inconsistencies at p | N are warnings;
// only a_1 != 1, a non-squarefree level, and character inconsistencies
// are fatal.
ValidationReport validate(const NewformData& f);

// Coefficients of Delta = q prod (1-q^n)^24 through q^B: weight 12,
// level 1, trivial character, rational field.
NewformData delta_coefficients(int B);

// Coefficient-wise Galois conjugate; sigma must be an automorphism of
// f's coefficient field, given by the image of theta.
NewformData galois_conjugate_form(const NewformData& f, const FieldElement& theta_image);

}  // namespace obstructor

#endif
