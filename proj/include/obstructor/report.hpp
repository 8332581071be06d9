#ifndef OBSTRUCTOR_REPORT_HPP
#define OBSTRUCTOR_REPORT_HPP

#include <string>
#include <vector>

#include "obstructor/obstruction.hpp"

namespace obstructor {

inline constexpr const char* kToolVersion = "obstructor 0.1.0";

std::string sha256_hex(const std::string& bytes);

struct InputDigest {
  std::string path;
  std::string sha256;
};

// The machine-readable report: deterministic for identical inputs, flags
// and seed; emitted JSON reparses and reserializes to the same bytes.
struct ReportDocument {
  std::vector<InputDigest> inputs;
  std::string subject_label;

  bool has_validation = false;
  std::vector<std::pair<std::string, ValidationReport>> validations;

  bool has_congruence = false;
  CandidateSet candidates;
  std::vector<CongruencePrimeRecord> records;
  std::vector<std::string> congruence_notes;

  bool has_obstruction = false;
  int field_degree = 1;
  ObstructionReport obstruction;

  std::string to_json() const;
  std::string to_table() const;
};

std::string slot_json_label(const PrimeSlot& slot, int field_degree);

}  // namespace obstructor

#endif
