#ifndef OBSTRUCTOR_NUMBER_FIELD_HPP
#define OBSTRUCTOR_NUMBER_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "obstructor/finite_field.hpp"
#include "obstructor/mod_poly.hpp"
#include "obstructor/polynomial.hpp"

namespace obstructor {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// The coefficient field K = Q(theta), theta a root of a monic irreducible
// integer polynomial.  The rational field is the degree-1 case with
// min_poly = x.  Immutable after construction.
class NumberField {
 public:
  static FieldPtr create(IntPolynomial min_poly);
  static FieldPtr rationals();

  int degree() const { return min_poly_.degree(); }
  const IntPolynomial& min_poly() const { return min_poly_; }
  const BigInt& disc() const { return disc_; }
  bool is_rational() const { return degree() == 1; }
  bool same_field(const NumberField& o) const { return min_poly_ == o.min_poly_; }

 private:
  NumberField(IntPolynomial mp, BigInt d) : min_poly_(std::move(mp)), disc_(std::move(d)) {}
  IntPolynomial min_poly_;
  BigInt disc_;
};

// Element of K in the power basis 1, theta, ..., theta^(d-1); exact
// rational coordinates (canonical via mpq).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr K, std::vector<Rational> coords);
  static FieldElement from_rational(const FieldPtr& K, const Rational& r);
  static FieldElement zero(const FieldPtr& K) { return from_rational(K, 0); }
  static FieldElement one(const FieldPtr& K) { return from_rational(K, 1); }
  static FieldElement generator(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational_value() const;  // all higher coordinates vanish
  const Rational& rational_value() const;
  bool is_integral() const;  // integer coordinates

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inverse() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const;  // power-basis rendering with theta

 private:
  FieldPtr K_;
  std::vector<Rational> coords_;
};

FieldElement operator*(const BigInt& s, const FieldElement& a);
FieldElement operator+(const FieldElement& a, const BigInt& s);
FieldElement operator-(const FieldElement& a, const BigInt& s);

// Product of a over all embeddings of K; for x + y*theta with
// theta^2 = t this is x^2 - t*y^2.
Rational norm(const FieldElement& a);
Rational trace(const FieldElement& a);

// Monic minimal polynomial of a over Q.
RatPoly element_min_poly(const FieldElement& a);
// Integer version; requires the minimal polynomial to have integer
// coefficients (true for elements of the coefficient order).
IntPolynomial element_min_poly_int(const FieldElement& a);

// A prime lambda of K above ell, identified by the corresponding monic
// irreducible factor of min_poly mod ell in the order Z[theta].
struct PrimeSlot {
  BigInt ell;
  PrimeFieldPoly local_factor;
  int e = 1;
  int f = 1;
  bool index_warning = false;

  bool operator==(const PrimeSlot& o) const {
    return ell == o.ell && local_factor == o.local_factor;
  }
  bool operator<(const PrimeSlot& o) const {
    if (ell != o.ell) return ell < o.ell;
    return local_factor < o.local_factor;
  }
  // "(ell)" when the factor is all of min_poly mod ell with e = 1
  // (rational or inert), otherwise "(ell, g(theta))".
  std::string label(int field_degree) const;
};

// One slot per irreducible factor of min_poly mod ell over Z[theta];
// index_warning set iff ell^2 | disc(min_poly).
std::vector<PrimeSlot> primes_above(const FieldPtr& K, const BigInt& ell);

// Image of a in F_ell[x]/(local_factor).  Pre: denominators coprime to
// ell, and no index warning unless allow_index_warning is set (the
// callers that set it restrict to residue degree 1, where the reduction
// map of the coefficient order is still a well-defined ring
// homomorphism).
FiniteFieldElement reduce_element(const FieldElement& a, const PrimeSlot& slot,
                                  bool allow_index_warning = false);

struct Automorphisms {
  std::vector<FieldElement> theta_images;  // identity first
  bool complete = true;
};

// All automorphisms of K fixing Q, as images of theta.  Complete for
// degree <= 2; for a cubic the quadratic cofactor after dividing out
// theta is tested for a root via a norm obstruction; higher degrees are
// flagged incomplete.
Automorphisms field_automorphisms(const FieldPtr& K);

// Coefficient-wise application of an automorphism given by sigma(theta).
FieldElement apply_automorphism(const FieldElement& a, const FieldElement& theta_image);

// The slot sigma(lambda) for quadratic (or rational) K.
PrimeSlot conjugate_slot(const FieldPtr& K, const PrimeSlot& slot, const FieldElement& theta_image);

}  // namespace obstructor

#endif
