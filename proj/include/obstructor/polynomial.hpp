#ifndef OBSTRUCTOR_POLYNOMIAL_HPP
#define OBSTRUCTOR_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "obstructor/numeric.hpp"

namespace obstructor {

// Integer polynomial, coefficients stored lowest degree first.  The zero
// polynomial has an empty coefficient vector; otherwise the leading
// coefficient is nonzero.
struct IntPolynomial {
  std::vector<BigInt> c;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  const BigInt& leading() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  BigInt eval(const BigInt& x) const {
    BigInt r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }

  IntPolynomial derivative() const {
    std::vector<BigInt> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    return IntPolynomial(std::move(d));
  }

  bool operator==(const IntPolynomial& o) const { return c == o.c; }
  std::string to_string(const std::string& var = "x") const;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

// Rational polynomials are plain coefficient vectors (lowest degree first,
// trailing zeros stripped); used for resultants, gcds and minimal
// polynomials of field elements.
using RatPoly = std::vector<Rational>;

RatPoly rat_poly(const IntPolynomial& p);
void rat_normalize(RatPoly& p);
int rat_degree(const RatPoly& p);
RatPoly rat_add(const RatPoly& a, const RatPoly& b);
RatPoly rat_sub(const RatPoly& a, const RatPoly& b);
RatPoly rat_mul(const RatPoly& a, const RatPoly& b);
// Division with remainder; b nonzero.
std::pair<RatPoly, RatPoly> rat_divmod(const RatPoly& a, const RatPoly& b);
// Monic gcd.
RatPoly rat_gcd(RatPoly a, RatPoly b);
Rational rat_eval(const RatPoly& p, const Rational& x);
RatPoly rat_derivative(const RatPoly& p);

// Res(f, g) via the Euclidean recurrence; exact.
Rational resultant(const RatPoly& f, const RatPoly& g);

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f).
Rational discriminant(const RatPoly& f);
BigInt discriminant_int(const IntPolynomial& f);

// Clears denominators and divides by the integer content; sign chosen so
// the leading coefficient is positive.
IntPolynomial primitive_part(const RatPoly& p);

// Exact irreducibility over Q for degree <= 4 (rational root test plus
// quadratic-times-quadratic search for quartics).  Degrees >= 5 are
// certified via an irreducible reduction mod p when one exists below the
// search bound; otherwise the test throws.
bool is_irreducible_over_Q(const IntPolynomial& f);

}  // namespace obstructor

#endif
