#ifndef OBSTRUCTOR_MOD_POLY_HPP
#define OBSTRUCTOR_MOD_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "obstructor/numeric.hpp"
#include "obstructor/polynomial.hpp"

namespace obstructor {

// Polynomial over F_p, p prime.  Coefficients reduced into [0, p), lowest
// degree first, no trailing zeros.
struct PrimeFieldPoly {
  BigInt p;
  std::vector<BigInt> c;

  PrimeFieldPoly() : p(0) {}
  PrimeFieldPoly(BigInt modulus, std::vector<BigInt> coeffs) : p(std::move(modulus)), c(std::move(coeffs)) {
    reduce();
  }

  static PrimeFieldPoly from_int_poly(const IntPolynomial& f, const BigInt& p);
  static PrimeFieldPoly x(const BigInt& p) { return PrimeFieldPoly(p, {BigInt(0), BigInt(1)}); }
  static PrimeFieldPoly constant(const BigInt& p, const BigInt& a) { return PrimeFieldPoly(p, {a}); }

  void reduce() {
    for (auto& a : c) a = mod_reduce(a, p);
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const BigInt& leading() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  BigInt coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : BigInt(0);
  }
  BigInt eval(const BigInt& x) const;

  bool operator==(const PrimeFieldPoly& o) const { return p == o.p && c == o.c; }
  // Canonical order: degree first, then coefficient vector from the
  // constant term up.  Used everywhere output lists must be deterministic.
  bool operator<(const PrimeFieldPoly& o) const;

  std::string to_string(const std::string& var = "x") const;
};

PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
std::pair<PrimeFieldPoly, PrimeFieldPoly> divmod(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
PrimeFieldPoly gcd_poly(PrimeFieldPoly a, PrimeFieldPoly b);  // monic
PrimeFieldPoly make_monic(const PrimeFieldPoly& a);
PrimeFieldPoly derivative(const PrimeFieldPoly& a);
// base^e mod m over F_p
PrimeFieldPoly powmod_poly(const PrimeFieldPoly& base, const BigInt& e, const PrimeFieldPoly& m);

// Seed for the randomized equal-degree splits.  Runs are reproducible for
// a fixed seed; the returned factor lists are canonical regardless.
void set_factorization_seed(std::uint64_t seed);
std::uint64_t factorization_seed();

// Full factorization of poly mod ell: monic irreducible factors with
// multiplicities, sorted canonically.  The unit (leading coefficient of
// poly mod ell) is dropped.  Throws InvalidArgument unless ell is prime
// and poly is nonzero mod ell.
std::vector<std::pair<PrimeFieldPoly, int>> factor_poly_mod_p(const IntPolynomial& poly, const BigInt& ell);
std::vector<std::pair<PrimeFieldPoly, int>> factor_mod_p(const PrimeFieldPoly& f);

bool is_irreducible_mod_p(const PrimeFieldPoly& f);

}  // namespace obstructor

#endif
