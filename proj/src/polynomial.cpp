#include "obstructor/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "obstructor/mod_poly.hpp"

namespace obstructor {

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<BigInt> c(a.c.size() + b.c.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& a = c[static_cast<size_t>(i)];
    if (a == 0) continue;
    BigInt aa = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? "-" : "+");
    }
    bool coeff_one = (aa == 1);
    if (i == 0) {
      os << aa.get_str();
    } else {
      if (!coeff_one) os << aa.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RatPoly rat_poly(const IntPolynomial& p) {
  RatPoly r;
  for (auto& x : p.c) r.emplace_back(x);
  return r;
}

void rat_normalize(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int rat_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  rat_normalize(c);
  return c;
}

RatPoly rat_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  rat_normalize(c);
  return c;
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  rat_normalize(c);
  return c;
}

std::pair<RatPoly, RatPoly> rat_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.empty()) throw InvalidArgument("rat_divmod: division by zero polynomial");
  RatPoly r = a, q;
  rat_normalize(r);
  int db = rat_degree(b);
  if (rat_degree(r) >= db) q.assign(static_cast<size_t>(rat_degree(r) - db) + 1, Rational(0));
  while (rat_degree(r) >= db) {
    int dr = rat_degree(r);
    Rational coef = r[static_cast<size_t>(dr)] / b[static_cast<size_t>(db)];
    q[static_cast<size_t>(dr - db)] = coef;
    for (int i = 0; i <= db; ++i)
      r[static_cast<size_t>(dr - db + i)] -= coef * b[static_cast<size_t>(i)];
    rat_normalize(r);
  }
  rat_normalize(q);
  return {q, r};
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  rat_normalize(a);
  rat_normalize(b);
  while (!b.empty()) {
    auto [q, r] = rat_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& x : a) x /= lc;
  }
  return a;
}

Rational rat_eval(const RatPoly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  rat_normalize(d);
  return d;
}

Rational resultant(const RatPoly& f0, const RatPoly& g0) {
  RatPoly f = f0, g = g0;
  rat_normalize(f);
  rat_normalize(g);
  if (f.empty() || g.empty()) return Rational(0);
  Rational res = 1;
  // Euclidean recurrence: Res(f,g) = (-1)^{df*dg} lc(g)^{df-dr} Res(g,r).
  while (true) {
    int df = rat_degree(f), dg = rat_degree(g);
    if (dg == 0) {
      Rational lc = g[0], out = res;
      for (int i = 0; i < df; ++i) out *= lc;
      return out;
    }
    auto [q, r] = rat_divmod(f, g);
    if (r.empty()) return Rational(0);
    int dr = rat_degree(r);
    Rational lc = g.back(), fac = 1;
    for (int i = 0; i < df - dr; ++i) fac *= lc;
    if ((df % 2) && (dg % 2)) fac = -fac;
    res *= fac;
    f = std::move(g);
    g = std::move(r);
  }
}

Rational discriminant(const RatPoly& f) {
  int d = rat_degree(f);
  if (d < 1) throw InvalidArgument("discriminant: degree must be >= 1");
  if (d == 1) return Rational(1);
  Rational r = resultant(f, rat_derivative(f)) / f.back();
  if ((d * (d - 1) / 2) % 2) r = -r;
  return r;
}

BigInt discriminant_int(const IntPolynomial& f) {
  Rational d = discriminant(rat_poly(f));
  if (d.get_den() != 1) throw Error("discriminant_int: unexpected denominator");
  return d.get_num();
}

IntPolynomial primitive_part(const RatPoly& p) {
  RatPoly q = p;
  rat_normalize(q);
  if (q.empty()) return IntPolynomial();
  BigInt den = 1;
  for (auto& x : q) den = lcm_big(den, x.get_den());
  std::vector<BigInt> c;
  for (auto& x : q) c.push_back(x.get_num() * (den / x.get_den()));
  BigInt content = 0;
  for (auto& x : c) content = gcd_big(content, x);
  if (c.back() < 0) content = -content;
  for (auto& x : c) x /= content;
  return IntPolynomial(std::move(c));
}

namespace {

// All integer divisors of |n| (both signs), n != 0.
std::vector<BigInt> all_divisors_signed(const BigInt& n) {
  auto fac = factor_integer(n);
  std::vector<BigInt> divs{1};
  for (auto& [p, e] : fac) {
    size_t sz = divs.size();
    BigInt pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
    }
  }
  size_t sz = divs.size();
  for (size_t j = 0; j < sz; ++j) divs.push_back(-divs[j]);
  return divs;
}

bool has_rational_root(const IntPolynomial& f) {
  // Monic f: rational roots are integer divisors of the constant term.
  if (f.c.front() == 0) return true;  // x | f
  for (auto& r : all_divisors_signed(f.c.front()))
    if (f.eval(r) == 0) return true;
  return false;
}

bool quartic_has_quadratic_factor(const IntPolynomial& f) {
  // Monic quartic x^4 + f3 x^3 + f2 x^2 + f1 x + f0 as
  // (x^2+ax+b)(x^2+cx+d): enumerate divisor pairs (b,d) of f0.
  const BigInt &f0 = f.c[0], &f1 = f.c[1], &f2 = f.c[2], &f3 = f.c[3];
  if (f0 == 0) return true;
  for (auto& b : all_divisors_signed(f0)) {
    if (!mpz_divisible_p(f0.get_mpz_t(), b.get_mpz_t())) continue;
    BigInt d = f0 / b;
    if (b == d) {
      // a + c = f3, ac = f2 - 2b, b(a+c) = f1 required.
      if (b * f3 != f1) continue;
      BigInt ac = f2 - 2 * b;
      BigInt disc = f3 * f3 - 4 * ac;
      if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) return true;
    } else {
      // a(d - b) = f1 - f3*b determines a; then check the remaining eqs.
      BigInt num = f1 - f3 * b, den = d - b;
      if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
      BigInt a = num / den, c = f3 - a;
      if (b + d + a * c == f2) return true;
    }
  }
  return false;
}

}  // namespace

bool is_irreducible_over_Q(const IntPolynomial& f) {
  int d = f.degree();
  if (d < 1) return false;
  if (!f.is_monic()) throw InvalidArgument("is_irreducible_over_Q: expected monic");
  if (d == 1) return true;
  if (has_rational_root(f)) return false;
  if (d <= 3) return true;
  if (d == 4) return !quartic_has_quadratic_factor(f);
  // Degree >= 5: accept an irreducible reduction mod p as a certificate.
  for (long p : primes_up_to(500)) {
    BigInt P(p);
    if (mod_reduce(f.leading(), P) == 0) continue;
    PrimeFieldPoly fp = PrimeFieldPoly::from_int_poly(f, P);
    if (fp.degree() != d) continue;
    if (is_irreducible_mod_p(fp)) return true;
  }
  throw Error("is_irreducible_over_Q: cannot certify degree >= 5 polynomial");
}

}  // namespace obstructor
