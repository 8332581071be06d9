#include "obstructor/mod_poly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>

namespace obstructor {

PrimeFieldPoly PrimeFieldPoly::from_int_poly(const IntPolynomial& f, const BigInt& p) {
  return PrimeFieldPoly(p, f.c);
}

BigInt PrimeFieldPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = mod_reduce(r * x + *it, p);
  return r;
}

bool PrimeFieldPoly::operator<(const PrimeFieldPoly& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  return false;
}

std::string PrimeFieldPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& a = c[static_cast<size_t>(i)];
    if (a == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {
void check_same_field(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  if (a.p != b.p) throw InvalidArgument("PrimeFieldPoly: mismatched moduli");
}
}  // namespace

PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  check_same_field(a, b);
  std::vector<BigInt> c(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return PrimeFieldPoly(a.p, std::move(c));
}

PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  check_same_field(a, b);
  std::vector<BigInt> c(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return PrimeFieldPoly(a.p, std::move(c));
}

PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return PrimeFieldPoly(a.p, {});
  std::vector<BigInt> c(a.c.size() + b.c.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return PrimeFieldPoly(a.p, std::move(c));
}

std::pair<PrimeFieldPoly, PrimeFieldPoly> divmod(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw InvalidArgument("divmod: division by zero polynomial");
  PrimeFieldPoly r = a;
  std::vector<BigInt> q;
  int db = b.degree();
  BigInt lc_inv = invmod(b.leading(), a.p);
  if (r.degree() >= db) q.assign(static_cast<size_t>(r.degree() - db) + 1, BigInt(0));
  while (r.degree() >= db) {
    int dr = r.degree();
    BigInt coef = mod_reduce(r.leading() * lc_inv, a.p);
    q[static_cast<size_t>(dr - db)] = coef;
    for (int i = 0; i <= db; ++i) {
      size_t k = static_cast<size_t>(dr - db + i);
      r.c[k] = mod_reduce(r.c[k] - coef * b.coeff(i), a.p);
    }
    r.reduce();
  }
  return {PrimeFieldPoly(a.p, std::move(q)), r};
}

PrimeFieldPoly make_monic(const PrimeFieldPoly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  BigInt inv = invmod(a.leading(), a.p);
  std::vector<BigInt> c = a.c;
  for (auto& x : c) x = mod_reduce(x * inv, a.p);
  return PrimeFieldPoly(a.p, std::move(c));
}

PrimeFieldPoly gcd_poly(PrimeFieldPoly a, PrimeFieldPoly b) {
  check_same_field(a, b);
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

PrimeFieldPoly derivative(const PrimeFieldPoly& a) {
  std::vector<BigInt> d;
  for (size_t i = 1; i < a.c.size(); ++i) d.push_back(a.c[i] * static_cast<long>(i));
  return PrimeFieldPoly(a.p, std::move(d));
}

PrimeFieldPoly powmod_poly(const PrimeFieldPoly& base, const BigInt& e, const PrimeFieldPoly& m) {
  PrimeFieldPoly result = PrimeFieldPoly::constant(base.p, 1);
  PrimeFieldPoly b = divmod(base, m).second;
  BigInt exp = e;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = divmod(result * b, m).second;
    b = divmod(b * b, m).second;
    exp >>= 1;
  }
  return result;
}

namespace {

std::atomic<std::uint64_t> g_factor_seed{0x6f62737472756374ull};

// --- squarefree decomposition (char p) ---

// c(x) = v(x^p) -> v; valid over F_p where a^p = a.
PrimeFieldPoly contract_pth_power(const PrimeFieldPoly& f) {
  unsigned long p = f.p.get_ui();
  std::vector<BigInt> v;
  for (size_t i = 0; i < f.c.size(); i += p) v.push_back(f.c[i]);
  return PrimeFieldPoly(f.p, std::move(v));
}

void squarefree_decomp(const PrimeFieldPoly& f0, int outer_mult,
                       std::map<PrimeFieldPoly, int>& out) {
  PrimeFieldPoly f = make_monic(f0);
  if (f.degree() <= 0) return;
  PrimeFieldPoly fd = derivative(f);
  if (fd.is_zero()) {
    if (f.p.fits_ulong_p() == 0)
      throw Error("squarefree_decomp: p-th power part with huge p");
    squarefree_decomp(contract_pth_power(f), outer_mult * static_cast<int>(f.p.get_ui()), out);
    return;
  }
  PrimeFieldPoly c = gcd_poly(f, fd);
  PrimeFieldPoly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    PrimeFieldPoly y = gcd_poly(w, c);
    PrimeFieldPoly z = divmod(w, y).first;
    if (z.degree() > 0) out[make_monic(z)] += i * outer_mult;
    w = y;
    c = divmod(c, y).first;
    ++i;
  }
  if (c.degree() > 0) {
    if (f.p.fits_ulong_p() == 0)
      throw Error("squarefree_decomp: p-th power part with huge p");
    squarefree_decomp(contract_pth_power(c), outer_mult * static_cast<int>(f.p.get_ui()), out);
  }
}

// --- equal-degree splitting ---

PrimeFieldPoly random_poly_below(const PrimeFieldPoly& f, std::mt19937_64& rng) {
  std::vector<BigInt> c;
  int d = f.degree();
  for (int i = 0; i < d; ++i) {
    BigInt v(static_cast<unsigned long>(rng()));
    v <<= 64;
    v += static_cast<unsigned long>(rng());
    c.push_back(mod_reduce(v, f.p));
  }
  return PrimeFieldPoly(f.p, std::move(c));
}

// All monic polynomials of degree exactly d over F_p in canonical order.
std::vector<PrimeFieldPoly> enumerate_monic(const BigInt& p, int d) {
  std::vector<PrimeFieldPoly> out;
  unsigned long pl = p.get_ui();
  BigInt count = pow_big(p, static_cast<unsigned long>(d));
  for (BigInt t = 0; t < count; ++t) {
    std::vector<BigInt> c;
    BigInt v = t;
    for (int i = 0; i < d; ++i) {
      c.push_back(v % pl);
      v /= pl;
    }
    c.push_back(1);
    out.emplace_back(p, std::move(c));
  }
  return out;
}

void equal_degree_split(const PrimeFieldPoly& f, int d, std::mt19937_64& rng,
                        std::vector<PrimeFieldPoly>& out);

void edf_recurse(const PrimeFieldPoly& f, int d, std::mt19937_64& rng,
                 std::vector<PrimeFieldPoly>& out) {
  if (f.degree() == d) {
    out.push_back(make_monic(f));
    return;
  }
  equal_degree_split(f, d, rng, out);
}

void equal_degree_split(const PrimeFieldPoly& f, int d, std::mt19937_64& rng,
                        std::vector<PrimeFieldPoly>& out) {
  const BigInt& p = f.p;

  // Tiny search spaces: exhaustive trial division is deterministic and
  // covers characteristic 2 uniformly.
  BigInt space = pow_big(p, static_cast<unsigned long>(d));
  if (space <= 4096) {
    PrimeFieldPoly rest = f;
    for (auto& cand : enumerate_monic(p, d)) {
      if (rest.degree() < d) break;
      auto [q, r] = divmod(rest, cand);
      if (r.is_zero() && is_irreducible_mod_p(cand)) {
        while (true) {
          out.push_back(cand);
          rest = q;
          if (rest.degree() < d) break;
          auto [q2, r2] = divmod(rest, cand);
          if (!r2.is_zero()) break;
          q = q2;
        }
      }
    }
    if (rest.degree() > 0) throw Error("equal_degree_split: exhaustive split failed");
    return;
  }

  if (d == 1 && f.degree() == 2 && p > 2) {
    // Deterministic quadratic-formula path.
    BigInt a = f.coeff(2), b = f.coeff(1), cc = f.coeff(0);
    BigInt inv2a = invmod(mod_reduce(2 * a, p), p);
    BigInt disc = mod_reduce(b * b - 4 * a * cc, p);
    BigInt s = sqrt_mod(disc, p);
    BigInt r1 = mod_reduce((-b + s) * inv2a, p);
    BigInt r2 = mod_reduce((-b - s) * inv2a, p);
    out.push_back(PrimeFieldPoly(p, {mod_reduce(-r1, p), BigInt(1)}));
    out.push_back(PrimeFieldPoly(p, {mod_reduce(-r2, p), BigInt(1)}));
    return;
  }

  // Cantor-Zassenhaus.
  while (true) {
    PrimeFieldPoly r = random_poly_below(f, rng);
    if (r.degree() < 1) continue;
    PrimeFieldPoly g = gcd_poly(r, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf_recurse(g, d, rng, out);
      edf_recurse(divmod(f, g).first, d, rng, out);
      return;
    }
    PrimeFieldPoly h;
    if (p == 2) {
      // Trace splitter over F_{2^d}: h = r + r^2 + ... + r^(2^(d-1)).
      h = divmod(r, f).second;
      PrimeFieldPoly t = h;
      for (int i = 1; i < d; ++i) {
        t = divmod(t * t, f).second;
        h = divmod(h + t, f).second;
      }
    } else {
      BigInt e = (pow_big(p, static_cast<unsigned long>(d)) - 1) / 2;
      h = powmod_poly(r, e, f) - PrimeFieldPoly::constant(p, 1);
    }
    g = gcd_poly(h, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf_recurse(g, d, rng, out);
      edf_recurse(divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

void set_factorization_seed(std::uint64_t seed) { g_factor_seed.store(seed); }
std::uint64_t factorization_seed() { return g_factor_seed.load(); }

std::vector<std::pair<PrimeFieldPoly, int>> factor_mod_p(const PrimeFieldPoly& f0) {
  if (!is_prime(f0.p)) throw InvalidArgument("factor_mod_p: modulus not prime");
  PrimeFieldPoly f = f0;
  f.reduce();
  if (f.is_zero()) throw InvalidArgument("factor_mod_p: polynomial is zero mod p");
  std::map<PrimeFieldPoly, int> sqf;
  squarefree_decomp(f, 1, sqf);

  std::mt19937_64 rng(factorization_seed());
  std::vector<std::pair<PrimeFieldPoly, int>> result;
  for (auto& [part, mult] : sqf) {
    // Distinct-degree factorization of the squarefree part.
    PrimeFieldPoly rest = part;
    PrimeFieldPoly h = PrimeFieldPoly::x(f.p);
    int d = 0;
    while (rest.degree() > 0 && 2 * (d + 1) <= rest.degree()) {
      ++d;
      h = powmod_poly(h, f.p, rest);
      PrimeFieldPoly g = gcd_poly(h - PrimeFieldPoly::x(f.p), rest);
      if (g.degree() > 0) {
        std::vector<PrimeFieldPoly> irr;
        edf_recurse(g, d, rng, irr);
        for (auto& fac : irr) result.emplace_back(fac, mult);
        rest = divmod(rest, g).first;
        h = divmod(h, rest).second;
      }
    }
    if (rest.degree() > 0) result.emplace_back(make_monic(rest), mult);
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

std::vector<std::pair<PrimeFieldPoly, int>> factor_poly_mod_p(const IntPolynomial& poly, const BigInt& ell) {
  if (!is_prime(ell)) throw InvalidArgument("factor_poly_mod_p: ell not prime");
  return factor_mod_p(PrimeFieldPoly::from_int_poly(poly, ell));
}

bool is_irreducible_mod_p(const PrimeFieldPoly& f0) {
  PrimeFieldPoly f = make_monic(f0);
  int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  // x^(p^d) == x mod f, and gcd(x^(p^(d/q)) - x, f) == 1 for primes q | d.
  PrimeFieldPoly x = PrimeFieldPoly::x(f.p);
  PrimeFieldPoly h = x;
  std::vector<PrimeFieldPoly> powers;  // h_i = x^(p^i) mod f
  powers.push_back(h);
  for (int i = 1; i <= d; ++i) {
    h = powmod_poly(h, f.p, f);
    powers.push_back(h);
  }
  if (!(powers[static_cast<size_t>(d)] == divmod(x, f).second)) return false;
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool q_prime = true;
    for (int t = 2; t * t <= q; ++t)
      if (q % t == 0) q_prime = false;
    if (!q_prime) continue;
    PrimeFieldPoly g = gcd_poly(powers[static_cast<size_t>(d / q)] - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

}  // namespace obstructor
