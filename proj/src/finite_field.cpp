#include "obstructor/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace obstructor {

namespace {
std::mutex g_modulus_mutex;
std::map<std::pair<BigInt, int>, PrimeFieldPoly> g_modulus_cache;
}  // namespace

PrimeFieldPoly canonical_modulus(const BigInt& ell, int m) {
  if (m < 1) throw InvalidArgument("canonical_modulus: m must be >= 1");
  if (!is_prime(ell)) throw InvalidArgument("canonical_modulus: ell not prime");
  std::lock_guard<std::mutex> lock(g_modulus_mutex);
  auto key = std::make_pair(ell, m);
  auto it = g_modulus_cache.find(key);
  if (it != g_modulus_cache.end()) return it->second;

  PrimeFieldPoly found;
  if (m == 1) {
    found = PrimeFieldPoly::x(ell);
  } else {
    // Smallest-lexicographic search: low coefficients count upward in
    // base ell below a monic leading term.
    for (BigInt t = 0;; ++t) {
      std::vector<BigInt> c;
      BigInt v = t;
      for (int i = 0; i < m; ++i) {
        c.push_back(mod_reduce(v, ell));
        v /= ell;
      }
      if (v != 0) throw Error("canonical_modulus: search exhausted");
      c.push_back(1);
      PrimeFieldPoly cand(ell, std::move(c));
      if (is_irreducible_mod_p(cand)) {
        found = cand;
        break;
      }
    }
  }
  g_modulus_cache.emplace(key, found);
  return found;
}

namespace {
void check_same(const FiniteFieldElement& a, const FiniteFieldElement& b) {
  if (!(a.modulus == b.modulus)) throw InvalidArgument("FiniteFieldElement: field mismatch");
}
}  // namespace

FiniteFieldElement ff_add(const FiniteFieldElement& a, const FiniteFieldElement& b) {
  check_same(a, b);
  return FiniteFieldElement(a.modulus, a.rep + b.rep);
}

FiniteFieldElement ff_sub(const FiniteFieldElement& a, const FiniteFieldElement& b) {
  check_same(a, b);
  return FiniteFieldElement(a.modulus, a.rep - b.rep);
}

FiniteFieldElement ff_mul(const FiniteFieldElement& a, const FiniteFieldElement& b) {
  check_same(a, b);
  return FiniteFieldElement(a.modulus, divmod(a.rep * b.rep, a.modulus).second);
}

FiniteFieldElement ff_inv(const FiniteFieldElement& a) {
  if (a.is_zero()) throw InvalidArgument("ff_inv: zero element");
  // Extended Euclid in F_ell[x] against the modulus.
  PrimeFieldPoly r0 = a.modulus, r1 = a.rep;
  PrimeFieldPoly s0 = PrimeFieldPoly::constant(a.characteristic(), 0);
  PrimeFieldPoly s1 = PrimeFieldPoly::constant(a.characteristic(), 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    PrimeFieldPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd (a unit since modulus is irreducible and a != 0).
  BigInt inv = invmod(r0.coeff(0), a.characteristic());
  PrimeFieldPoly result = s0 * PrimeFieldPoly::constant(a.characteristic(), inv);
  return FiniteFieldElement(a.modulus, divmod(result, a.modulus).second);
}

FiniteFieldElement ff_pow(const FiniteFieldElement& a, const BigInt& e) {
  if (e < 0) return ff_pow(ff_inv(a), -e);
  return FiniteFieldElement(a.modulus, powmod_poly(a.rep, e, a.modulus));
}

FiniteFieldElement ff_constant(const PrimeFieldPoly& modulus, const BigInt& value) {
  return FiniteFieldElement(modulus, PrimeFieldPoly::constant(modulus.p, value));
}

FiniteFieldElement ff_generator(const PrimeFieldPoly& modulus) {
  return FiniteFieldElement(modulus, PrimeFieldPoly::x(modulus.p));
}

FiniteFieldElement ff_frobenius(const FiniteFieldElement& a) { return ff_pow(a, a.characteristic()); }

FiniteFieldElement ff_eval_poly(const PrimeFieldPoly& poly, const FiniteFieldElement& at) {
  FiniteFieldElement acc = ff_constant(at.modulus, 0);
  for (auto it = poly.c.rbegin(); it != poly.c.rend(); ++it)
    acc = ff_add(ff_mul(acc, at), ff_constant(at.modulus, *it));
  return acc;
}

namespace {

// Polynomials over F_q, represented as coefficient vectors of
// FiniteFieldElement sharing one modulus.  Only what root extraction
// needs.
using FqPoly = std::vector<FiniteFieldElement>;

void fq_normalize(FqPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int fq_degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly fq_sub(const FqPoly& a, const FqPoly& b, const PrimeFieldPoly& mod) {
  FqPoly c(std::max(a.size(), b.size()), ff_constant(mod, 0));
  for (size_t i = 0; i < a.size(); ++i) c[i] = ff_add(c[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) c[i] = ff_sub(c[i], b[i]);
  fq_normalize(c);
  return c;
}

FqPoly fq_mul(const FqPoly& a, const FqPoly& b, const PrimeFieldPoly& mod) {
  if (a.empty() || b.empty()) return {};
  FqPoly c(a.size() + b.size() - 1, ff_constant(mod, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = ff_add(c[i + j], ff_mul(a[i], b[j]));
  fq_normalize(c);
  return c;
}

std::pair<FqPoly, FqPoly> fq_divmod(const FqPoly& a, const FqPoly& b, const PrimeFieldPoly& mod) {
  if (b.empty()) throw InvalidArgument("fq_divmod: zero divisor");
  FqPoly r = a, q;
  fq_normalize(r);
  int db = fq_degree(b);
  FiniteFieldElement lead_inv = ff_inv(b.back());
  if (fq_degree(r) >= db) q.assign(static_cast<size_t>(fq_degree(r) - db) + 1, ff_constant(mod, 0));
  while (fq_degree(r) >= db) {
    int dr = fq_degree(r);
    FiniteFieldElement coef = ff_mul(r.back(), lead_inv);
    q[static_cast<size_t>(dr - db)] = coef;
    for (int i = 0; i <= db; ++i) {
      size_t k = static_cast<size_t>(dr - db + i);
      r[k] = ff_sub(r[k], ff_mul(coef, b[static_cast<size_t>(i)]));
    }
    fq_normalize(r);
  }
  fq_normalize(q);
  return {q, r};
}

FqPoly fq_gcd(FqPoly a, FqPoly b, const PrimeFieldPoly& mod) {
  fq_normalize(a);
  fq_normalize(b);
  while (!b.empty()) {
    auto [q, r] = fq_divmod(a, b, mod);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FiniteFieldElement inv = ff_inv(a.back());
    for (auto& x : a) x = ff_mul(x, inv);
  }
  return a;
}

FqPoly fq_powmod_x(const BigInt& e, const FqPoly& m, const PrimeFieldPoly& mod) {
  // x^e mod m
  FqPoly result{ff_constant(mod, 1)};
  FqPoly base{ff_constant(mod, 0), ff_constant(mod, 1)};
  base = fq_divmod(base, m, mod).second;
  BigInt exp = e;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = fq_divmod(fq_mul(result, base, mod), m, mod).second;
    base = fq_divmod(fq_mul(base, base, mod), m, mod).second;
    exp >>= 1;
  }
  return result;
}

FiniteFieldElement fq_random(const PrimeFieldPoly& mod, std::mt19937_64& rng) {
  std::vector<BigInt> c;
  for (int i = 0; i < mod.degree(); ++i) {
    BigInt v(static_cast<unsigned long>(rng()));
    v <<= 64;
    v += static_cast<unsigned long>(rng());
    c.push_back(mod_reduce(v, mod.p));
  }
  return FiniteFieldElement(mod, PrimeFieldPoly(mod.p, std::move(c)));
}

// f splits into distinct linear factors over F_q; collect the roots.
void fq_split_linear(const FqPoly& f, const PrimeFieldPoly& mod, std::mt19937_64& rng,
                     std::vector<FiniteFieldElement>& out) {
  int d = fq_degree(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(ff_mul(ff_sub(ff_constant(mod, 0), f[0]), ff_inv(f[1])));
    return;
  }
  const BigInt& p = mod.p;
  int m = mod.degree();
  while (true) {
    FiniteFieldElement r = fq_random(mod, rng);
    FqPoly g;
    if (p == 2) {
      // Trace splitter: T(r*x) = sum (r*x)^(2^i), i < m.
      FqPoly rx{ff_constant(mod, 0), r};
      rx = fq_divmod(rx, f, mod).second;
      FqPoly acc = rx, t = rx;
      for (int i = 1; i < m; ++i) {
        t = fq_divmod(fq_mul(t, t, mod), f, mod).second;
        acc = fq_sub(acc, t, mod);  // char 2: sub == add
      }
      g = fq_gcd(acc, f, mod);
    } else {
      BigInt e = (pow_big(p, static_cast<unsigned long>(m)) - 1) / 2;
      // (x + r)^e - 1 mod f
      FqPoly shifted{r, ff_constant(mod, 1)};
      FqPoly pw{ff_constant(mod, 1)};
      FqPoly base = fq_divmod(shifted, f, mod).second;
      BigInt exp = e;
      while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) pw = fq_divmod(fq_mul(pw, base, mod), f, mod).second;
        base = fq_divmod(fq_mul(base, base, mod), f, mod).second;
        exp >>= 1;
      }
      pw = fq_sub(pw, FqPoly{ff_constant(mod, 1)}, mod);
      g = fq_gcd(pw, f, mod);
    }
    if (fq_degree(g) > 0 && fq_degree(g) < d) {
      fq_split_linear(g, mod, rng, out);
      fq_split_linear(fq_divmod(f, g, mod).first, mod, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FiniteFieldElement> roots_in_extension(const PrimeFieldPoly& g, int m) {
  PrimeFieldPoly mod = canonical_modulus(g.p, m);
  // Lift g to F_q[x].
  FqPoly G;
  for (auto& coeff : g.c) G.push_back(ff_constant(mod, coeff));
  fq_normalize(G);
  if (G.empty()) throw InvalidArgument("roots_in_extension: zero polynomial");
  // Restrict to the split part: gcd(x^q - x, G).
  BigInt q = pow_big(g.p, static_cast<unsigned long>(m));
  FqPoly xq = fq_powmod_x(q, G, mod);
  FqPoly x{ff_constant(mod, 0), ff_constant(mod, 1)};
  FqPoly split = fq_gcd(fq_sub(xq, fq_divmod(x, G, mod).second, mod), G, mod);
  std::vector<FiniteFieldElement> roots;
  std::mt19937_64 rng(factorization_seed());
  fq_split_linear(split, mod, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<ResidueEmbedding> residue_embeddings(const PrimeFieldPoly& g, int m) {
  int f = g.degree();
  if (f < 1) throw InvalidArgument("residue_embeddings: source must have degree >= 1");
  if (m % f != 0) throw InvalidArgument("residue_embeddings: source degree does not divide target degree");
  std::vector<FiniteFieldElement> roots = roots_in_extension(g, m);
  if (static_cast<int>(roots.size()) != f) throw Error("residue_embeddings: unexpected root count");
  std::vector<ResidueEmbedding> out;
  for (auto& r : roots) out.push_back(ResidueEmbedding{g, r});
  return out;
}

}  // namespace obstructor
