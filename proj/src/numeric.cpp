#include "obstructor/numeric.hpp"

#include <algorithm>
#include <map>

namespace obstructor {

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * 2; j <= n; j += i) composite[static_cast<size_t>(j)] = true;
  }
  return out;
}

namespace {

BigInt pollard_brent(const BigInt& n) {
  // n odd composite, no small factors.  Returns a nontrivial factor.
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
  }
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    BigInt saved_y = y;
    unsigned long power = 1, lam = 0;
    auto step = [&](BigInt v) { return mod_reduce(v * v + c, n); };
    x = step(x);
    BigInt q = 1;
    while (true) {
      if (lam == power) {
        saved_y = x;
        power <<= 1;
        lam = 0;
      }
      x = step(x);
      ++lam;
      q = mod_reduce(q * (x - saved_y), n);
      if (lam % 64 == 0 || lam == power) {
        d = gcd_big(q, n);
        if (d != 1) break;
      }
      if (power > (1ul << 24)) break;  // give up on this c
    }
    if (d == n || d == 0) {
      // Backtrack one by one from saved_y.
      BigInt ys = saved_y;
      do {
        ys = step(ys);
        d = gcd_big(x - ys, n);
      } while (d == 1 && ys != x);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(const BigInt& n, std::map<BigInt, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  BigInt d = pollard_brent(n);
  factor_rec(d, acc);
  factor_rec(n / d, acc);
}

}  // namespace

std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n) {
  BigInt m = abs(n);
  if (m == 0) throw InvalidArgument("factor_integer: zero");
  std::map<BigInt, int> acc;
  static const std::vector<long> small = primes_up_to(100000);
  for (long p : small) {
    if (m == 1) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
      acc[BigInt(p)] += 1;
      m /= static_cast<unsigned long>(p);
    }
    if (BigInt(p) * p > m) break;
  }
  if (m > 1) {
    if (is_prime(m))
      acc[m] += 1;
    else
      factor_rec(m, acc);
  }
  std::vector<std::pair<BigInt, int>> out(acc.begin(), acc.end());
  return out;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
  std::vector<BigInt> out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

BigInt euler_phi(const BigInt& n) {
  if (n <= 0) throw InvalidArgument("euler_phi: n must be positive");
  BigInt r = n;
  for (auto& [p, e] : factor_integer(n)) r = r / p * (p - 1);
  return r;
}

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor_integer(n))
    if (e > 1) return false;
  return true;
}

BigInt sqrt_mod(const BigInt& a, const BigInt& p) {
  BigInt x = mod_reduce(a, p);
  if (x == 0) return 0;
  if (p == 2) return x;
  if (powmod(x, (p - 1) / 2, p) != 1)
    throw InvalidArgument("sqrt_mod: not a quadratic residue");
  if (mod_reduce(p, 4) == 3) return powmod(x, (p + 1) / 4, p);

  // Tonelli-Shanks.  p - 1 = q * 2^s with q odd.
  BigInt q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  BigInt z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  BigInt m = s, c = powmod(z, q, p);
  BigInt t = powmod(x, q, p), r = powmod(x, (q + 1) / 2, p);
  while (t != 1) {
    BigInt t2 = t;
    unsigned long i = 0;
    while (t2 != 1) {
      t2 = mod_reduce(t2 * t2, p);
      ++i;
    }
    BigInt b = c;
    for (BigInt j = 0; j < m - static_cast<long>(i) - 1; ++j) b = mod_reduce(b * b, p);
    m = static_cast<long>(i);
    c = mod_reduce(b * b, p);
    t = mod_reduce(t * c, p);
    r = mod_reduce(r * b, p);
  }
  return r;
}

}  // namespace obstructor
