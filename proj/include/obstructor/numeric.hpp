#ifndef OBSTRUCTOR_NUMERIC_HPP
#define OBSTRUCTOR_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace obstructor {

// Exact arbitrary-precision integers and rationals.  All arithmetic in the
// library goes through these; there is no floating point anywhere.
using BigInt = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// Raised by residue reduction when a denominator is divisible by ell.
class NotIntegralAtPrime : public Error {
 public:
  explicit NotIntegralAtPrime(const std::string& what) : Error(what) {}
};

// Raised when a prime slot carries an index warning (ell^2 | disc) and the
// caller did not opt in to manual treatment.
class UnsupportedIndex : public Error {
 public:
  explicit UnsupportedIndex(const std::string& what) : Error(what) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error(what) {}
};

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt powmod(const BigInt& base, const BigInt& e, const BigInt& m) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Inverse of a mod m; throws if not invertible.
inline BigInt invmod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw InvalidArgument("invmod: element not invertible");
  return r;
}

inline BigInt mod_reduce(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());  // result in [0, m)
  return r;
}

// Primes up to and including n, by sieve.  n is expected to be modest
// (bounds in this project stay far below 10^7).
std::vector<long> primes_up_to(long n);

// Prime factorization of |n|, n != 0, as sorted (prime, exponent) pairs.
// Trial division followed by Brent's cycle variant of Pollard rho; every
// reported factor is certified prime.
std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n);

// Distinct prime divisors of |n| (n != 0), sorted.
std::vector<BigInt> prime_divisors(const BigInt& n);

// Euler phi of n > 0 (n is factored; fine for the sizes seen here).
BigInt euler_phi(const BigInt& n);

bool is_squarefree(const BigInt& n);

// x with x^2 = a mod p (p an odd prime, a a quadratic residue), via
// Tonelli-Shanks with the smallest non-residue; deterministic.
BigInt sqrt_mod(const BigInt& a, const BigInt& p);

}  // namespace obstructor

#endif
