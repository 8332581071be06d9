#ifndef OBSTRUCTOR_CONGRUENCE_HPP
#define OBSTRUCTOR_CONGRUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "obstructor/newform.hpp"

namespace obstructor {

// floor(k * mu(L) / 12) with L = lcm(levels) and mu the index of
// Gamma_0(L): mu(L) = L * prod_{p | L} (1 + 1/p).
long sturm_bound(int weight, const std::vector<BigInt>& levels);

struct CandidateSet {
  std::vector<BigInt> residue_chars;  // prime divisors of the resultant gcd
  bool identical_to_precision = false;
  long effective_bound = 0;
  std::vector<long> compared_primes;
};

// gcd over compared primes p (p <= prime_bound, within both precisions,
// coprime to lcm of the levels) of |Res(minpoly(a_p(f)), minpoly(a_p(g)))|,
// skipping vanishing resultants.  A guaranteed superset of the residue
// characteristics of congruence primes detectable at this precision.
CandidateSet congruence_candidates(const NewformData& f, const NewformData& g, long prime_bound);

enum class PrecisionVerdict { verified_to_sturm, verified_to_precision };

struct EmbeddingWitness {
  int target_degree = 1;  // m = lcm of the residue degrees
  ResidueEmbedding from_f;
  ResidueEmbedding from_g;
};

struct CongruencePrimeRecord {
  BigInt ell;
  PrimeSlot lambda_f;
  PrimeSlot lambda_g;
  std::string partner_label;
  BigInt partner_level;
  EmbeddingWitness witness;
  std::vector<long> verified_primes;
  PrecisionVerdict verdict = PrecisionVerdict::verified_to_precision;
  // Set when an index-warning slot of residue degree 1 was reduced through
  // the order map (the documented manual treatment).
  bool index_fallback = false;
};

struct VerifyResult {
  std::vector<CongruencePrimeRecord> records;
  std::vector<std::string> notes;  // skipped slots, precision remarks
};

// Certify a_p(f) = a_p(g) mod lambda-bar for every prime lambda-pair above
// ell, comparing through residue-field embeddings into a common F_{ell^m}.
VerifyResult verify_congruence(const NewformData& f, const NewformData& g, const BigInt& ell,
                               long prime_bound);

struct ConjugacyResult {
  bool conjugate = false;
  bool isomorphism_test_skipped = false;
};

// True iff g is a Galois conjugate of f: same weight, level and character,
// identical min_poly, and some field automorphism matching all stored
// coefficients.  Distinct min_polys of equal degree >= 2 that may present
// the same field are refused (skipped flag) rather than guessed.
ConjugacyResult is_galois_conjugate(const NewformData& f, const NewformData& g);

struct CongruenceClassification {
  struct Entry {
    PrimeSlot slot;  // slot of K_f
    std::string partner_label;
    BigInt partner_level;
    bool index_fallback = false;

    bool operator<(const Entry& o) const {
      if (!(slot == o.slot)) return slot < o.slot;
      if (partner_level != o.partner_level) return partner_level < o.partner_level;
      return partner_label < o.partner_label;
    }
  };
  std::vector<Entry> strict;  // partner level d = N
  std::vector<Entry> proper;  // partner level d < N
  std::vector<CongruencePrimeRecord> records;
  std::vector<std::string> caveats;
  bool conditional = false;  // some divisor level had no supplied forms

  std::vector<PrimeSlot> strict_slots() const;
  std::vector<PrimeSlot> proper_slots() const;
  std::vector<PrimeSlot> all_slots() const;
  bool contains(const PrimeSlot& s) const;
};

// Scan the family for strict (level N) and proper (level d < N, M | d)
// congruence partners with character lifting omega_0, excluding Galois
// conjugates of f from the strict side.  prime_bound <= 0 selects
// max(sturm_bound, 1000) per partner.
CongruenceClassification classify_congruence_primes(const NewformData& f,
                                                    const std::vector<NewformData>& family,
                                                    long prime_bound);

}  // namespace obstructor

#endif
