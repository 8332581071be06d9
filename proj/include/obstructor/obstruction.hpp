#ifndef OBSTRUCTOR_OBSTRUCTION_HPP
#define OBSTRUCTOR_OBSTRUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "obstructor/congruence.hpp"
#include "obstructor/newform.hpp"

namespace obstructor {

// Inputs of one obstruction analysis: the form, the ramification set S
// (finite primes; must contain every p | N; the infinite place is
// implicit), the family searched for congruence partners, and the
// comparison bounds.
struct AnalysisContext {
  NewformData f;
  std::vector<BigInt> S;  // sorted distinct primes
  std::vector<NewformData> family;
  long prime_bound = 0;  // <= 0: max(sturm bound, 1000) per comparison
  long weight2_ell_range = 10000;

  BigInt n_s() const;
  std::vector<BigInt> extra_primes() const;  // p | N_S / N
  bool minimal_s() const;
};

AnalysisContext make_context(NewformData f, std::vector<NewformData> family,
                             const std::vector<BigInt>& extra_primes, long prime_bound = 0,
                             long weight2_ell_range = 10000);

enum class AbsStatus { evidence_reducible, unresolved_level_prime, unresolved_small_ell };
std::string to_string(AbsStatus s);

struct AbsEntry {
  PrimeSlot slot;
  AbsStatus status = AbsStatus::evidence_reducible;
  // True when a_p = p^(k-1) + 1 (mod lambda) held at every tested
  // p = 1 (mod N); always true for non-level entries.
  bool eisenstein_congruence = true;
  bool index_fallback = false;
};

struct AbsReport {
  std::vector<AbsEntry> entries;  // sorted by slot
  std::vector<BigInt> candidate_residue_chars;
  std::vector<long> tested_primes;
  std::vector<std::string> caveats;

  const AbsEntry* find(const PrimeSlot& slot) const;
  // Entries whose congruence evidence held: the reducible set the
  // analysis treats as established.
  std::vector<PrimeSlot> evidenced_slots() const;
  std::vector<PrimeSlot> all_slots() const;
};

// Candidate absolutely-reducible primes: prime divisors of the gcd of
// |Norm(a_p - p^(k-1) - 1)| over tested p = 1 (mod N), each slot above a
// candidate verified individually; every lambda | N is reported as an
// unresolved level prime.  A zero norm would contradict the Weil bound
// and raises an error.
AbsReport abs_candidates(const NewformData& f, long prime_bound);

// All slots (ell != p) where a_p^2 = (p+1)^2 p^(k-2) omega(p) (mod lambda),
// harvested by factoring the norm of the difference.  Requires p prime,
// p coprime to the level.
std::vector<PrimeSlot> local_b4_slots(const NewformData& f, const BigInt& p,
                                      std::vector<std::string>* notes = nullptr);

// a_ell is a lambda-adic unit.  Requires ell coprime to the level and
// a_ell within precision.
bool is_ordinary(const NewformData& f, const PrimeSlot& lambda);

// Weight-2 local condition a_ell^2 = omega(ell) (mod lambda).
bool weight2_ell_test(const NewformData& f, const PrimeSlot& lambda);

// Primes allowed by the headline bound: ell <= k+1 or
// ell | N phi(N) prod_{p | N/M} (p+1).  Congruence primes are reported
// separately.  Requires k >= 3 and N > 1.
std::vector<BigInt> intro_bound(const NewformData& f);

struct SlotConditions {
  PrimeSlot slot;
  std::vector<std::string> fired_b;
  std::vector<std::string> fired_m;
  std::optional<AbsStatus> abs_status;
  bool abs_evidence = false;
};

struct ObstructionReport {
  AbsReport abs;
  CongruenceClassification cong;
  std::vector<SlotConditions> conditions;  // every candidate slot with ell > 3

  // Theorem-scope sets: ell > 3 and lambda outside every Abs entry.
  std::vector<PrimeSlot> lower;
  std::vector<PrimeSlot> upper;

  // Paper-stated view: keeps slots whose reducibility is merely
  // unresolved, and retains ell <= 3 slots the theorems do not cover.
  std::vector<PrimeSlot> paper_upper;
  std::vector<PrimeSlot> small_ell_retained;

  std::optional<bool> intro_bound_check;
  std::vector<std::string> caveats;

  const SlotConditions* find(const PrimeSlot& slot) const;
};

// Evaluate the b- and m-conditions for one slot (ell > 3 expected).
SlotConditions evaluate_slot_conditions(const AnalysisContext& ctx, const AbsReport& abs,
                                        const CongruenceClassification& cong, const PrimeSlot& slot,
                                        std::vector<std::string>* caveats = nullptr);

ObstructionReport obstruction_bounds(const AnalysisContext& ctx);

}  // namespace obstructor

#endif
