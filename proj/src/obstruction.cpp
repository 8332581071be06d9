#include "obstructor/obstruction.hpp"

#include <algorithm>
#include <set>

namespace obstructor {

BigInt AnalysisContext::n_s() const {
  BigInt n = 1;
  for (auto& p : S) n *= p;
  return n;
}

std::vector<BigInt> AnalysisContext::extra_primes() const {
  std::vector<BigInt> out;
  for (auto& p : S)
    if (!mpz_divisible_p(f.level.get_mpz_t(), p.get_mpz_t())) out.push_back(p);
  return out;
}

bool AnalysisContext::minimal_s() const { return extra_primes().empty(); }

AnalysisContext make_context(NewformData f, std::vector<NewformData> family,
                             const std::vector<BigInt>& extra_primes, long prime_bound,
                             long weight2_ell_range) {
  AnalysisContext ctx;
  ctx.f = std::move(f);
  ctx.family = std::move(family);
  ctx.prime_bound = prime_bound;
  ctx.weight2_ell_range = weight2_ell_range;
  std::set<BigInt> s;
  for (auto& p : prime_divisors(ctx.f.level)) s.insert(p);
  for (auto& p : extra_primes) {
    if (!is_prime(p)) throw InvalidArgument("make_context: extra entry " + p.get_str() + " is not prime");
    s.insert(p);
  }
  ctx.S.assign(s.begin(), s.end());
  return ctx;
}

std::string to_string(AbsStatus s) {
  switch (s) {
    case AbsStatus::evidence_reducible: return "evidence-reducible";
    case AbsStatus::unresolved_level_prime: return "unresolved-level-prime";
    case AbsStatus::unresolved_small_ell: return "unresolved-small-ell";
  }
  return "?";
}

const AbsEntry* AbsReport::find(const PrimeSlot& slot) const {
  for (auto& e : entries)
    if (e.slot == slot) return &e;
  return nullptr;
}

std::vector<PrimeSlot> AbsReport::evidenced_slots() const {
  std::vector<PrimeSlot> out;
  for (auto& e : entries)
    if (e.eisenstein_congruence) out.push_back(e.slot);
  return out;
}

std::vector<PrimeSlot> AbsReport::all_slots() const {
  std::vector<PrimeSlot> out;
  for (auto& e : entries) out.push_back(e.slot);
  return out;
}

namespace {

// Reduction that accepts degree-1 index-warning slots through the order
// map; returns false (with a note) when the slot cannot be handled.
bool reduce_or_note(const FieldElement& a, const PrimeSlot& slot, FiniteFieldElement& out,
                    bool& fallback, std::vector<std::string>* notes, const std::string& what) {
  try {
    if (!slot.index_warning) {
      out = reduce_element(a, slot);
      return true;
    }
    if (slot.f == 1) {
      fallback = true;
      out = reduce_element(a, slot, true);
      return true;
    }
  } catch (const NotIntegralAtPrime& e) {
    if (notes) notes->push_back(what + ": " + e.what());
    return false;
  }
  if (notes) notes->push_back(what + ": unsupported-index at " + slot.label(0));
  return false;
}

FieldElement eisenstein_difference(const NewformData& f, long p) {
  BigInt pk1 = pow_big(BigInt(p), static_cast<unsigned long>(f.weight - 1));
  return f.a(p) - FieldElement::from_rational(f.field, Rational(pk1 + 1));
}

}  // namespace

AbsReport abs_candidates(const NewformData& f, long prime_bound) {
  AbsReport rep;
  long bound = std::min<long>(prime_bound, f.precision);
  for (long p : primes_up_to(bound)) {
    if (mod_reduce(BigInt(p), f.level) == mod_reduce(BigInt(1), f.level))
      rep.tested_primes.push_back(p);
  }
  if (rep.tested_primes.size() < 5)
    rep.caveats.push_back("only " + std::to_string(rep.tested_primes.size()) +
                          " primes = 1 (mod N) within precision; reducibility evidence is weak");

  BigInt acc = 0;
  for (long p : rep.tested_primes) {
    Rational nrm = norm(eisenstein_difference(f, p));
    if (nrm == 0) throw Error("abs_candidates: vanishing norm at p = " + std::to_string(p) +
                              " contradicts the Weil bound; data corrupt");
    if (nrm.get_den() != 1) throw Error("abs_candidates: non-integral norm");
    acc = gcd_big(acc, nrm.get_num());
  }
  if (acc > 1) rep.candidate_residue_chars = prime_divisors(acc);

  auto congruence_holds_at = [&](const PrimeSlot& slot, bool& fallback) {
    for (long p : rep.tested_primes) {
      if (slot.ell == p) continue;
      FiniteFieldElement r;
      if (!reduce_or_note(eisenstein_difference(f, p), slot, r, fallback, &rep.caveats,
                          f.label + " reducibility evidence"))
        return false;
      if (!r.is_zero()) return false;
    }
    return true;
  };

  std::set<BigInt> level_primes;
  for (auto& p : prime_divisors(f.level)) level_primes.insert(p);

  for (const BigInt& ell : rep.candidate_residue_chars) {
    if (level_primes.count(ell)) continue;  // handled below
    for (const PrimeSlot& slot : primes_above(f.field, ell)) {
      if (slot.index_warning && slot.f != 1) {
        rep.caveats.push_back("candidate slot " + slot.label(f.field->degree()) +
                              " has an unsupported index warning; evidence not evaluated");
        continue;
      }
      bool fallback = false;
      if (!congruence_holds_at(slot, fallback)) continue;
      AbsEntry e;
      e.slot = slot;
      e.status = ell > f.weight ? AbsStatus::evidence_reducible : AbsStatus::unresolved_small_ell;
      e.eisenstein_congruence = true;
      e.index_fallback = fallback;
      rep.entries.push_back(e);
    }
  }

  for (const BigInt& p : level_primes) {
    for (const PrimeSlot& slot : primes_above(f.field, p)) {
      AbsEntry e;
      e.slot = slot;
      e.status = AbsStatus::unresolved_level_prime;
      if (slot.index_warning && slot.f != 1) {
        e.eisenstein_congruence = false;
        rep.caveats.push_back("level slot " + slot.label(f.field->degree()) +
                              " has an unsupported index warning; evidence not evaluated");
      } else {
        bool fallback = false;
        e.eisenstein_congruence = congruence_holds_at(slot, fallback);
        e.index_fallback = fallback;
      }
      rep.entries.push_back(e);
    }
  }

  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const AbsEntry& a, const AbsEntry& b) { return a.slot < b.slot; });
  return rep;
}

std::vector<PrimeSlot> local_b4_slots(const NewformData& f, const BigInt& p,
                                      std::vector<std::string>* notes) {
  if (!is_prime(p)) throw InvalidArgument("local_b4_slots: p must be prime");
  if (gcd_big(p, f.level) != 1)
    throw InvalidArgument("local_b4_slots: p divides the level");
  if (!f.has(p.get_si()))
    throw InsufficientData("local_b4_slots: a_" + p.get_str() + " beyond precision");

  // a_p^2 - (p+1)^2 p^(k-2) omega(p)
  BigInt scale = (p + 1) * (p + 1) * pow_big(p, static_cast<unsigned long>(f.weight - 2));
  FieldElement t = f.a(p.get_si()) * f.a(p.get_si()) - scale * f.character.omega(p);
  Rational nrm = norm(t);
  if (nrm == 0) throw Error("local_b4_slots: vanishing norm contradicts the Weil bound");
  if (nrm.get_den() != 1) throw Error("local_b4_slots: non-integral norm");

  std::vector<PrimeSlot> out;
  for (const BigInt& ell : prime_divisors(nrm.get_num())) {
    if (ell == p) continue;
    for (const PrimeSlot& slot : primes_above(f.field, ell)) {
      FiniteFieldElement r;
      bool fallback = false;
      if (!reduce_or_note(t, slot, r, fallback, notes, "b4 harvest at p = " + p.get_str())) continue;
      if (r.is_zero()) out.push_back(slot);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_ordinary(const NewformData& f, const PrimeSlot& lambda) {
  if (gcd_big(lambda.ell, f.level) != 1)
    throw InvalidArgument("is_ordinary: ell divides the level");
  long ell = lambda.ell.get_si();
  if (!f.has(ell)) throw InsufficientData("is_ordinary: a_" + lambda.ell.get_str() + " beyond precision");
  FiniteFieldElement r;
  bool fallback = false;
  if (!reduce_or_note(f.a(ell), lambda, r, fallback, nullptr, "ordinarity"))
    throw UnsupportedIndex("is_ordinary: unsupported index warning at " + lambda.label(0));
  return !r.is_zero();
}

bool weight2_ell_test(const NewformData& f, const PrimeSlot& lambda) {
  if (f.weight != 2) throw InvalidArgument("weight2_ell_test: weight is not 2");
  if (gcd_big(lambda.ell, f.level) != 1)
    throw InvalidArgument("weight2_ell_test: ell divides the level");
  long ell = lambda.ell.get_si();
  if (!f.has(ell)) throw InsufficientData("weight2_ell_test: a_" + lambda.ell.get_str() + " beyond precision");
  FieldElement t = f.a(ell) * f.a(ell) - f.character.omega(lambda.ell);
  FiniteFieldElement r;
  bool fallback = false;
  if (!reduce_or_note(t, lambda, r, fallback, nullptr, "weight-2 test"))
    throw UnsupportedIndex("weight2_ell_test: unsupported index warning at " + lambda.label(0));
  return r.is_zero();
}

std::vector<BigInt> intro_bound(const NewformData& f) {
  if (f.weight < 3 || f.level <= 1)
    throw InvalidArgument("intro_bound: requires weight >= 3 and level > 1");
  BigInt product = f.level * euler_phi(f.level);
  for (auto& p : prime_divisors(f.level)) {
    if (!mpz_divisible_p(f.character.conductor.get_mpz_t(), p.get_mpz_t())) product *= p + 1;
  }
  std::set<BigInt> out;
  for (long ell : primes_up_to(f.weight + 1)) out.insert(BigInt(ell));
  for (auto& ell : prime_divisors(product)) out.insert(ell);
  return {out.begin(), out.end()};
}

namespace {

std::vector<BigInt> steinberg_primes(const NewformData& f) {
  std::vector<BigInt> out;
  for (auto& p : prime_divisors(f.level))
    if (!mpz_divisible_p(f.character.conductor.get_mpz_t(), p.get_mpz_t())) out.push_back(p);
  return out;
}

bool b4_condition_at(const AnalysisContext& ctx, const PrimeSlot& slot, const BigInt& p,
                     std::vector<std::string>* caveats) {
  const NewformData& f = ctx.f;
  if (slot.ell == p) return false;
  if (!f.has(p.get_si())) {
    if (caveats)
      caveats->push_back("a_" + p.get_str() + " beyond precision; the local condition at p = " +
                         p.get_str() + " could not be evaluated");
    return false;
  }
  BigInt scale = (p + 1) * (p + 1) * pow_big(p, static_cast<unsigned long>(f.weight - 2));
  FieldElement t = f.a(p.get_si()) * f.a(p.get_si()) - scale * f.character.omega(p);
  FiniteFieldElement r;
  bool fallback = false;
  if (!reduce_or_note(t, slot, r, fallback, caveats, "local condition at p = " + p.get_str()))
    return false;
  return r.is_zero();
}

}  // namespace

SlotConditions evaluate_slot_conditions(const AnalysisContext& ctx, const AbsReport& abs,
                                        const CongruenceClassification& cong, const PrimeSlot& slot,
                                        std::vector<std::string>* caveats) {
  const NewformData& f = ctx.f;
  const BigInt& ell = slot.ell;
  SlotConditions out;
  out.slot = slot;
  if (const AbsEntry* e = abs.find(slot)) {
    out.abs_status = e->status;
    out.abs_evidence = e->eisenstein_congruence;
  }

  BigInt phi_ns = 1;
  for (auto& p : ctx.S) phi_ns *= p - 1;

  // b1
  if (ell <= f.weight) out.fired_b.push_back("b1");
  // b2
  if (mpz_divisible_p(f.level.get_mpz_t(), ell.get_mpz_t())) out.fired_b.push_back("b2");
  // b3
  if (mpz_divisible_p(phi_ns.get_mpz_t(), ell.get_mpz_t())) out.fired_b.push_back("b3");
  // b3.5
  for (auto& p : steinberg_primes(f)) {
    if (mpz_divisible_p(BigInt(p + 1).get_mpz_t(), ell.get_mpz_t())) {
      out.fired_b.push_back("b3.5");
      break;
    }
  }
  // b4 / m2
  bool b4 = false;
  for (auto& p : ctx.extra_primes()) {
    if (b4_condition_at(ctx, slot, p, caveats)) {
      b4 = true;
      break;
    }
  }
  if (b4) out.fired_b.push_back("b4");
  // b5
  if (ell == f.weight + 1 && gcd_big(ell, f.level) == 1) {
    try {
      if (is_ordinary(f, slot)) out.fired_b.push_back("b5");
    } catch (const InsufficientData&) {
      out.fired_b.push_back("b5");
      if (caveats)
        caveats->push_back("ordinarity at " + slot.label(f.field->degree()) +
                           " unknown (a_ell beyond precision); retained in the upper bound");
    } catch (const UnsupportedIndex& e) {
      out.fired_b.push_back("b5");
      if (caveats) caveats->push_back(std::string(e.what()) + "; retained in the upper bound");
    }
  }
  // b6 / m4
  bool b6 = false;
  if (f.weight == 2 && gcd_big(ell, f.level) == 1) {
    try {
      b6 = weight2_ell_test(f, slot);
    } catch (const InsufficientData&) {
      b6 = true;
      if (caveats)
        caveats->push_back("weight-2 test at " + slot.label(f.field->degree()) +
                           " unknown (a_ell beyond precision); retained");
    } catch (const UnsupportedIndex&) {
      b6 = true;
    }
  }
  if (b6) out.fired_b.push_back("b6");
  // b7
  if (f.level == 1) {
    BigInt t = BigInt(2 * f.weight - 3) * BigInt(2 * f.weight - 1);
    if (mpz_divisible_p(t.get_mpz_t(), ell.get_mpz_t())) out.fired_b.push_back("b7");
  }
  // b8
  if (cong.contains(slot)) out.fired_b.push_back("b8");

  // m1
  if (mpz_divisible_p(phi_ns.get_mpz_t(), ell.get_mpz_t())) out.fired_m.push_back("m1");
  // m2
  if (b4) out.fired_m.push_back("m2");
  // m3: a proper congruence of level dividing N/p, p | N/M, ell coprime
  // to p(p+1).
  bool m3 = false;
  for (auto& entry : cong.proper) {
    if (!(entry.slot == slot)) continue;
    for (auto& p : steinberg_primes(f)) {
      BigInt np = f.level / p;
      if (!mpz_divisible_p(np.get_mpz_t(), entry.partner_level.get_mpz_t())) continue;
      if (mpz_divisible_p(BigInt(p * (p + 1)).get_mpz_t(), ell.get_mpz_t())) continue;
      m3 = true;
      break;
    }
    if (m3) break;
  }
  if (m3) out.fired_m.push_back("m3");
  // m4
  if (b6 && f.weight == 2 && gcd_big(ell, f.level) == 1) out.fired_m.push_back("m4");

  return out;
}

namespace {

void insert_sorted_unique(std::vector<PrimeSlot>& v, const PrimeSlot& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || !(*it == s)) v.insert(it, s);
}

}  // namespace

const SlotConditions* ObstructionReport::find(const PrimeSlot& slot) const {
  for (auto& c : conditions)
    if (c.slot == slot) return &c;
  return nullptr;
}

ObstructionReport obstruction_bounds(const AnalysisContext& ctx) {
  const NewformData& f = ctx.f;
  ObstructionReport rep;

  long bound = ctx.prime_bound > 0 ? ctx.prime_bound : std::max<long>(sturm_bound(f.weight, {f.level}), 1000);
  rep.abs = abs_candidates(f, bound);
  for (auto& c : rep.abs.caveats) rep.caveats.push_back(c);

  rep.cong = classify_congruence_primes(f, ctx.family, ctx.prime_bound);
  for (auto& c : rep.cong.caveats) rep.caveats.push_back(c);
  if (rep.cong.conditional)
    rep.caveats.push_back("congruence condition b8 is conditional on the supplied family");

  // Candidate residue characteristics with ell > 3; every condition
  // contributes finitely many for weight >= 3.
  std::set<BigInt> cand;
  for (long ell : primes_up_to(f.weight + 1))
    if (ell > 3) cand.insert(BigInt(ell));
  for (auto& p : prime_divisors(f.level))
    if (p > 3) cand.insert(p);
  BigInt phi_ns = 1;
  for (auto& p : ctx.S) phi_ns *= p - 1;
  for (auto& ell : prime_divisors(phi_ns))
    if (ell > 3) cand.insert(ell);
  for (auto& p : steinberg_primes(f))
    for (auto& ell : prime_divisors(p + 1))
      if (ell > 3) cand.insert(ell);
  for (auto& p : ctx.extra_primes()) {
    if (!f.has(p.get_si())) {
      rep.caveats.push_back("a_" + p.get_str() +
                            " beyond precision; the candidate sweep at p = " + p.get_str() +
                            " is incomplete");
      continue;
    }
    std::vector<std::string> notes;
    for (auto& slot : local_b4_slots(f, p, &notes))
      if (slot.ell > 3) cand.insert(slot.ell);
    for (auto& n : notes) rep.caveats.push_back(n);
  }
  if (f.level == 1) {
    BigInt t = BigInt(2 * f.weight - 3) * BigInt(2 * f.weight - 1);
    for (auto& ell : prime_divisors(t))
      if (ell > 3) cand.insert(ell);
  }
  for (auto& slot : rep.cong.all_slots())
    if (slot.ell > 3) cand.insert(slot.ell);
  if (f.weight == 2) {
    for (long ell : primes_up_to(ctx.weight2_ell_range))
      if (ell > 3) cand.insert(BigInt(ell));
    rep.caveats.push_back("weight-2 sweep restricted to ell <= " +
                          std::to_string(ctx.weight2_ell_range));
  }

  for (const BigInt& ell : cand) {
    for (const PrimeSlot& slot : primes_above(f.field, ell)) {
      SlotConditions sc = evaluate_slot_conditions(ctx, rep.abs, rep.cong, slot, &rep.caveats);
      bool in_abs = sc.abs_status.has_value();
      bool evidenced = in_abs && sc.abs_evidence;
      if (!sc.fired_b.empty() || !sc.fired_m.empty() || in_abs) rep.conditions.push_back(sc);
      if (!sc.fired_b.empty()) {
        if (!in_abs) insert_sorted_unique(rep.upper, slot);
        if (!evidenced) insert_sorted_unique(rep.paper_upper, slot);
      }
      if (!sc.fired_m.empty() && !in_abs) insert_sorted_unique(rep.lower, slot);
    }
  }

  // ell <= 3: outside the theorems; the paper-stated upper bound keeps
  // any slot not evidenced reducible.
  for (long ell : {2L, 3L}) {
    for (const PrimeSlot& slot : primes_above(f.field, BigInt(ell))) {
      const AbsEntry* e = rep.abs.find(slot);
      if (e && e->eisenstein_congruence) continue;
      insert_sorted_unique(rep.small_ell_retained, slot);
      insert_sorted_unique(rep.paper_upper, slot);
    }
  }

  // Consistency with the headline bound, for minimal S.
  if (f.weight >= 3 && f.level > 1 && ctx.minimal_s()) {
    std::vector<BigInt> allowed = intro_bound(f);
    bool ok = true;
    for (auto& slot : rep.upper) {
      bool in_allowed = std::binary_search(allowed.begin(), allowed.end(), slot.ell);
      if (!in_allowed && !rep.cong.contains(slot)) ok = false;
    }
    rep.intro_bound_check = ok;
  }

  std::sort(rep.conditions.begin(), rep.conditions.end(),
            [](const SlotConditions& a, const SlotConditions& b) { return a.slot < b.slot; });
  std::sort(rep.caveats.begin(), rep.caveats.end());
  rep.caveats.erase(std::unique(rep.caveats.begin(), rep.caveats.end()), rep.caveats.end());
  return rep;
}

}  // namespace obstructor
