#include "obstructor/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace obstructor {

long sturm_bound(int weight, const std::vector<BigInt>& levels) {
  if (levels.empty()) throw InvalidArgument("sturm_bound: empty level set");
  BigInt L = 1;
  for (auto& n : levels) {
    if (n < 1 || !is_squarefree(n)) throw InvalidArgument("sturm_bound: levels must be squarefree");
    L = lcm_big(L, n);
  }
  BigInt mu = L;
  for (auto& p : prime_divisors(L)) mu = mu / p * (p + 1);
  BigInt b = weight * mu / 12;
  return b.get_si();
}

namespace {

std::vector<long> comparison_primes(const NewformData& f, const NewformData& g, long prime_bound,
                                    const BigInt& extra_coprime, long& effective_bound) {
  effective_bound = std::min<long>(prime_bound, std::min(f.precision, g.precision));
  BigInt bad = lcm_big(f.level, g.level) * extra_coprime;
  std::vector<long> out;
  for (long p : primes_up_to(effective_bound))
    if (gcd_big(BigInt(p), bad) == 1) out.push_back(p);
  return out;
}

BigInt integer_resultant(const RatPoly& a, const RatPoly& b) {
  Rational r = resultant(a, b);
  if (r.get_den() != 1) throw Error("congruence_candidates: non-integral resultant");
  return r.get_num();
}

}  // namespace

CandidateSet congruence_candidates(const NewformData& f, const NewformData& g, long prime_bound) {
  if (f.weight != g.weight) throw InvalidArgument("congruence_candidates: weights differ");
  if (prime_bound < 2) throw InvalidArgument("congruence_candidates: prime_bound must be >= 2");
  CandidateSet out;
  out.compared_primes = comparison_primes(f, g, prime_bound, BigInt(1), out.effective_bound);

  BigInt acc = 0;
  bool any_nonzero = false;
  for (long p : out.compared_primes) {
    RatPoly mf = element_min_poly(f.a(p));
    RatPoly mg = element_min_poly(g.a(p));
    BigInt res = abs(integer_resultant(mf, mg));
    if (res == 0) continue;
    any_nonzero = true;
    acc = gcd_big(acc, res);
    if (acc == 1) break;
  }
  if (!any_nonzero) {
    out.identical_to_precision = !out.compared_primes.empty();
    return out;
  }
  if (acc > 1) out.residue_chars = prime_divisors(acc);
  return out;
}

namespace {

// Residue reduction for congruence checks.  Index-warning slots of
// residue degree 1 go through the order map (see the module notes);
// anything else with a warning is reported unsupported.
std::optional<FiniteFieldElement> reduce_checked(const FieldElement& a, const PrimeSlot& slot,
                                                 bool& used_fallback, std::string& problem) {
  try {
    if (!slot.index_warning) return reduce_element(a, slot);
    if (slot.f == 1) {
      used_fallback = true;
      return reduce_element(a, slot, true);
    }
    problem = "unsupported-index: slot " + slot.label(0) + " has residue degree > 1";
    return std::nullopt;
  } catch (const NotIntegralAtPrime& e) {
    problem = e.what();
    return std::nullopt;
  }
}

}  // namespace

VerifyResult verify_congruence(const NewformData& f, const NewformData& g, const BigInt& ell,
                               long prime_bound) {
  if (!is_prime(ell)) throw InvalidArgument("verify_congruence: ell must be prime");
  VerifyResult out;
  long effective_bound = 0;
  std::vector<long> primes = comparison_primes(f, g, prime_bound, ell, effective_bound);
  if (primes.empty()) {
    out.notes.push_back("no comparison primes available below the bound");
    return out;
  }
  long sturm = sturm_bound(f.weight, {f.level, g.level});
  PrecisionVerdict verdict = effective_bound >= sturm ? PrecisionVerdict::verified_to_sturm
                                                      : PrecisionVerdict::verified_to_precision;

  for (const PrimeSlot& sf : primes_above(f.field, ell)) {
    // Reduce the f-side coefficients once per slot.
    bool fallback_f = false;
    std::string problem;
    std::vector<FiniteFieldElement> red_f;
    bool ok = true;
    for (long p : primes) {
      auto r = reduce_checked(f.a(p), sf, fallback_f, problem);
      if (!r) {
        out.notes.push_back(f.label + " at " + sf.label(f.field->degree()) + ": " + problem);
        ok = false;
        break;
      }
      red_f.push_back(*r);
    }
    if (!ok) continue;

    for (const PrimeSlot& sg : primes_above(g.field, ell)) {
      bool fallback_g = false;
      std::vector<FiniteFieldElement> red_g;
      bool ok_g = true;
      for (long p : primes) {
        auto r = reduce_checked(g.a(p), sg, fallback_g, problem);
        if (!r) {
          out.notes.push_back(g.label + " at " + sg.label(g.field->degree()) + ": " + problem);
          ok_g = false;
          break;
        }
        red_g.push_back(*r);
      }
      if (!ok_g) continue;

      int m = std::lcm(sf.f, sg.f);
      auto embs_f = residue_embeddings(sf.local_factor, m);
      auto embs_g = residue_embeddings(sg.local_factor, m);

      // One canonical witness per slot pair: the first f-side embedding
      // against each g-side embedding (other witnesses are simultaneous
      // Frobenius twists).
      const ResidueEmbedding& ef = embs_f.front();
      std::vector<FiniteFieldElement> img_f;
      for (auto& r : red_f) img_f.push_back(ef.apply(r));

      for (const ResidueEmbedding& eg : embs_g) {
        bool match = true;
        for (size_t i = 0; i < primes.size(); ++i) {
          if (!(img_f[i] == eg.apply(red_g[i]))) {
            match = false;
            break;
          }
        }
        if (!match) continue;
        CongruencePrimeRecord rec;
        rec.ell = ell;
        rec.lambda_f = sf;
        rec.lambda_g = sg;
        rec.partner_label = g.label;
        rec.partner_level = g.level;
        rec.witness = EmbeddingWitness{m, ef, eg};
        rec.verified_primes = primes;
        rec.verdict = verdict;
        rec.index_fallback = fallback_f || fallback_g;
        out.records.push_back(std::move(rec));
        break;
      }
    }
  }
  return out;
}

ConjugacyResult is_galois_conjugate(const NewformData& f, const NewformData& g) {
  ConjugacyResult out;
  if (f.weight != g.weight || f.level != g.level) return out;
  try {
    if (!f.character.same_primitive(g.character)) return out;
  } catch (const InvalidArgument&) {
    out.isomorphism_test_skipped = true;
    return out;
  }
  if (!(f.field->min_poly() == g.field->min_poly())) {
    if (f.field->degree() != g.field->degree()) return out;
    if (f.field->degree() == 2) {
      // Same field iff discriminants share their squarefree part.
      auto core = [](const BigInt& d) {
        BigInt c = 1;
        for (auto& [p, e] : factor_integer(d)) {
          if (e % 2) c *= p;
        }
        return d < 0 ? -c : c;
      };
      if (core(f.field->disc()) != core(g.field->disc())) return out;
    }
    // Possibly isomorphic under a nontrivial identification; not attempted.
    out.isomorphism_test_skipped = true;
    return out;
  }
  long common = std::min(f.precision, g.precision);
  Automorphisms autos = field_automorphisms(f.field);
  for (auto& sigma : autos.theta_images) {
    bool all = true;
    for (long n = 1; n <= common && all; ++n)
      if (!(apply_automorphism(f.a(n), sigma) == g.a(n))) all = false;
    if (all) {
      out.conjugate = true;
      return out;
    }
  }
  out.isomorphism_test_skipped = !autos.complete;
  return out;
}

std::vector<PrimeSlot> CongruenceClassification::strict_slots() const {
  std::set<PrimeSlot> s;
  for (auto& e : strict) s.insert(e.slot);
  return {s.begin(), s.end()};
}

std::vector<PrimeSlot> CongruenceClassification::proper_slots() const {
  std::set<PrimeSlot> s;
  for (auto& e : proper) s.insert(e.slot);
  return {s.begin(), s.end()};
}

std::vector<PrimeSlot> CongruenceClassification::all_slots() const {
  std::set<PrimeSlot> s;
  for (auto& e : strict) s.insert(e.slot);
  for (auto& e : proper) s.insert(e.slot);
  return {s.begin(), s.end()};
}

bool CongruenceClassification::contains(const PrimeSlot& slot) const {
  for (auto& e : strict)
    if (e.slot == slot) return true;
  for (auto& e : proper)
    if (e.slot == slot) return true;
  return false;
}

CongruenceClassification classify_congruence_primes(const NewformData& f,
                                                    const std::vector<NewformData>& family,
                                                    long prime_bound) {
  CongruenceClassification out;
  const BigInt& N = f.level;
  const BigInt& M = f.character.conductor;

  std::set<BigInt> levels_supplied;
  std::set<CongruenceClassification::Entry> seen;

  for (const NewformData& g : family) {
    if (g.weight != f.weight) continue;
    if (!mpz_divisible_p(N.get_mpz_t(), g.level.get_mpz_t())) continue;
    if (!mpz_divisible_p(g.level.get_mpz_t(), M.get_mpz_t())) continue;
    bool same_char;
    try {
      same_char = f.character.same_primitive(g.character);
    } catch (const InvalidArgument&) {
      out.caveats.push_back("cannot compare character of " + g.label + "; partner skipped");
      continue;
    }
    if (!same_char) continue;
    levels_supplied.insert(g.level);

    bool strict_partner = g.level == N;
    if (strict_partner) {
      ConjugacyResult conj = is_galois_conjugate(f, g);
      if (conj.isomorphism_test_skipped)
        out.caveats.push_back("conjugacy test against " + g.label + " incomplete");
      if (conj.conjugate) continue;
    }

    long bound = prime_bound;
    if (bound <= 0) bound = std::max<long>(sturm_bound(f.weight, {f.level, g.level}), 1000);

    CandidateSet cands = congruence_candidates(f, g, bound);
    if (cands.identical_to_precision) {
      out.caveats.push_back(g.label + " is identical to " + f.label + " to the compared precision");
      continue;
    }
    for (const BigInt& ell : cands.residue_chars) {
      VerifyResult vr = verify_congruence(f, g, ell, bound);
      for (auto& note : vr.notes) out.caveats.push_back(note);
      for (auto& rec : vr.records) {
        CongruenceClassification::Entry entry{rec.lambda_f, g.label, g.level, rec.index_fallback};
        if (!seen.insert(entry).second) continue;
        (strict_partner ? out.strict : out.proper).push_back(entry);
        out.records.push_back(rec);
        if (rec.verdict == PrecisionVerdict::verified_to_precision) {
          out.caveats.push_back("congruence with " + g.label + " at ell = " + rec.ell.get_str() +
                                " verified to precision only (below the Sturm bound)");
        }
        if (rec.index_fallback) {
          out.caveats.push_back("slot " + rec.lambda_f.label(f.field->degree()) + " above " +
                                rec.ell.get_str() +
                                " carries an index warning; congruence verified through the order map");
        }
      }
    }
  }

  // Family completeness: every divisor level M | d | N should be present.
  std::vector<BigInt> missing;
  std::vector<BigInt> divisors;
  {
    // enumerate divisors of N
    std::vector<BigInt> divs{BigInt(1)};
    for (auto& [p, e] : factor_integer(N)) {
      size_t sz = divs.size();
      BigInt pk = 1;
      for (int i = 1; i <= e; ++i) {
        pk *= p;
        for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
      }
    }
    divisors = std::move(divs);
  }
  std::sort(divisors.begin(), divisors.end());
  for (auto& dv : divisors) {
    if (!mpz_divisible_p(dv.get_mpz_t(), M.get_mpz_t())) continue;
    if (levels_supplied.find(dv) == levels_supplied.end()) missing.push_back(dv);
  }
  if (!missing.empty()) {
    out.conditional = true;
    std::string msg = "no partner forms supplied at level(s)";
    for (auto& dv : missing) msg += " " + dv.get_str();
    out.caveats.push_back(msg + "; classification conditional on the supplied family");
  }

  std::sort(out.strict.begin(), out.strict.end());
  std::sort(out.proper.begin(), out.proper.end());
  std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
    if (a.ell != b.ell) return a.ell < b.ell;
    if (!(a.lambda_f == b.lambda_f)) return a.lambda_f < b.lambda_f;
    if (a.partner_level != b.partner_level) return a.partner_level < b.partner_level;
    return a.partner_label < b.partner_label;
  });
  return out;
}

}  // namespace obstructor
