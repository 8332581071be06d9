#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>
#include <string>

#include "obstructor/congruence.hpp"

using namespace obstructor;

namespace {

std::string fixture_dir() {
  const char* env = std::getenv("OBSTRUCTOR_FIXTURES");
  return env ? env : "fixtures";
}

NewformData fx(const std::string& label) {
  return load_newform(fixture_dir() + "/" + label + ".json");
}

bool has_char(const CandidateSet& c, long ell) {
  for (auto& p : c.residue_chars)
    if (p == ell) return true;
  return false;
}

PrimeSlot slot_of(const FieldPtr& K, long ell, std::vector<long> factor) {
  std::vector<BigInt> v;
  for (long x : factor) v.emplace_back(x);
  PrimeFieldPoly g(BigInt(ell), std::move(v));
  for (auto& s : primes_above(K, BigInt(ell)))
    if (s.local_factor == g) return s;
  throw std::runtime_error("slot not found");
}

std::vector<NewformData> with_conjugates(std::vector<NewformData> family) {
  std::vector<NewformData> out;
  for (auto& f : family) {
    out.push_back(f);
    if (f.field->degree() == 2) {
      auto autos = field_automorphisms(f.field);
      out.push_back(galois_conjugate_form(f, autos.theta_images[1]));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("sturm bounds") {
  CHECK(sturm_bound(12, {BigInt(5), BigInt(1)}) == 6);
  CHECK(sturm_bound(6, {BigInt(30), BigInt(15)}) == 36);
  CHECK(sturm_bound(3, {BigInt(35), BigInt(7)}) == 12);
  CHECK_THROWS_AS(sturm_bound(6, {}), InvalidArgument);
  CHECK_THROWS_AS(sturm_bound(6, {BigInt(12)}), InvalidArgument);
}

TEST_CASE("congruence candidates: worked examples") {
  NewformData f1 = fx("5.12.f1");
  NewformData delta = fx("1.12.delta");
  CandidateSet c = congruence_candidates(f1, delta, 1000);
  CHECK(has_char(c, 2));
  CHECK(has_char(c, 29));
  CHECK_FALSE(c.identical_to_precision);

  NewformData f2_30 = fx("30.6.f2");
  NewformData g15 = fx("15.6.g");
  CandidateSet c19 = congruence_candidates(f2_30, g15, 1000);
  CHECK(has_char(c19, 19));

  CandidateSet self = congruence_candidates(f1, f1, 1000);
  CHECK(self.identical_to_precision);
  CHECK(self.residue_chars.empty());

  NewformData f2_5 = fx("5.12.f2");
  CHECK_THROWS_AS(congruence_candidates(f1, fx("35.3.f1"), 1000), InvalidArgument);  // weights differ
  CandidateSet c5 = congruence_candidates(f1, f2_5, 1000);
  CHECK(has_char(c5, 2));
  CHECK(has_char(c5, 5));
}

TEST_CASE("verify_congruence: the modulo 19 congruence at level 30/15") {
  NewformData f = fx("30.6.f2");
  NewformData g = fx("15.6.g");
  VerifyResult vr = verify_congruence(f, g, BigInt(19), 1000);
  REQUIRE(vr.records.size() == 1);
  const auto& rec = vr.records[0];
  CHECK(rec.ell == 19);
  CHECK(rec.lambda_f.f == 1);
  CHECK(rec.verdict == PrecisionVerdict::verified_to_precision);  // printed precision 13 < 36
  CHECK(rec.verified_primes == std::vector<long>{7, 11, 13});

  // And modulo 31 with the level-10 partner.
  VerifyResult v31 = verify_congruence(f, fx("10.6.g"), BigInt(31), 1000);
  CHECK(v31.records.size() == 1);

  // No congruence modulo 19 between the two level-30 forms themselves.
  VerifyResult none = verify_congruence(f, fx("30.6.f1"), BigInt(19), 1000);
  CHECK(none.records.empty());
}

TEST_CASE("verify_congruence: f2 level 5 against Delta at 131") {
  NewformData f2 = fx("5.12.f2");
  NewformData delta = fx("1.12.delta");
  VerifyResult vr = verify_congruence(f2, delta, BigInt(131), 1000);
  REQUIRE(vr.records.size() == 1);
  // lambda = (131, theta + 46): theta = sqrt(151) -> -46.
  CHECK(vr.records[0].lambda_f == slot_of(f2.field, 131, {46, 1}));
  CHECK_FALSE(vr.records[0].index_fallback);

  // The other slot above 131 carries no congruence.
  auto slots = primes_above(f2.field, BigInt(131));
  CHECK(slots.size() == 2);
}

TEST_CASE("verify_congruence: index-warning slots go through the order map") {
  NewformData f2 = fx("5.12.f2");
  NewformData f1 = fx("5.12.f1");
  VerifyResult vr = verify_congruence(f2, f1, BigInt(2), 1000);
  REQUIRE(vr.records.size() == 1);
  CHECK(vr.records[0].index_fallback);
  CHECK(vr.records[0].lambda_f == slot_of(f2.field, 2, {1, 1}));
}

TEST_CASE("verify_congruence symmetry") {
  NewformData f = fx("30.6.f2");
  NewformData g = fx("15.6.g");
  VerifyResult ab = verify_congruence(f, g, BigInt(19), 1000);
  VerifyResult ba = verify_congruence(g, f, BigInt(19), 1000);
  REQUIRE(ab.records.size() == 1);
  REQUIRE(ba.records.size() == 1);
  CHECK(ab.records[0].lambda_f == ba.records[0].lambda_g);
  CHECK(ab.records[0].lambda_g == ba.records[0].lambda_f);
}

TEST_CASE("verify_congruence monotonicity in precision") {
  NewformData f = fx("5.12.f1");
  NewformData delta = fx("1.12.delta");
  auto low = verify_congruence(f, delta, BigInt(29), 3);
  auto high = verify_congruence(f, delta, BigInt(29), 1000);
  // Raising the bound can only remove records.
  CHECK(high.records.size() <= low.records.size());
  for (auto& hr : high.records) {
    bool found = false;
    for (auto& lr : low.records)
      if (hr.lambda_f == lr.lambda_f && hr.lambda_g == lr.lambda_g) found = true;
    CHECK(found);
  }
}

TEST_CASE("candidate soundness: verified ells appear among candidates") {
  NewformData f = fx("5.12.f2");
  NewformData delta = fx("1.12.delta");
  CandidateSet cands = congruence_candidates(f, delta, 1000);
  for (long ell : {2L, 5L, 131L}) {
    VerifyResult vr = verify_congruence(f, delta, BigInt(ell), 1000);
    if (!vr.records.empty()) CHECK(has_char(cands, ell));
  }
}

TEST_CASE("is_galois_conjugate") {
  NewformData f2 = fx("5.12.f2");
  auto autos = field_automorphisms(f2.field);
  NewformData conj = galois_conjugate_form(f2, autos.theta_images[1]);
  CHECK(is_galois_conjugate(f2, conj).conjugate);
  CHECK(is_galois_conjugate(f2, f2).conjugate);
  CHECK_FALSE(is_galois_conjugate(fx("5.12.f1"), f2).conjugate);
  CHECK_FALSE(is_galois_conjugate(fx("5.12.f1"), fx("1.12.delta")).conjugate);  // levels differ
}

TEST_CASE("classification of the level-5 weight-12 pair") {
  NewformData f1 = fx("5.12.f1");
  NewformData f2 = fx("5.12.f2");
  NewformData delta = fx("1.12.delta");
  auto family = with_conjugates({f1, f2, delta});

  CongruenceClassification c1 = classify_congruence_primes(f1, family, 0);
  CHECK_FALSE(c1.conditional);
  auto strict1 = c1.strict_slots();
  REQUIRE(strict1.size() == 2);
  CHECK(strict1[0] == slot_of(f1.field, 2, {0, 1}));
  CHECK(strict1[1] == slot_of(f1.field, 5, {0, 1}));
  auto proper1 = c1.proper_slots();
  REQUIRE(proper1.size() == 2);
  CHECK(proper1[0] == slot_of(f1.field, 2, {0, 1}));
  CHECK(proper1[1] == slot_of(f1.field, 29, {0, 1}));

  CongruenceClassification c2 = classify_congruence_primes(f2, family, 0);
  auto strict2 = c2.strict_slots();
  REQUIRE(strict2.size() == 2);
  CHECK(strict2[0] == slot_of(f2.field, 2, {1, 1}));
  CHECK(strict2[1] == slot_of(f2.field, 5, {1, 1}));  // (5, 1 + sqrt(151))
  auto proper2 = c2.proper_slots();
  REQUIRE(proper2.size() == 3);
  CHECK(proper2[0] == slot_of(f2.field, 2, {1, 1}));
  CHECK(proper2[1] == slot_of(f2.field, 5, {4, 1}));   // (5, 4 + sqrt(151))
  CHECK(proper2[2] == slot_of(f2.field, 131, {46, 1}));  // (131, 46 + sqrt(151))

  // Self-test: a form is never reported strictly congruent to itself or
  // its own conjugates.
  for (auto& e : c2.strict) CHECK(e.partner_label.substr(0, 7) == "5.12.f1");
}

TEST_CASE("classification flags missing divisor levels") {
  NewformData f1 = fx("30.6.f1");
  NewformData f2 = fx("30.6.f2");
  CongruenceClassification c = classify_congruence_primes(f1, {f2, fx("15.6.g"), fx("10.6.g")}, 0);
  CHECK(c.conditional);  // levels 1, 2, 3, 5, 6 unsupplied
  // Strict congruence modulo 12 with the other level-30 form: primes 2, 3.
  auto strict = c.strict_slots();
  REQUIRE(strict.size() == 2);
  CHECK(strict[0].ell == 2);
  CHECK(strict[1].ell == 3);
}

TEST_CASE("conjugation equivariance of classification") {
  NewformData f2 = fx("5.12.f2");
  auto autos = field_automorphisms(f2.field);
  const FieldElement& sigma = autos.theta_images[1];
  NewformData f2bar = galois_conjugate_form(f2, sigma);
  auto family = with_conjugates({fx("5.12.f1"), f2, fx("1.12.delta")});

  CongruenceClassification c = classify_congruence_primes(f2, family, 0);
  CongruenceClassification cbar = classify_congruence_primes(f2bar, family, 0);
  auto all = c.all_slots();
  auto allbar = cbar.all_slots();
  REQUIRE(all.size() == allbar.size());
  std::set<PrimeSlot> expect;
  for (auto& s : all) expect.insert(conjugate_slot(f2.field, s, sigma));
  std::set<PrimeSlot> got(allbar.begin(), allbar.end());
  CHECK(expect == got);
}
