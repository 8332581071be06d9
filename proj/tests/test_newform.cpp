#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "obstructor/newform.hpp"

using namespace obstructor;

namespace {

std::string fixture_dir() {
  const char* env = std::getenv("OBSTRUCTOR_FIXTURES");
  return env ? env : "fixtures";
}

NewformData fx(const std::string& label) {
  return load_newform(fixture_dir() + "/" + label + ".json");
}

Rational rational_a(const NewformData& f, long n) { return f.a(n).rational_value(); }

}  // namespace

TEST_CASE("load_newform on the bundled forms") {
  NewformData f1 = fx("5.12.f1");
  CHECK(f1.weight == 12);
  CHECK(f1.level == 5);
  CHECK(rational_a(f1, 2) == 34);

  NewformData f2 = fx("35.3.f2");
  CHECK(f2.field->degree() == 2);
  CHECK(f2.a(7) == FieldElement(f2.field, {Rational(-2), Rational(-3)}));
  CHECK(f2.character.conductor == 7);
  CHECK(f2.character.is_odd());

  NewformData g = fx("7.3.g");
  CHECK(g.precision == 11);
  CHECK(rational_a(g, 11) == -6);
}

TEST_CASE("load rejects malformed data") {
  // a_1 = 0
  std::string bad = R"({"label":"x","weight":4,"level":3,
    "character":{"modulus":3,"conductor":1,"order":1,"values":[[0,[[1,1]]]]},
    "field":{"degree":1,"min_poly":[0,1]},
    "precision":2,"an":[[1,[[0,1]]],[2,[[1,1]]]]})";
  CHECK_THROWS_AS(parse_newform_json(bad, "test"), ParseError);

  // coefficient index gap
  std::string gap = R"({"label":"x","weight":4,"level":3,
    "character":{"modulus":3,"conductor":1,"order":1,"values":[[0,[[1,1]]]]},
    "field":{"degree":1,"min_poly":[0,1]},
    "precision":3,"an":[[1,[[1,1]]],[3,[[1,1]]]]})";
  CHECK_THROWS_AS(parse_newform_json(gap, "test"), ParseError);

  // reducible min_poly
  std::string red = R"({"label":"x","weight":4,"level":3,
    "character":{"modulus":3,"conductor":1,"order":1,"values":[[0,[[1,1]]]]},
    "field":{"degree":2,"min_poly":[-1,0,1]},
    "precision":1,"an":[[1,[[1,1],[0,1]]]]})";
  CHECK_THROWS_AS(parse_newform_json(red, "test"), ParseError);

  CHECK_THROWS_AS(load_newform(fixture_dir() + "/no-such-file.json"), IoError);
}

TEST_CASE("json round trip") {
  for (const char* label : {"5.12.f2", "30.6.f1", "7.3.g"}) {
    NewformData f = fx(label);
    NewformData g = parse_newform_json(newform_to_json(f), "roundtrip");
    CHECK(f.label == g.label);
    CHECK(f.level == g.level);
    CHECK(f.precision == g.precision);
    for (long n = 1; n <= f.precision; ++n) CHECK(f.a(n) == g.a(n));
  }
}

TEST_CASE("validate: bundled fixtures are clean except the known prime powers") {
  // The level-30 and level-10 printed expansions are stored as printed;
  // their prime-power entries at p | N fail the recursion and are flagged
  // as warnings, never silently corrected.
  std::vector<std::pair<std::string, std::vector<long>>> expected = {
      {"1.12.delta", {}},   {"5.12.f1", {}},  {"5.12.f2", {}},
      {"30.6.f1", {4, 8, 9}}, {"30.6.f2", {4, 8, 9}}, {"15.6.g", {9}},
      {"10.6.g", {4, 8}},   {"35.3.f1", {}},  {"35.3.f2", {}},
      {"7.3.g", {}},
  };
  for (auto& [label, warn_idx] : expected) {
    NewformData f = fx(label);
    ValidationReport rep = validate(f);
    INFO(label);
    CHECK(rep.ok());
    CHECK(rep.warning_indices() == warn_idx);
    if (warn_idx.empty()) CHECK(rep.status == ValidationReport::Status::valid);
  }
}

TEST_CASE("validate: worked checks from the level-30 pair") {
  NewformData f1 = fx("30.6.f1");
  // a_6 = a_2 a_3 = 36 passes.
  CHECK(f1.a(6) == f1.a(2) * f1.a(3));
  // a_4 = -16 vs a_2^2 = 16: flagged at the Steinberg prime 2.
  CHECK(rational_a(f1, 4) == -16);
  ValidationReport rep = validate(f1);
  bool found = false;
  for (auto& issue : rep.issues)
    if (issue.check == "hecke-recursion" && issue.index == 4) found = true;
  CHECK(found);
}

TEST_CASE("validate flags fatal problems") {
  std::string nsq = R"({"label":"x","weight":4,"level":12,
    "character":{"modulus":12,"conductor":1,"order":1,"values":[[0,[[1,1]]]]},
    "field":{"degree":1,"min_poly":[0,1]},
    "precision":1,"an":[[1,[[1,1]]]]})";
  NewformData f = parse_newform_json(nsq, "test");
  CHECK(validate(f).status == ValidationReport::Status::invalid);

  // Character modulus differing from the level is a character inconsistency.
  std::string wrongmod = R"({"label":"x","weight":4,"level":3,
    "character":{"modulus":6,"conductor":1,"order":1,"values":[[0,[[1,1]]]]},
    "field":{"degree":1,"min_poly":[0,1]},
    "precision":1,"an":[[1,[[1,1]]]]})";
  CHECK(validate(parse_newform_json(wrongmod, "test")).status == ValidationReport::Status::invalid);
}

TEST_CASE("delta generator") {
  NewformData d = delta_coefficients(200);
  std::vector<long> first{1, -24, 252, -1472, 4830, -6048, -16744};
  for (size_t i = 0; i < first.size(); ++i)
    CHECK(rational_a(d, static_cast<long>(i + 1)) == first[i]);

  // Hecke recursion a_{p^2} = a_p^2 - p^11 for p^2 <= 200.
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    if (p * p > 200) break;
    CHECK(rational_a(d, p * p) == rational_a(d, p) * rational_a(d, p) - Rational(pow_big(BigInt(p), 11)));
  }
  CHECK(validate(d).status == ValidationReport::Status::valid);

  // The bundled printed-precision fixture is exactly the generator output.
  NewformData file = fx("1.12.delta");
  NewformData gen = delta_coefficients(file.precision);
  for (long n = 1; n <= file.precision; ++n) CHECK(file.a(n) == gen.a(n));
}

TEST_CASE("galois conjugate forms") {
  NewformData f2 = fx("5.12.f2");
  auto autos = field_automorphisms(f2.field);
  REQUIRE(autos.theta_images.size() == 2);
  NewformData conj = galois_conjugate_form(f2, autos.theta_images[1]);
  CHECK(conj.a(2) == FieldElement(f2.field, {Rational(-10), Rational(-6)}));
  // Involution.
  NewformData back = galois_conjugate_form(conj, autos.theta_images[1]);
  for (long n = 1; n <= f2.precision; ++n) CHECK(back.a(n) == f2.a(n));
  // Identity fixes the form.
  NewformData same = galois_conjugate_form(f2, autos.theta_images[0]);
  for (long n = 1; n <= f2.precision; ++n) CHECK(same.a(n) == f2.a(n));

  NewformData f1 = fx("30.6.f1");
  auto qa = field_automorphisms(f1.field);
  REQUIRE(qa.theta_images.size() == 1);
  NewformData same2 = galois_conjugate_form(f1, qa.theta_images[0]);
  CHECK(same2.a(7) == f1.a(7));

  CHECK_THROWS_AS(galois_conjugate_form(f1, FieldElement::generator(f2.field)), InvalidArgument);
}

TEST_CASE("character table round trip against the primitive table") {
  NewformData f = fx("35.3.f1");
  // omega(p) for p coprime to 35 equals the table value at p mod 7.
  for (long p : {2L, 3L, 11L, 13L}) {
    CHECK(f.character.omega(BigInt(p)) == f.character.value_primitive(BigInt(p % 7)));
  }
  // For p | N but p coprime to M, the downstream convention evaluates the
  // primitive character: omega_0(5 mod 7) = chi(5) = -1.
  CHECK(f.character.value_primitive(BigInt(5)) == -FieldElement::one(f.field));
  // omega itself vanishes on level primes.
  CHECK(f.character.omega(BigInt(5)).is_zero());
  CHECK(f.character.omega(BigInt(7)).is_zero());
}
