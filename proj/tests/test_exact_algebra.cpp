#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "obstructor/finite_field.hpp"
#include "obstructor/mod_poly.hpp"
#include "obstructor/number_field.hpp"
#include "obstructor/numeric.hpp"
#include "obstructor/polynomial.hpp"

using namespace obstructor;

namespace {

IntPolynomial poly(std::vector<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(std::move(v));
}

FieldPtr q_sqrt(long t) {
  return NumberField::create(poly({-t, 0, 1}));
}

FieldElement elem(const FieldPtr& K, long x, long y) {
  return FieldElement(K, {Rational(x), Rational(y)});
}

// Brute-force root count of f in F_{ell^deg} via exhaustive evaluation in
// the slot's residue field; only used as an oracle at tiny sizes.
int count_roots_mod(const IntPolynomial& f, long ell) {
  int n = 0;
  for (long r = 0; r < ell; ++r)
    if (mod_reduce(f.eval(BigInt(r)), BigInt(ell)) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("integer utilities") {
  CHECK(is_prime(BigInt(601)));
  CHECK_FALSE(is_prime(BigInt(1)));
  CHECK_FALSE(is_prime(BigInt(561)));  // Carmichael
  auto fac = factor_integer(BigInt(152640));
  std::vector<std::pair<BigInt, int>> expect{{BigInt(2), 6}, {BigInt(3), 2}, {BigInt(5), 1}, {BigInt(53), 1}};
  CHECK(fac == expect);
  CHECK(euler_phi(BigInt(510)) == 128);
  CHECK(is_squarefree(BigInt(30)));
  CHECK_FALSE(is_squarefree(BigInt(12)));
  BigInt r = sqrt_mod(BigInt(151), BigInt(601));
  CHECK(mod_reduce(r * r, BigInt(601)) == 151);
}

TEST_CASE("polynomial resultant and discriminant") {
  CHECK(discriminant_int(poly({-151, 0, 1})) == 604);
  CHECK(discriminant_int(poly({5, 0, 1})) == -20);
  CHECK(discriminant_int(poly({0, 1})) == 1);
  // resultant(x^2-151, x-7) = 49 - 151 = -102
  Rational r = resultant(rat_poly(poly({-151, 0, 1})), rat_poly(poly({-7, 1})));
  CHECK(r == Rational(-102));
}

TEST_CASE("irreducibility over Q") {
  CHECK(is_irreducible_over_Q(poly({-151, 0, 1})));
  CHECK(is_irreducible_over_Q(poly({5, 0, 1})));
  CHECK(is_irreducible_over_Q(poly({-2, 0, 0, 1})));
  CHECK_FALSE(is_irreducible_over_Q(poly({-1, 0, 1})));
  CHECK_FALSE(is_irreducible_over_Q(poly({1, 2, 1})));
  // x^4 + 1 factors mod every prime but is irreducible over Q.
  CHECK(is_irreducible_over_Q(poly({1, 0, 0, 0, 1})));
  // (x^2+x+1)(x^2+2) = x^4 + x^3 + 3x^2 + 2x + 2
  CHECK_FALSE(is_irreducible_over_Q(poly({2, 2, 3, 1, 1})));
}

TEST_CASE("factor_poly_mod_p on the worked splittings") {
  auto f601 = factor_poly_mod_p(poly({-151, 0, 1}), BigInt(601));
  REQUIRE(f601.size() == 2);
  // roots 358^2 = 151 mod 601: factors x - 358 = x + 243 and x + 358.
  CHECK(f601[0].first == PrimeFieldPoly(BigInt(601), {BigInt(243), BigInt(1)}));
  CHECK(f601[0].second == 1);
  CHECK(f601[1].first == PrimeFieldPoly(BigInt(601), {BigInt(358), BigInt(1)}));
  CHECK(f601[1].second == 1);

  auto f5 = factor_poly_mod_p(poly({-151, 0, 1}), BigInt(5));
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].first == PrimeFieldPoly(BigInt(5), {BigInt(1), BigInt(1)}));
  CHECK(f5[1].first == PrimeFieldPoly(BigInt(5), {BigInt(4), BigInt(1)}));

  auto f2 = factor_poly_mod_p(poly({5, 0, 1}), BigInt(2));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == PrimeFieldPoly(BigInt(2), {BigInt(1), BigInt(1)}));
  CHECK(f2[0].second == 2);

  auto f7 = factor_poly_mod_p(poly({5, 0, 1}), BigInt(7));
  REQUIRE(f7.size() == 2);
  CHECK(f7[0].first == PrimeFieldPoly(BigInt(7), {BigInt(3), BigInt(1)}));
  CHECK(f7[1].first == PrimeFieldPoly(BigInt(7), {BigInt(4), BigInt(1)}));

  CHECK_THROWS_AS(factor_poly_mod_p(poly({5, 0, 1}), BigInt(6)), InvalidArgument);
}

TEST_CASE("factorization completeness on random small polynomials") {
  std::mt19937_64 rng(12345);
  auto primes = primes_up_to(1000);
  for (int trial = 0; trial < 300; ++trial) {
    long ell = primes[rng() % primes.size()];
    int deg = 1 + static_cast<int>(rng() % 4);
    std::vector<BigInt> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % 2000) - 1000);
    c.emplace_back(1);
    IntPolynomial f(std::move(c));
    auto factors = factor_poly_mod_p(f, BigInt(ell));
    PrimeFieldPoly prod = PrimeFieldPoly::constant(BigInt(ell), 1);
    for (auto& [fac, mult] : factors) {
      CHECK(fac.is_monic());
      CHECK(is_irreducible_mod_p(fac));
      for (int i = 0; i < mult; ++i) prod = prod * fac;
    }
    CHECK(prod == make_monic(PrimeFieldPoly::from_int_poly(f, BigInt(ell))));
  }
}

TEST_CASE("factorization agrees with exhaustive root search, degree 2") {
  for (long t : {151L, -5L}) {
    IntPolynomial f = poly({-t, 0, 1});
    for (long ell : primes_up_to(2000)) {
      auto factors = factor_poly_mod_p(f, BigInt(ell));
      int linear = 0;
      for (auto& [fac, mult] : factors)
        if (fac.degree() == 1) linear += mult;
      CHECK(linear == ((count_roots_mod(f, ell) == 1) ? 2 : count_roots_mod(f, ell)));
    }
  }
}

TEST_CASE("primes_above and splitting degree law") {
  auto K151 = q_sqrt(151);
  auto slots601 = primes_above(K151, BigInt(601));
  REQUIRE(slots601.size() == 2);
  CHECK(slots601[0].e == 1);
  CHECK(slots601[0].f == 1);
  CHECK_FALSE(slots601[0].index_warning);

  auto Km5 = q_sqrt(-5);
  auto slots5 = primes_above(Km5, BigInt(5));
  REQUIRE(slots5.size() == 1);
  CHECK(slots5[0].e == 2);
  CHECK(slots5[0].f == 1);
  CHECK_FALSE(slots5[0].index_warning);

  auto slots2 = primes_above(Km5, BigInt(2));
  REQUIRE(slots2.size() == 1);
  CHECK(slots2[0].index_warning);  // 4 | disc(x^2+5) = -20

  auto Q = NumberField::rationals();
  auto slots13 = primes_above(Q, BigInt(13));
  REQUIRE(slots13.size() == 1);
  CHECK(slots13[0].e == 1);
  CHECK(slots13[0].f == 1);
  CHECK(slots13[0].label(1) == "(13)");

  // Sum of e*f equals the degree for many ell.
  for (auto& K : {K151, Km5}) {
    for (long ell : primes_up_to(200)) {
      int total = 0;
      for (auto& s : primes_above(K, BigInt(ell))) total += s.e * s.f;
      CHECK(total == K->degree());
    }
  }
}

TEST_CASE("reduce_element worked examples") {
  auto K = q_sqrt(151);
  PrimeSlot slot;
  slot.ell = 131;
  slot.local_factor = PrimeFieldPoly(BigInt(131), {BigInt(46), BigInt(1)});
  slot.e = 1;
  slot.f = 1;
  auto r = reduce_element(elem(K, -10, 6), slot);
  CHECK(r == ff_constant(slot.local_factor, BigInt(107)));

  auto Q = NumberField::rationals();
  auto s29 = primes_above(Q, BigInt(29))[0];
  CHECK(reduce_element(FieldElement::from_rational(Q, 34), s29) == ff_constant(s29.local_factor, BigInt(5)));

  auto Km5 = q_sqrt(-5);
  auto p5 = primes_above(Km5, BigInt(5))[0];
  CHECK(reduce_element(elem(Km5, 0, 1), p5).is_zero());

  // Non-integral denominators are rejected.
  CHECK_THROWS_AS(reduce_element(FieldElement(Q, {Rational(1, 29)}), s29), NotIntegralAtPrime);
  // Index warnings are rejected unless the caller opts in.
  auto p2 = primes_above(Km5, BigInt(2))[0];
  CHECK_THROWS_AS(reduce_element(elem(Km5, 1, 1), p2), UnsupportedIndex);
  CHECK(reduce_element(elem(Km5, 1, 1), p2, true).is_zero());  // 1 + theta = 0 mod (2, theta+1)
}

TEST_CASE("reduce_element is a ring homomorphism") {
  auto K = q_sqrt(151);
  std::mt19937_64 rng(777);
  for (long ell : {5L, 13L, 131L, 601L}) {
    for (auto& slot : primes_above(K, BigInt(ell))) {
      for (int i = 0; i < 250; ++i) {
        FieldElement a = elem(K, static_cast<long>(rng() % 4000) - 2000, static_cast<long>(rng() % 4000) - 2000);
        FieldElement b = elem(K, static_cast<long>(rng() % 4000) - 2000, static_cast<long>(rng() % 4000) - 2000);
        CHECK(reduce_element(a + b, slot) == ff_add(reduce_element(a, slot), reduce_element(b, slot)));
        CHECK(reduce_element(a * b, slot) == ff_mul(reduce_element(a, slot), reduce_element(b, slot)));
      }
    }
  }
}

TEST_CASE("residue embeddings") {
  // Degree-1 residue field into F_{l^2}: exactly one embedding.
  PrimeFieldPoly g1(BigInt(5), {BigInt(1), BigInt(1)});
  CHECK(residue_embeddings(g1, 2).size() == 1);

  // Degree-2 residue field into F_{l^2}: the two Frobenius-conjugate embeddings.
  PrimeFieldPoly g2(BigInt(11), {BigInt(3), BigInt(0), BigInt(1)});  // x^2 + 3 irreducible mod 11
  REQUIRE(is_irreducible_mod_p(g2));
  auto embs = residue_embeddings(g2, 2);
  REQUIRE(embs.size() == 2);
  CHECK(embs[1].generator_image == ff_frobenius(embs[0].generator_image));

  CHECK_THROWS_AS(residue_embeddings(g2, 3), InvalidArgument);

  // Embeddings are ring maps landing on roots of g.
  for (auto& e : embs) {
    auto img = e.apply(ff_generator(g2));
    CHECK(ff_add(ff_mul(img, img), ff_constant(img.modulus, 3)).is_zero());
  }
}

TEST_CASE("field automorphisms") {
  auto K = q_sqrt(151);
  auto autos = field_automorphisms(K);
  CHECK(autos.complete);
  REQUIRE(autos.theta_images.size() == 2);
  CHECK(autos.theta_images[0] == FieldElement::generator(K));
  CHECK(autos.theta_images[1] == elem(K, 0, -1));

  auto Q = NumberField::rationals();
  CHECK(field_automorphisms(Q).theta_images.size() == 1);
  CHECK(field_automorphisms(Q).complete);

  auto cubic = NumberField::create(poly({-2, 0, 0, 1}));
  auto ca = field_automorphisms(cubic);
  CHECK(ca.theta_images.size() == 1);
  CHECK(ca.complete);  // the quadratic cofactor has no root: norm obstruction

  // Conjugation is an involution on elements.
  FieldElement a = elem(K, -10, 6);
  FieldElement sigma = autos.theta_images[1];
  CHECK(apply_automorphism(apply_automorphism(a, sigma), sigma) == a);
}

TEST_CASE("norm and trace") {
  auto K = q_sqrt(151);
  CHECK(norm(elem(K, -10, 6)) == Rational(-5336));
  CHECK(trace(elem(K, -10, 6)) == Rational(-20));
  auto Q = NumberField::rationals();
  CHECK(norm(FieldElement::from_rational(Q, 7)) == Rational(7));
  auto Km5 = q_sqrt(-5);
  CHECK(norm(elem(Km5, 0, 1)) == Rational(5));

  // Multiplicativity.
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    FieldElement a = elem(K, static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 200) - 100);
    FieldElement b = elem(K, static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 200) - 100);
    CHECK(norm(a * b) == norm(a) * norm(b));
  }
}

TEST_CASE("element minimal polynomials") {
  auto K = q_sqrt(151);
  FieldElement a = elem(K, -10, 6);
  IntPolynomial mp = element_min_poly_int(a);
  // x^2 + 20x - 5336
  CHECK(mp == poly({-5336, 20, 1}));
  CHECK(element_min_poly_int(FieldElement::from_rational(K, Rational(-3125))) == poly({3125, 1}));

  FieldElement inv = a.inverse();
  CHECK(a * inv == FieldElement::one(K));
}

TEST_CASE("canonical modulus determinism") {
  auto m1 = canonical_modulus(BigInt(2), 2);
  CHECK(m1 == PrimeFieldPoly(BigInt(2), {BigInt(1), BigInt(1), BigInt(1)}));
  auto m2 = canonical_modulus(BigInt(5), 2);
  CHECK(is_irreducible_mod_p(m2));
  CHECK(m2 == canonical_modulus(BigInt(5), 2));
}
