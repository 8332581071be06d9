#ifndef OBSTRUCTOR_FINITE_FIELD_HPP
#define OBSTRUCTOR_FINITE_FIELD_HPP

#include <string>
#include <vector>

#include "obstructor/mod_poly.hpp"

namespace obstructor {

// One irreducible modulus per (ell, m) per process, found by a
// deterministic smallest-lexicographic search, so finite-field elements
// are comparable across calls.  Read-through initialization is
// mutex-guarded and safe for concurrent use.
PrimeFieldPoly canonical_modulus(const BigInt& ell, int m);

// Element of F_{ell^m} = F_ell[x]/(modulus).  The modulus is carried
// explicitly: residue reduction produces elements modulo a prime slot's
// own local factor, embeddings move them into the canonical field.
struct FiniteFieldElement {
  PrimeFieldPoly modulus;  // monic irreducible over F_ell
  PrimeFieldPoly rep;      // degree < deg(modulus)

  FiniteFieldElement() = default;
  FiniteFieldElement(PrimeFieldPoly mod, PrimeFieldPoly r) : modulus(std::move(mod)), rep(std::move(r)) {
    this->rep = divmod(this->rep, modulus).second;
  }

  const BigInt& characteristic() const { return modulus.p; }
  int extension_degree() const { return modulus.degree(); }
  bool is_zero() const { return rep.is_zero(); }

  bool operator==(const FiniteFieldElement& o) const { return modulus == o.modulus && rep == o.rep; }
  bool operator<(const FiniteFieldElement& o) const { return rep < o.rep; }
  std::string to_string() const { return rep.to_string("t"); }
};

FiniteFieldElement ff_add(const FiniteFieldElement& a, const FiniteFieldElement& b);
FiniteFieldElement ff_sub(const FiniteFieldElement& a, const FiniteFieldElement& b);
FiniteFieldElement ff_mul(const FiniteFieldElement& a, const FiniteFieldElement& b);
FiniteFieldElement ff_inv(const FiniteFieldElement& a);
FiniteFieldElement ff_pow(const FiniteFieldElement& a, const BigInt& e);
FiniteFieldElement ff_constant(const PrimeFieldPoly& modulus, const BigInt& value);
// x mod modulus (the residue-class generator).
FiniteFieldElement ff_generator(const PrimeFieldPoly& modulus);
// Frobenius x -> x^ell.
FiniteFieldElement ff_frobenius(const FiniteFieldElement& a);

// Evaluate a polynomial with F_ell coefficients at an element of F_{ell^m}.
FiniteFieldElement ff_eval_poly(const PrimeFieldPoly& poly, const FiniteFieldElement& at);

// All roots in F_{ell^m} (canonical modulus) of a poly with F_ell
// coefficients, sorted canonically.  Splitting uses the seeded randomized
// machinery; results are canonical regardless of the seed.
std::vector<FiniteFieldElement> roots_in_extension(const PrimeFieldPoly& g, int m);

// An embedding of F_ell[x]/(g) into the canonical F_{ell^m}, determined
// by the image of the residue class of x.
struct ResidueEmbedding {
  PrimeFieldPoly source_modulus;      // g
  FiniteFieldElement generator_image; // a root of g in F_{ell^m}

  FiniteFieldElement apply(const FiniteFieldElement& a) const {
    if (!(a.modulus == source_modulus)) throw InvalidArgument("ResidueEmbedding: wrong source field");
    return ff_eval_poly(a.rep, generator_image);
  }
};

// Exactly deg(g) embeddings (the Frobenius orbit of one root); requires
// deg(g) | m.
std::vector<ResidueEmbedding> residue_embeddings(const PrimeFieldPoly& g, int m);

}  // namespace obstructor

#endif
