#ifndef OBSTRUCTOR_DIRICHLET_HPP
#define OBSTRUCTOR_DIRICHLET_HPP

#include <map>
#include <string>
#include <vector>

#include "obstructor/number_field.hpp"

namespace obstructor {

// Nebentypus data: the character is stored by the value table of its
// primitive version at the conductor; the modulus-N character is derived.
struct DirichletCharacter {
  BigInt modulus;    // N
  BigInt conductor;  // M, divides N
  int order = 1;
  FieldPtr field;
  std::map<BigInt, FieldElement> values;  // residue u mod M (gcd(u, M) = 1) -> omega_0(u)

  static DirichletCharacter trivial(const BigInt& N, const FieldPtr& field);

  // omega_0(u) for gcd(u, M) = 1; throws otherwise.
  const FieldElement& value_primitive(const BigInt& u) const;

  // The modulus-N character: zero on residues sharing a factor with N.
  FieldElement omega(const BigInt& n) const;

  bool is_odd() const;  // omega(-1) = -1

  // Same primitive character: equal conductor, order, and value table
  // (compared through rational values; the bundled data has values in Q).
  bool same_primitive(const DirichletCharacter& o) const;

  // Structural problems (fatal for validation): conductor not dividing
  // modulus, wrong key set, non-multiplicative table, chi(1) != 1, value
  // order mismatch, or a table that factors through a proper divisor of
  // the conductor.
  std::vector<std::string> structural_problems() const;
};

}  // namespace obstructor

#endif
