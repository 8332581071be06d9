#include "obstructor/dirichlet.hpp"

#include <algorithm>

namespace obstructor {

DirichletCharacter DirichletCharacter::trivial(const BigInt& N, const FieldPtr& field) {
  DirichletCharacter chi;
  chi.modulus = N;
  chi.conductor = 1;
  chi.order = 1;
  chi.field = field;
  chi.values.emplace(BigInt(0), FieldElement::one(field));
  return chi;
}

const FieldElement& DirichletCharacter::value_primitive(const BigInt& u) const {
  BigInt key = mod_reduce(u, conductor);
  auto it = values.find(key);
  if (it == values.end())
    throw InvalidArgument("DirichletCharacter: no value at residue " + key.get_str() +
                          " mod " + conductor.get_str());
  return it->second;
}

FieldElement DirichletCharacter::omega(const BigInt& n) const {
  if (gcd_big(n, modulus) != 1) return FieldElement::zero(field);
  return value_primitive(n);
}

bool DirichletCharacter::is_odd() const {
  return value_primitive(conductor - 1) == -FieldElement::one(field);
}

bool DirichletCharacter::same_primitive(const DirichletCharacter& o) const {
  if (conductor != o.conductor || order != o.order) return false;
  for (auto& [u, v] : values) {
    const FieldElement& w = o.value_primitive(u);
    // The shipped characters take rational values; compare exactly when
    // possible and refuse comparisons across incompatible presentations.
    if (v.is_rational_value() && w.is_rational_value()) {
      if (v.rational_value() != w.rational_value()) return false;
    } else if (v.field()->same_field(*w.field())) {
      if (!(v == w)) return false;
    } else {
      throw InvalidArgument("DirichletCharacter: cannot compare irrational character values across fields");
    }
  }
  return true;
}

std::vector<std::string> DirichletCharacter::structural_problems() const {
  std::vector<std::string> out;
  if (modulus < 1 || conductor < 1) {
    out.push_back("modulus and conductor must be positive");
    return out;
  }
  if (!mpz_divisible_p(modulus.get_mpz_t(), conductor.get_mpz_t()))
    out.push_back("conductor does not divide modulus");

  // Key set: exactly the units mod M.
  std::vector<BigInt> units;
  if (conductor == 1) {
    units.push_back(0);
  } else {
    for (BigInt u = 1; u < conductor; ++u)
      if (gcd_big(u, conductor) == 1) units.push_back(u);
  }
  bool keys_ok = units.size() == values.size();
  if (keys_ok)
    for (auto& u : units)
      if (values.find(u) == values.end()) keys_ok = false;
  if (!keys_ok) {
    out.push_back("value table keys are not exactly the units mod the conductor");
    return out;  // further checks would chase missing keys
  }

  if (!(value_primitive(1) == FieldElement::one(field))) out.push_back("chi(1) != 1");

  for (auto& [u, v] : values) {
    FieldElement pw = FieldElement::one(field);
    for (int i = 0; i < order; ++i) pw = pw * v;
    if (!(pw == FieldElement::one(field))) {
      out.push_back("value at " + u.get_str() + " is not a root of unity of the declared order");
      break;
    }
  }

  for (auto& [u, v] : values) {
    for (auto& [w, x] : values) {
      BigInt uw = mod_reduce(u * w, conductor);
      if (!(value_primitive(uw) == v * x)) {
        out.push_back("value table is not multiplicative");
        goto mult_done;
      }
    }
  }
mult_done:

  // Primitivity: for every proper divisor M' of M there must be some
  // u = 1 (mod M') with chi(u) != 1.
  if (conductor > 1) {
    for (auto& [d, e] : factor_integer(conductor)) {
      BigInt mprime = conductor / d;  // maximal proper divisors suffice
      bool witness = false;
      for (auto& [u, v] : values) {
        if (mod_reduce(u - 1, mprime) == 0 && !(v == FieldElement::one(field))) {
          witness = true;
          break;
        }
      }
      if (!witness) {
        out.push_back("character is not primitive: table factors through modulus " + mprime.get_str());
        break;
      }
    }
  }
  return out;
}

}  // namespace obstructor
