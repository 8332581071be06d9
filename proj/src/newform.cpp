#include "obstructor/newform.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace obstructor {

using nlohmann::ordered_json;

namespace {

BigInt json_bigint(const ordered_json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed integer string", where);
    }
  }
  throw ParseError("expected integer or integer string", where);
}

ordered_json bigint_json(const BigInt& v) {
  static const BigInt lim = BigInt(1) << 53;
  if (abs(v) < lim) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

FieldElement json_coords(const ordered_json& j, const FieldPtr& K, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != K->degree())
    throw ParseError("coordinate array must have one [num, den] pair per field degree", where);
  std::vector<Rational> coords;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("coordinate must be a [num, den] pair", where);
    BigInt num = json_bigint(pair[0], where);
    BigInt den = json_bigint(pair[1], where);
    if (den == 0) throw ParseError("zero denominator", where);
    Rational r(num, den);
    r.canonicalize();
    coords.push_back(r);
  }
  return FieldElement(K, std::move(coords));
}

ordered_json coords_json(const FieldElement& a) {
  ordered_json out = ordered_json::array();
  for (auto& c : a.coords()) {
    ordered_json pair = ordered_json::array();
    pair.push_back(bigint_json(c.get_num()));
    pair.push_back(bigint_json(c.get_den()));
    out.push_back(pair);
  }
  return out;
}

}  // namespace

NewformData parse_newform_json(const std::string& text, const std::string& source_name) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), source_name);
  }
  auto need = [&](const char* key) -> const ordered_json& {
    if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'", source_name);
    return j[key];
  };

  NewformData f;
  f.label = need("label").get<std::string>();
  f.weight = need("weight").get<int>();
  if (f.weight < 2) throw ParseError("weight must be >= 2", source_name + ":weight");
  f.level = json_bigint(need("level"), source_name + ":level");
  if (f.level < 1) throw ParseError("level must be positive", source_name + ":level");
  f.precision = need("precision").get<int>();
  if (f.precision < 1) throw ParseError("precision must be >= 1", source_name + ":precision");

  const ordered_json& jf = need("field");
  if (!jf.contains("degree") || !jf.contains("min_poly"))
    throw ParseError("field needs 'degree' and 'min_poly'", source_name + ":field");
  int degree = jf["degree"].get<int>();
  std::vector<BigInt> mp;
  for (auto& c : jf["min_poly"]) mp.push_back(json_bigint(c, source_name + ":field.min_poly"));
  IntPolynomial min_poly(std::move(mp));
  if (min_poly.degree() != degree)
    throw ParseError("min_poly degree does not match declared degree", source_name + ":field");
  try {
    f.field = NumberField::create(min_poly);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), source_name + ":field.min_poly");
  }

  const ordered_json& jc = need("character");
  for (const char* key : {"modulus", "conductor", "order", "values"})
    if (!jc.contains(key)) throw ParseError(std::string("character needs '") + key + "'", source_name + ":character");
  f.character.modulus = json_bigint(jc["modulus"], source_name + ":character.modulus");
  f.character.conductor = json_bigint(jc["conductor"], source_name + ":character.conductor");
  f.character.order = jc["order"].get<int>();
  f.character.field = f.field;
  for (auto& entry : jc["values"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("character value must be [residue, coords]", source_name + ":character.values");
    BigInt residue = json_bigint(entry[0], source_name + ":character.values");
    residue = mod_reduce(residue, f.character.conductor);
    FieldElement v = json_coords(entry[1], f.field, source_name + ":character.values");
    if (!f.character.values.emplace(residue, v).second)
      throw ParseError("duplicate character residue " + residue.get_str(), source_name + ":character.values");
  }

  const ordered_json& jan = need("an");
  std::vector<FieldElement> an(static_cast<size_t>(f.precision), FieldElement::zero(f.field));
  std::vector<bool> seen(static_cast<size_t>(f.precision), false);
  for (auto& entry : jan) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("an entry must be [index, coords]", source_name + ":an");
    long idx = entry[0].get<long>();
    if (idx < 1 || idx > f.precision)
      throw ParseError("coefficient index " + std::to_string(idx) + " out of range", source_name + ":an");
    if (seen[static_cast<size_t>(idx - 1)])
      throw ParseError("duplicate coefficient index " + std::to_string(idx), source_name + ":an");
    seen[static_cast<size_t>(idx - 1)] = true;
    an[static_cast<size_t>(idx - 1)] = json_coords(entry[1], f.field, source_name + ":an[" + std::to_string(idx) + "]");
  }
  for (long i = 1; i <= f.precision; ++i)
    if (!seen[static_cast<size_t>(i - 1)])
      throw ParseError("coefficient index gap at " + std::to_string(i), source_name + ":an");
  f.an = std::move(an);

  if (f.a(1) != FieldElement::one(f.field))
    throw ParseError("a_1 != 1: q-expansion is not normalized", source_name + ":an");
  return f;
}

NewformData load_newform(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_newform_json(ss.str(), path);
}

std::string newform_to_json(const NewformData& f) {
  ordered_json j;
  j["label"] = f.label;
  j["weight"] = f.weight;
  j["level"] = bigint_json(f.level);
  ordered_json jc;
  jc["modulus"] = bigint_json(f.character.modulus);
  jc["conductor"] = bigint_json(f.character.conductor);
  jc["order"] = f.character.order;
  ordered_json vals = ordered_json::array();
  for (auto& [u, v] : f.character.values) {
    ordered_json entry = ordered_json::array();
    entry.push_back(bigint_json(u));
    entry.push_back(coords_json(v));
    vals.push_back(entry);
  }
  jc["values"] = vals;
  j["character"] = jc;
  ordered_json jf;
  jf["degree"] = f.field->degree();
  ordered_json mp = ordered_json::array();
  for (auto& c : f.field->min_poly().c) mp.push_back(bigint_json(c));
  jf["min_poly"] = mp;
  j["field"] = jf;
  j["precision"] = f.precision;
  ordered_json an = ordered_json::array();
  for (long n = 1; n <= f.precision; ++n) {
    ordered_json entry = ordered_json::array();
    entry.push_back(n);
    entry.push_back(coords_json(f.a(n)));
    an.push_back(entry);
  }
  j["an"] = an;
  return j.dump(1);
}

std::vector<long> ValidationReport::warning_indices() const {
  std::vector<long> out;
  for (auto& issue : issues)
    if (!issue.fatal && issue.index > 0) out.push_back(issue.index);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Weil bound |a_p| <= 2 p^((k-1)/2) at every archimedean embedding,
// checked exactly for degree <= 2 coefficient fields.
bool weil_bound_holds(const NewformData& f, long p, bool& checkable) {
  checkable = true;
  const FieldElement& ap = f.a(p);
  BigInt bound4 = 4 * pow_big(BigInt(p), static_cast<unsigned long>(f.weight - 1));  // (2 p^((k-1)/2))^2
  if (f.field->degree() == 1 || ap.is_rational_value()) {
    Rational v = ap.coords()[0];
    return v * v <= Rational(bound4);
  }
  if (f.field->degree() == 2) {
    // x + y*theta, theta^2 = -b*theta - c.
    const BigInt& b = f.field->min_poly().c[1];
    const BigInt& c = f.field->min_poly().c[0];
    Rational x = ap.coords()[0], y = ap.coords()[1];
    BigInt disc = b * b - 4 * c;
    // Embeddings x + y(-b ± sqrt(disc))/2 = (2x - by)/2 ± y sqrt(disc)/2.
    Rational u = (Rational(2) * x - Rational(b) * y) / 2;
    Rational w = y / 2;  // coefficient of sqrt(disc)
    if (disc < 0) {
      // Complex pair: |.|^2 = u^2 + |disc| w^2.
      return u * u + Rational(-disc) * w * w <= Rational(bound4);
    }
    // Real pair: need (u ± w sqrt(disc))^2 <= bound4, i.e.
    // u^2 + disc w^2 + 2|uw| sqrt(disc) <= bound4.
    Rational base = u * u + Rational(disc) * w * w;
    Rational rest = Rational(bound4) - base;
    if (rest < 0) return false;
    Rational cross = Rational(4) * u * u * w * w * Rational(disc);  // (2uw)^2 disc
    return cross <= rest * rest;
  }
  checkable = false;
  return true;
}

}  // namespace

ValidationReport validate(const NewformData& f) {
  ValidationReport rep;
  auto fatal = [&](const std::string& check, const std::string& msg, long idx = 0) {
    rep.issues.push_back({check, msg, idx, true});
  };
  auto warn = [&](const std::string& check, const std::string& msg, long idx = 0) {
    rep.issues.push_back({check, msg, idx, false});
  };

  rep.checks_run = {"normalization", "squarefree-level", "character", "hecke-recursion",
                    "multiplicativity", "weil-bound"};

  if (f.a(1) != FieldElement::one(f.field)) fatal("normalization", "a_1 != 1", 1);
  if (!is_squarefree(f.level)) fatal("squarefree-level", "level is not squarefree");

  if (f.character.modulus != f.level) fatal("character", "character modulus differs from level");
  for (auto& problem : f.character.structural_problems()) fatal("character", problem);
  if (f.character.conductor > 1 || f.weight % 2 == 1) {
    bool odd_weight = f.weight % 2 == 1;
    bool odd_char = false;
    try {
      odd_char = f.character.is_odd();
    } catch (const Error&) {
      // table problems already reported
    }
    if (odd_char != odd_weight) fatal("character", "character parity does not match weight");
  }

  // Hecke recursion a_{p^r} = a_p a_{p^{r-1}} - omega(p) p^{k-1} a_{p^{r-2}}
  // (the omega term vanishes for p | N).
  for (long p : primes_up_to(f.precision)) {
    BigInt pk1 = pow_big(BigInt(p), static_cast<unsigned long>(f.weight - 1));
    bool level_prime = mpz_divisible_ui_p(f.level.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    FieldElement weight_term = f.character.omega(BigInt(p)) * FieldElement::from_rational(f.field, Rational(pk1));
    long pr = p * p;
    long prev = p, prev2 = 1;
    while (pr <= f.precision) {
      FieldElement expect = f.a(p) * f.a(prev) - weight_term * f.a(prev2);
      if (!(f.a(pr) == expect)) {
        std::ostringstream msg;
        msg << "a_" << pr << " violates the recursion at p = " << p << (level_prime ? " (p | N)" : "");
        warn("hecke-recursion", msg.str(), pr);
      }
      prev2 = prev;
      prev = pr;
      pr *= p;
    }
  }

  // Multiplicativity on stored coprime pairs.
  for (long m = 2; m * 2 <= f.precision; ++m) {
    for (long n = m + 1; m * n <= f.precision; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (!(f.a(m * n) == f.a(m) * f.a(n))) {
        std::ostringstream msg;
        msg << "a_" << m * n << " != a_" << m << " * a_" << n;
        warn("multiplicativity", msg.str(), m * n);
      }
    }
  }

  // Weil bound at good primes.
  bool weil_skipped = false;
  for (long p : primes_up_to(f.precision)) {
    if (mpz_divisible_ui_p(f.level.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    bool checkable = true;
    if (!weil_bound_holds(f, p, checkable)) {
      warn("weil-bound", "a_" + std::to_string(p) + " exceeds the Ramanujan-Petersson bound", p);
    }
    if (!checkable) weil_skipped = true;
  }
  if (weil_skipped) warn("weil-bound", "bound not checked: coefficient field degree > 2");

  bool any_fatal = false, any_warn = false;
  for (auto& issue : rep.issues) (issue.fatal ? any_fatal : any_warn) = true;
  rep.status = any_fatal ? ValidationReport::Status::invalid
                         : (any_warn ? ValidationReport::Status::valid_with_warnings
                                     : ValidationReport::Status::valid);
  return rep;
}

NewformData delta_coefficients(int B) {
  if (B < 1) throw InvalidArgument("delta_coefficients: B must be >= 1");
  // eta(q)^24 = (eta^3)^8 with eta^3 given by the sparse series
  // sum (-1)^m (2m+1) q^(m(m+1)/2).
  size_t len = static_cast<size_t>(B);  // coefficients of q^0 .. q^(B-1)
  std::vector<BigInt> cube(len, BigInt(0));
  for (long m = 0;; ++m) {
    long e = m * (m + 1) / 2;
    if (e >= B) break;
    cube[static_cast<size_t>(e)] = (m % 2 ? -(2 * m + 1) : (2 * m + 1));
  }
  auto sq = [len](const std::vector<BigInt>& a) {
    std::vector<BigInt> out(len, BigInt(0));
    for (size_t i = 0; i < len; ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; i + j < len; ++j) {
        if (a[j] == 0) continue;
        out[i + j] += a[i] * a[j];
      }
    }
    return out;
  };
  std::vector<BigInt> pw = sq(sq(sq(cube)));  // eta^24 / q

  NewformData f;
  f.label = "1.12.delta";
  f.weight = 12;
  f.level = 1;
  f.field = NumberField::rationals();
  f.character = DirichletCharacter::trivial(BigInt(1), f.field);
  f.precision = B;
  for (int n = 1; n <= B; ++n)
    f.an.push_back(FieldElement::from_rational(f.field, Rational(pw[static_cast<size_t>(n - 1)])));
  return f;
}

NewformData galois_conjugate_form(const NewformData& f, const FieldElement& theta_image) {
  Automorphisms autos = field_automorphisms(f.field);
  bool found = false;
  for (auto& img : autos.theta_images)
    if (img == theta_image) found = true;
  if (!found) throw InvalidArgument("galois_conjugate_form: not an automorphism of the coefficient field");

  NewformData g = f;
  bool identity = theta_image == autos.theta_images.front();
  if (!identity) g.label = f.label + "-bar";
  for (auto& a : g.an) a = apply_automorphism(a, theta_image);
  for (auto& [u, v] : g.character.values) v = apply_automorphism(v, theta_image);
  return g;
}

}  // namespace obstructor
