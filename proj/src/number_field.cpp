#include "obstructor/number_field.hpp"

#include <algorithm>
#include <sstream>

namespace obstructor {

FieldPtr NumberField::create(IntPolynomial min_poly) {
  if (min_poly.degree() < 1) throw InvalidArgument("NumberField: min_poly must have degree >= 1");
  if (!min_poly.is_monic()) throw InvalidArgument("NumberField: min_poly must be monic");
  if (min_poly.degree() == 1 && min_poly.c[0] != 0)
    throw InvalidArgument("NumberField: degree-1 field must use min_poly = x");
  if (!is_irreducible_over_Q(min_poly)) throw InvalidArgument("NumberField: min_poly is reducible");
  BigInt d = discriminant_int(min_poly);
  return FieldPtr(new NumberField(std::move(min_poly), std::move(d)));
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = create(IntPolynomial({BigInt(0), BigInt(1)}));
  return q;
}

FieldElement::FieldElement(FieldPtr K, std::vector<Rational> coords) : K_(std::move(K)), coords_(std::move(coords)) {
  if (!K_) throw InvalidArgument("FieldElement: null field");
  if (static_cast<int>(coords_.size()) != K_->degree())
    throw InvalidArgument("FieldElement: coordinate count does not match field degree");
  for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::from_rational(const FieldPtr& K, const Rational& r) {
  std::vector<Rational> c(static_cast<size_t>(K->degree()), Rational(0));
  c[0] = r;
  return FieldElement(K, std::move(c));
}

FieldElement FieldElement::generator(const FieldPtr& K) {
  if (K->degree() < 2) throw InvalidArgument("FieldElement::generator: field is rational");
  std::vector<Rational> c(static_cast<size_t>(K->degree()), Rational(0));
  c[1] = 1;
  return FieldElement(K, std::move(c));
}

bool FieldElement::is_zero() const {
  for (auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational_value() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

const Rational& FieldElement::rational_value() const {
  if (!is_rational_value()) throw InvalidArgument("rational_value: element is irrational");
  return coords_[0];
}

bool FieldElement::is_integral() const {
  for (auto& c : coords_)
    if (c.get_den() != 1) return false;
  return true;
}

namespace {
void check_same_parent(const FieldElement& a, const FieldElement& b) {
  if (!a.field()->same_field(*b.field())) throw InvalidArgument("FieldElement: field mismatch");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_parent(*this, o);
  std::vector<Rational> c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_parent(*this, o);
  std::vector<Rational> c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c = coords_;
  for (auto& x : c) x = -x;
  return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_parent(*this, o);
  RatPoly prod = rat_mul(RatPoly(coords_.begin(), coords_.end()), RatPoly(o.coords_.begin(), o.coords_.end()));
  RatPoly rem = rat_divmod(prod, rat_poly(K_->min_poly())).second;
  rem.resize(static_cast<size_t>(K_->degree()), Rational(0));
  return FieldElement(K_, std::move(rem));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw InvalidArgument("FieldElement::inverse: zero element");
  // Extended Euclid against min_poly in Q[x].
  RatPoly r0 = rat_poly(K_->min_poly());
  RatPoly r1(coords_.begin(), coords_.end());
  rat_normalize(r1);
  RatPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = rat_divmod(r0, r1);
    RatPoly s2 = rat_sub(s0, rat_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (rat_degree(r0) != 0) throw Error("FieldElement::inverse: gcd with min_poly not constant");
  for (auto& x : s0) x /= r0[0];
  s0.resize(static_cast<size_t>(K_->degree()), Rational(0));
  return FieldElement(K_, std::move(s0));
}

bool FieldElement::operator==(const FieldElement& o) const {
  return K_->same_field(*o.K_) && coords_ == o.coords_;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coords_.size(); ++i) {
    const Rational& c = coords_[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "theta";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

FieldElement operator*(const BigInt& s, const FieldElement& a) {
  std::vector<Rational> c = a.coords();
  for (auto& x : c) x *= Rational(s);
  return FieldElement(a.field(), std::move(c));
}

FieldElement operator+(const FieldElement& a, const BigInt& s) {
  std::vector<Rational> c = a.coords();
  c[0] += Rational(s);
  return FieldElement(a.field(), std::move(c));
}

FieldElement operator-(const FieldElement& a, const BigInt& s) {
  std::vector<Rational> c = a.coords();
  c[0] -= Rational(s);
  return FieldElement(a.field(), std::move(c));
}

Rational norm(const FieldElement& a) {
  // Res(min_poly, a_as_poly); min_poly monic, so this is the product of
  // a evaluated at the conjugates of theta.
  RatPoly ap(a.coords().begin(), a.coords().end());
  rat_normalize(ap);
  if (ap.empty()) return Rational(0);
  return resultant(rat_poly(a.field()->min_poly()), ap);
}

namespace {

// Multiplication-by-a matrix in the power basis, column j = coords of
// a * theta^j.
std::vector<std::vector<Rational>> mult_matrix(const FieldElement& a) {
  int d = a.field()->degree();
  std::vector<std::vector<Rational>> M(static_cast<size_t>(d),
                                       std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
  FieldElement col = a;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coords()[static_cast<size_t>(i)];
    if (j + 1 < d) col = col * FieldElement::generator(a.field());
  }
  return M;
}

// Characteristic polynomial via Faddeev-LeVerrier; d is tiny.
RatPoly char_poly_of_matrix(const std::vector<std::vector<Rational>>& A) {
  size_t d = A.size();
  std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d, Rational(0)));
  RatPoly cp(d + 1, Rational(0));
  cp[d] = 1;
  std::vector<std::vector<Rational>> AM = M;
  Rational c = 1;
  for (size_t k = 1; k <= d; ++k) {
    // M = A*M + c*I ; c = -tr(A*M)/k
    for (size_t i = 0; i < d; ++i) M[i][i] += c;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        Rational s = 0;
        for (size_t t = 0; t < d; ++t) s += A[i][t] * M[t][j];
        AM[i][j] = s;
      }
    Rational tr = 0;
    for (size_t i = 0; i < d; ++i) tr += AM[i][i];
    c = -tr / Rational(static_cast<long>(k));
    cp[d - k] = c;
    M = AM;
  }
  return cp;
}

}  // namespace

Rational trace(const FieldElement& a) {
  auto M = mult_matrix(a);
  Rational t = 0;
  for (size_t i = 0; i < M.size(); ++i) t += M[i][i];
  return t;
}

RatPoly element_min_poly(const FieldElement& a) {
  if (a.is_rational_value()) return RatPoly{-a.coords()[0], Rational(1)};
  RatPoly cp = char_poly_of_matrix(mult_matrix(a));
  RatPoly g = rat_gcd(cp, rat_derivative(cp));
  if (rat_degree(g) == 0) return cp;
  RatPoly mp = rat_divmod(cp, g).first;
  Rational lc = mp.back();
  for (auto& x : mp) x /= lc;
  return mp;
}

IntPolynomial element_min_poly_int(const FieldElement& a) {
  RatPoly mp = element_min_poly(a);
  for (auto& x : mp)
    if (x.get_den() != 1) throw InvalidArgument("element_min_poly_int: element not integral");
  std::vector<BigInt> c;
  for (auto& x : mp) c.push_back(x.get_num());
  return IntPolynomial(std::move(c));
}

std::string PrimeSlot::label(int field_degree) const {
  if (f == field_degree && e == 1) return "(" + ell.get_str() + ")";
  return "(" + ell.get_str() + ", " + local_factor.to_string("theta") + ")";
}

std::vector<PrimeSlot> primes_above(const FieldPtr& K, const BigInt& ell) {
  if (!is_prime(ell)) throw InvalidArgument("primes_above: ell not prime");
  bool warn = mpz_divisible_p(K->disc().get_mpz_t(), BigInt(ell * ell).get_mpz_t()) != 0;
  std::vector<PrimeSlot> out;
  for (auto& [fac, mult] : factor_poly_mod_p(K->min_poly(), ell)) {
    PrimeSlot s;
    s.ell = ell;
    s.local_factor = fac;
    s.e = mult;
    s.f = fac.degree();
    s.index_warning = warn;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteFieldElement reduce_element(const FieldElement& a, const PrimeSlot& slot, bool allow_index_warning) {
  if (slot.index_warning && !allow_index_warning)
    throw UnsupportedIndex("reduce_element: slot above " + slot.ell.get_str() +
                           " carries an index warning; treat manually");
  if (slot.index_warning && slot.f != 1)
    throw UnsupportedIndex("reduce_element: index-warning slot with residue degree > 1");
  std::vector<BigInt> c;
  for (auto& x : a.coords()) {
    if (mpz_divisible_p(x.get_den().get_mpz_t(), slot.ell.get_mpz_t()))
      throw NotIntegralAtPrime("reduce_element: denominator divisible by " + slot.ell.get_str());
    BigInt num = mod_reduce(x.get_num(), slot.ell);
    BigInt den = invmod(mod_reduce(x.get_den(), slot.ell), slot.ell);
    c.push_back(mod_reduce(num * den, slot.ell));
  }
  PrimeFieldPoly rep(slot.ell, std::move(c));
  return FiniteFieldElement(slot.local_factor, divmod(rep, slot.local_factor).second);
}

Automorphisms field_automorphisms(const FieldPtr& K) {
  Automorphisms out;
  int d = K->degree();
  if (d == 1) {
    out.theta_images.push_back(FieldElement::from_rational(K, 0));
    out.complete = true;
    return out;
  }
  out.theta_images.push_back(FieldElement::generator(K));
  if (d == 2) {
    // Other root of x^2 + b x + c is -b - theta.
    const BigInt& b = K->min_poly().c[1];
    FieldElement conj = FieldElement(K, {Rational(-b), Rational(-1)});
    out.theta_images.push_back(conj);
    out.complete = true;
    return out;
  }
  if (d == 3) {
    // Divide min_poly by (x - theta) over K; the quotient is quadratic
    // with discriminant D in K.  A further automorphism exists iff D is
    // a square in K; if norm(D) is not a rational square there is none.
    FieldElement theta = FieldElement::generator(K);
    // min_poly(x) = (x - theta)(x^2 + px + q) with p = theta + c2,
    // q = theta^2 + c2 theta + c1 for min_poly = x^3 + c2 x^2 + c1 x + c0.
    const BigInt& c2 = K->min_poly().c[2];
    const BigInt& c1 = K->min_poly().c[1];
    FieldElement p = theta + c2;
    FieldElement q = (theta * theta) + (c2 * (theta)) + FieldElement::from_rational(K, Rational(c1));
    FieldElement D = p * p - (BigInt(4) * q);
    Rational nD = norm(D);
    Rational root_check = nD;  // norm of a square is a rational square
    BigInt num = root_check.get_num(), den = root_check.get_den();
    bool maybe_square = num >= 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
                        mpz_perfect_square_p(den.get_mpz_t());
    out.complete = !maybe_square;  // when the norm obstruction fires, {id} is all of Aut
    return out;
  }
  out.complete = false;
  return out;
}

FieldElement apply_automorphism(const FieldElement& a, const FieldElement& theta_image) {
  const FieldPtr& K = a.field();
  if (!K->same_field(*theta_image.field()))
    throw InvalidArgument("apply_automorphism: automorphism belongs to a different field");
  FieldElement acc = FieldElement::zero(K);
  for (auto it = a.coords().rbegin(); it != a.coords().rend(); ++it) {
    acc = acc * theta_image;
    std::vector<Rational> c = acc.coords();
    c[0] += *it;
    acc = FieldElement(K, std::move(c));
  }
  return acc;
}

PrimeSlot conjugate_slot(const FieldPtr& K, const PrimeSlot& slot, const FieldElement& theta_image) {
  int d = K->degree();
  if (d == 1) return slot;
  if (d != 2) throw InvalidArgument("conjugate_slot: only rational and quadratic fields supported");
  if (theta_image == FieldElement::generator(K)) return slot;
  if (slot.f == 2) return slot;  // inert: fixed by conjugation
  // theta -> -b - theta sends the root r of the local factor to -b - r.
  const BigInt& b = K->min_poly().c[1];
  BigInt r = mod_reduce(-slot.local_factor.coeff(0), slot.ell);  // root of x + c0
  BigInt r2 = mod_reduce(-b - r, slot.ell);
  PrimeSlot out = slot;
  out.local_factor = PrimeFieldPoly(slot.ell, {mod_reduce(-r2, slot.ell), BigInt(1)});
  return out;
}

}  // namespace obstructor
