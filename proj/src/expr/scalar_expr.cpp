#include "djt/expr/scalar_expr.hpp"

#include "djt/error.hpp"

namespace djt {

namespace {

Monomial monomial_content(const Polynomial& p) {
  Monomial g = p.terms().front().mono;
  for (const auto& t : p.terms()) g = Monomial::gcd(g, t.mono);
  return g;
}

// Divides p by a monomial that divides each of its terms.
Polynomial strip_monomial(const Polynomial& p, const Monomial& m) {
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({m.quotient_of(t.mono), t.coeff});
  return Polynomial::from_terms(std::move(out));
}

}  // namespace

ScalarExpr::ScalarExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("division by zero expression");
  normalize();
}

void ScalarExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ = num_.scaled(Rational(1) / den_.constant_value());
      den_ = Polynomial(1);
    }
    return;
  }
  if (den_.is_monomial()) {
    Monomial g = Monomial::gcd(monomial_content(num_), den_.leading().mono);
    if (!g.is_one()) {
      num_ = strip_monomial(num_, g);
      den_ = strip_monomial(den_, g);
    }
  } else {
    Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.divide_exact(g);
      den_ = den_.divide_exact(g);
    }
  }
  Rational lc = den_.leading().coeff;
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;  // gcd(num + c*den, den) = gcd(num, den) = 1
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  Polynomial b = den_.divide_exact(g);
  Polynomial d = o.den_.divide_exact(g);
  num_ = num_ * d + o.num_ * b;
  den_ = den_ * d;
  normalize();
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) { return *this += -o; }

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
  if (is_zero() || o.is_zero()) return *this = ScalarExpr();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  if (o.is_constant()) {
    num_ = num_.scaled(o.num_.constant_value());
    return *this;
  }
  if (is_constant()) {
    Rational c = num_.constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  // Cross-cancel so the product of canonical factors needs no further gcd.
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    Polynomial g = gcd(a, d);
    if (!g.is_one()) { a = a.divide_exact(g); d = d.divide_exact(g); }
  }
  if (!b.is_one()) {
    Polynomial g = gcd(c, b);
    if (!g.is_one()) { c = c.divide_exact(g); b = b.divide_exact(g); }
  }
  num_ = a * c;
  den_ = b * d;
  Rational lc = den_.leading().coeff;
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  return *this;
}

ScalarExpr ScalarExpr::inverse() const {
  if (is_zero()) throw DomainError("division by zero expression");
  ScalarExpr r;
  r.num_ = den_;
  r.den_ = num_;
  Rational lc = r.den_.leading().coeff;
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

ScalarExpr& ScalarExpr::operator/=(const ScalarExpr& o) { return *this *= o.inverse(); }

ScalarExpr ScalarExpr::pow(unsigned e) const {
  ScalarExpr r(1);
  ScalarExpr b = *this;
  while (e) {
    if (e & 1U) r *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return r;
}

ScalarExpr ScalarExpr::partial(std::size_t slot) const {
  if (den_.is_one()) return ScalarExpr(num_.derivative(slot));
  Polynomial dn = num_.derivative(slot);
  Polynomial dd = den_.derivative(slot);
  if (dd.is_zero()) return ScalarExpr(dn, den_);
  return ScalarExpr(dn * den_ - num_ * dd, den_ * den_);
}

Rational ScalarExpr::evaluate(std::span<const Rational> values) const {
  Rational d = den_.evaluate(values);
  if (d.is_zero()) throw DomainError("expression has a pole at the evaluation point");
  return num_.evaluate(values) / d;
}

ScalarExpr ScalarExpr::substitute(std::span<const std::optional<Rational>> values) const {
  Polynomial d = den_.substitute(values);
  if (d.is_zero()) throw DomainError("expression has a pole on the substituted locus");
  return ScalarExpr(num_.substitute(values), std::move(d));
}

namespace {

ScalarExpr compose_poly(const Polynomial& p, std::span<const ScalarExpr> images,
                        std::vector<std::vector<ScalarExpr>>& powers) {
  ScalarExpr acc;
  for (const auto& t : p.terms()) {
    ScalarExpr term(t.coeff);
    for (std::size_t s = 0; s < kMaxSymbols; ++s) {
      unsigned e = t.mono.exponent(s);
      if (e == 0) continue;
      if (s >= images.size()) throw DomainError("compose: no image for symbol slot " + std::to_string(s));
      auto& cache = powers[s];
      if (cache.empty()) cache.push_back(ScalarExpr(1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[s]);
      term *= cache[e];
    }
    acc += term;
  }
  return acc;
}

}  // namespace

ScalarExpr ScalarExpr::compose(std::span<const ScalarExpr> images) const {
  std::vector<std::vector<ScalarExpr>> powers(kMaxSymbols);
  ScalarExpr n = compose_poly(num_, images, powers);
  if (den_.is_one()) return n;
  ScalarExpr d = compose_poly(den_, images, powers);
  if (d.is_zero()) throw DomainError("compose: denominator vanishes identically");
  return n / d;
}

ScalarExpr ScalarExpr::remap(std::span<const int> slot_map) const {
  ScalarExpr r;
  r.num_ = num_.remap(slot_map);
  r.den_ = den_.remap(slot_map);
  // Remapping may reorder terms, so the leading coefficient can change.
  Rational lc = r.den_.leading().coeff;
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

}  // namespace djt
