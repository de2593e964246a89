#include "djt/expr/polynomial.hpp"

#include <algorithm>
#include <bit>

#include "djt/error.hpp"

namespace djt {

Monomial Monomial::variable(std::size_t slot, unsigned power) {
  if (slot >= kMaxSymbols) throw DomainError("symbol slot out of range");
  if (power > 255) throw DomainError("exponent overflow");
  Monomial m;
  m.exp_[slot] = static_cast<std::uint8_t>(power);
  m.degree_ = static_cast<std::uint16_t>(power);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    unsigned e = unsigned{exp_[i]} + o.exp_[i];
    if (e > 255) throw DomainError("exponent overflow");
    r.exp_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (exp_[i] > o.exp_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) r.exp_[i] = static_cast<std::uint8_t>(o.exp_[i] - exp_[i]);
  r.degree_ = static_cast<std::uint16_t>(o.degree_ - degree_);
  return r;
}

Monomial Monomial::with_exponent(std::size_t slot, unsigned e) const {
  Monomial r = *this;
  r.degree_ = static_cast<std::uint16_t>(r.degree_ - r.exp_[slot] + e);
  r.exp_[slot] = static_cast<std::uint8_t>(e);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
    d += r.exp_[i];
  }
  r.degree_ = static_cast<std::uint16_t>(d);
  return r;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(std::size_t slot) { return monomial(Monomial::variable(slot)); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

unsigned Polynomial::degree_in(std::size_t slot) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(slot));
  return d;
}

std::uint32_t Polynomial::symbol_mask() const {
  std::uint32_t mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (t.mono.exponent(i) != 0) mask |= (1u << i);
    }
  }
  return mask;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a, const std::vector<Polynomial::Term>& b,
                                          bool negate_b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(negate_b ? Polynomial::Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff);
  if (b.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff);
  std::vector<Polynomial::Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  }
  return Polynomial::from_terms(std::move(prod));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c.is_zero()) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::shifted(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Polynomial Polynomial::derivative(std::size_t slot) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(slot);
    if (e == 0) continue;
    out.push_back({t.mono.with_exponent(slot, e - 1), t.coeff * Rational(static_cast<long>(e))});
  }
  // Differentiation can reorder monomials of equal degree, so re-sort.
  return from_terms(std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> values) const {
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      unsigned e = t.mono.exponent(i);
      if (e == 0) continue;
      if (i >= values.size()) throw DomainError("evaluation point misses a symbol");
      v *= pow(values[i], e);
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::span<const std::optional<Rational>> values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    Rational c = t.coeff;
    for (std::size_t i = 0; i < values.size() && i < kMaxSymbols; ++i) {
      unsigned e = m.exponent(i);
      if (e == 0 || !values[i]) continue;
      c *= pow(*values[i], e);
      m = m.with_exponent(i, 0);
    }
    out.push_back({m, std::move(c)});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::remap(std::span<const int> slot_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      unsigned e = t.mono.exponent(i);
      if (e == 0) continue;
      if (i >= slot_map.size() || slot_map[i] < 0) throw DomainError("symbol has no image under remap");
      m = m * Monomial::variable(static_cast<std::size_t>(slot_map[i]), e);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(out));
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(std::size_t slot) const {
  std::map<unsigned, std::vector<Term>> buckets;
  for (const auto& t : terms_) {
    buckets[t.mono.exponent(slot)].push_back({t.mono.with_exponent(slot, 0), t.coeff});
  }
  std::map<unsigned, Polynomial> out;
  for (auto& [deg, terms] : buckets) out.emplace(deg, from_terms(std::move(terms)));
  return out;
}

Polynomial Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (d.is_constant()) return scaled(Rational(1) / d.constant_value());
  if (d.is_monomial()) {
    Polynomial q;
    q.terms_.reserve(terms_.size());
    const auto& lt = d.terms_[0];
    Rational inv = Rational(1) / lt.coeff;
    for (const auto& t : terms_) {
      if (!lt.mono.divides(t.mono)) throw DomainError("inexact polynomial division");
      q.terms_.push_back({lt.mono.quotient_of(t.mono), t.coeff * inv});
    }
    return q;  // dividing by a monomial preserves the order
  }
  Polynomial rem = *this;
  std::vector<Term> quot;
  const auto& lt = d.terms_[0];
  Rational inv = Rational(1) / lt.coeff;
  while (!rem.is_zero()) {
    const auto& r0 = rem.terms_[0];
    if (!lt.mono.divides(r0.mono)) throw DomainError("inexact polynomial division");
    Term q{lt.mono.quotient_of(r0.mono), r0.coeff * inv};
    rem -= d.shifted(q.mono).scaled(q.coeff);
    quot.push_back(std::move(q));
  }
  return from_terms(std::move(quot));
}

Polynomial Polynomial::monic() const {
  if (is_zero() || terms_[0].coeff.is_one()) return *this;
  return scaled(Rational(1) / terms_[0].coeff);
}

// ---------------------------------------------------------------------------
// Multivariate gcd: recursive content / primitive-part with a primitive
// pseudo-remainder sequence in one chosen symbol.

namespace {

Polynomial gcd_with_monomial(const Monomial& m, const Polynomial& p) {
  Monomial g = m;
  for (const auto& t : p.terms()) {
    g = Monomial::gcd(g, t.mono);
    if (g.is_one()) break;
  }
  return Polynomial::monomial(g);
}

Polynomial content_in(const Polynomial& p, std::size_t slot) {
  Polynomial c;
  for (const auto& [deg, coeff] : p.coefficients_in(slot)) {
    c = gcd(c, coeff);
    if (c.is_one()) break;
  }
  return c;
}

// Scales to integer coefficients with gcd 1, keeping pseudo-remainders small.
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.denominator().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.numerator().get_mpz_t());
  }
  return p.scaled(Rational(mpq_class(den, num)));
}

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t slot) {
  unsigned db = b.degree_in(slot);
  auto bcoeffs = b.coefficients_in(slot);
  const Polynomial& lcb = bcoeffs.rbegin()->second;
  while (!a.is_zero()) {
    unsigned da = a.degree_in(slot);
    if (da < db) break;
    Polynomial lca = a.coefficients_in(slot).rbegin()->second;
    a = a * lcb - (lca * b).shifted(Monomial::variable(slot, da - db));
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return gcd_with_monomial(a.leading().mono, b);
  if (b.is_monomial()) return gcd_with_monomial(b.leading().mono, a);
  if (a == b) return a.monic();

  std::uint32_t ma = a.symbol_mask();
  std::uint32_t mb = b.symbol_mask();
  if ((ma & mb) == 0) return Polynomial(1);
  // A symbol present in only one argument cannot occur in the gcd.
  if (std::uint32_t only_a = ma & ~mb) return gcd(content_in(a, std::countr_zero(only_a)), b);
  if (std::uint32_t only_b = mb & ~ma) return gcd(a, content_in(b, std::countr_zero(only_b)));

  // Main symbol: the one of smallest combined degree keeps the PRS short.
  std::size_t slot = 0;
  unsigned best = ~0u;
  for (std::uint32_t m = ma; m; m &= m - 1) {
    std::size_t s = std::countr_zero(m);
    unsigned d = a.degree_in(s) + b.degree_in(s);
    if (d < best) best = d, slot = s;
  }

  Polynomial ca = content_in(a, slot);
  Polynomial cb = content_in(b, slot);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = integer_primitive(a.divide_exact(ca));
  Polynomial pb = integer_primitive(b.divide_exact(cb));
  if (pa.degree_in(slot) < pb.degree_in(slot)) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, slot);
    if (r.is_zero()) break;
    if (r.degree_in(slot) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = integer_primitive(r.divide_exact(content_in(r, slot)));
  }
  return (c * pb).monic();
}

}  // namespace djt
