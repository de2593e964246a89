#pragma once

#include "djt/cartan/tensor.hpp"

namespace djt {

/// Element eta + 1* ^ theta of the trivialized Der-complex, eta of degree k and theta of degree k-1.
class LForm {
 public:
  LForm() = default;
  LForm(Chart chart, int degree) : plain_(chart, degree), jet_(chart, degree - 1) {}
  /// Throws DomainError unless the parts share a chart and have degrees k, k-1.
  LForm(DiffForm plain, DiffForm jet);
  /// Degree-0 element: a section of the trivial line bundle.
  static LForm section(const Chart& chart, const ScalarExpr& value);
  /// Degree-1 element alpha + r 1*.
  static LForm jet(const DiffForm& alpha, const ScalarExpr& r);
  static LForm unit_dual(const Chart& chart) { return jet(DiffForm(chart, 1), ScalarExpr(1)); }

  const Chart& chart() const { return plain_.chart(); }
  int degree() const { return plain_.degree(); }
  const DiffForm& plain() const { return plain_; }
  const DiffForm& jetpart() const { return jet_; }
  bool is_zero() const { return plain_.is_zero() && jet_.is_zero(); }

  LForm operator-() const { return LForm(-plain_, -jet_); }
  LForm& operator+=(const LForm& o);
  LForm& operator-=(const LForm& o) { return *this += -o; }
  friend LForm operator+(LForm a, const LForm& b) { return a += b; }
  friend LForm operator-(LForm a, const LForm& b) { return a -= b; }
  LForm scaled(const ScalarExpr& f) const { return LForm(plain_.scaled(f), jet_.scaled(f)); }
  LForm mapped(const std::function<ScalarExpr(const ScalarExpr&)>& f) const {
    return LForm(plain_.mapped(f), jet_.mapped(f));
  }
  friend bool operator==(const LForm&, const LForm&) = default;

 private:
  DiffForm plain_;
  DiffForm jet_;
};

/// Derivation X + f 1 of the trivial line bundle, acting on sections by X(l) + f l.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(const Chart& chart) : symbol_(chart, 1) {}
  Derivation(Multivector symbol, ScalarExpr scalar);
  static Derivation identity(const Chart& chart) { return Derivation(Multivector(chart, 1), ScalarExpr(1)); }

  const Chart& chart() const { return symbol_.chart(); }
  const Multivector& symbol() const { return symbol_; }
  const ScalarExpr& scalar() const { return scalar_; }
  bool is_zero() const { return symbol_.is_zero() && scalar_.is_zero(); }

  Derivation operator-() const { return Derivation(-symbol_, -scalar_); }
  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o) { return *this += -o; }
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  Derivation scaled(const ScalarExpr& f) const { return Derivation(symbol_.scaled(f), scalar_ * f); }
  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  Multivector symbol_;
  ScalarExpr scalar_;
};

/// Action on a section: X(l) + f l.
ScalarExpr act(const Derivation& delta, const ScalarExpr& section);
/// Commutator ([X,Y], X(g) - Y(f)).
Derivation commutator(const Derivation& a, const Derivation& b);

/// (eta1 + 1*^theta1) ^ (eta2 + 1*^theta2), using 1* ^ 1* = 0.
LForm wedge(const LForm& a, const LForm& b);
/// d_L(eta + 1*^theta) = d eta + 1* ^ (eta - d theta).
LForm dL(const LForm& w);
/// i_(X,f)(eta + 1*^theta) = i_X eta + f theta - 1* ^ i_X theta. Throws on degree 0.
LForm iota(const Derivation& delta, const LForm& w);
/// Cartan formula iota . dL + dL . iota (degree-0 input skips the second term).
LForm lieD(const Derivation& delta, const LForm& w);
/// Pairing alpha(X) + r f of a degree-1 element with a derivation.
ScalarExpr pair(const LForm& psi, const Derivation& delta);

LForm transfer(const LForm& w, const Chart& to);
Derivation transfer(const Derivation& d, const Chart& to);

}  // namespace djt
