#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "djt/expr/chart.hpp"
#include "djt/expr/scalar_expr.hpp"

namespace djt {

/// Set of coordinate indices, bit i standing for coordinate i.
using IndexSet = std::uint32_t;

std::vector<std::size_t> indices_of(IndexSet s);
IndexSet index_set(std::initializer_list<std::size_t> indices);

enum class Variance { Contravariant, Covariant };

/// Totally antisymmetric tensor field of fixed degree on a chart.
///
/// Coefficients are stored against strictly increasing index sets, absent meaning
/// zero. Degrees outside [0, dim] are allowed and denote the zero tensor, which
/// keeps degree bookkeeping (e.g. the jet part of a degree-0 LForm) uniform.
template <Variance V>
class Tensor {
 public:
  using Map = std::map<IndexSet, ScalarExpr>;

  Tensor() = default;
  Tensor(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {}
  /// Degree-0 tensor with the given value.
  static Tensor scalar(const Chart& chart, const ScalarExpr& value);
  /// Coordinate basis element for `indices`; throws on repeated or out-of-range indices.
  static Tensor basis(const Chart& chart, std::initializer_list<std::size_t> indices);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const Map& components() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  ScalarExpr operator[](IndexSet s) const;
  /// Component for an index list in any order, antisymmetry sign applied.
  ScalarExpr at(const std::vector<std::size_t>& indices) const;
  void set(IndexSet s, const ScalarExpr& value);
  void add(IndexSet s, const ScalarExpr& value);
  /// Adds `value` to the component of an index list in any order (sign-corrected).
  void add(const std::vector<std::size_t>& indices, const ScalarExpr& value);

  Tensor operator-() const;
  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const ScalarExpr& f, const Tensor& t) { return t.scaled(f); }
  Tensor scaled(const ScalarExpr& f) const;
  /// Applies `f` to every coefficient, dropping zero results.
  Tensor mapped(const std::function<ScalarExpr(const ScalarExpr&)>& f) const;
  /// Partial derivative of every coefficient along expression slot `slot`.
  Tensor partial(std::size_t slot) const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Chart chart_;
  int degree_ = 0;
  Map coeffs_;
};

using Multivector = Tensor<Variance::Contravariant>;
using DiffForm = Tensor<Variance::Covariant>;

extern template class Tensor<Variance::Contravariant>;
extern template class Tensor<Variance::Covariant>;

/// Sign of sorting the concatenation of the increasing lists of `a` then `b`.
int merge_sign(IndexSet a, IndexSet b);

Multivector wedge(const Multivector& a, const Multivector& b);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// Vector field with the given coefficients (one per coordinate).
Multivector vector_field(const Chart& chart, const std::vector<ScalarExpr>& coeffs);
/// 1-form with the given coefficients.
DiffForm one_form(const Chart& chart, const std::vector<ScalarExpr>& coeffs);
/// Exact differential of a function.
DiffForm differential(const Chart& chart, const ScalarExpr& f);

/// de Rham differential.
DiffForm d(const DiffForm& w);

/// Contraction in the first slot: sum over m of (-1)^(m-1) a_{i_m} P^I at I minus i_m.
Multivector contract(const DiffForm& a, const Multivector& p);
DiffForm contract(const Multivector& x, const DiffForm& w);

/// Schouten-Nijenhuis bracket; [X,Y] is the Lie bracket and [X,f] = X(f).
Multivector schouten(const Multivector& p, const Multivector& q);
/// Lie derivative of a multivector along a vector field.
Multivector lie(const Multivector& x, const Multivector& p);
/// Vector field applied to a function.
ScalarExpr apply(const Multivector& x, const ScalarExpr& f);

/// Evaluates every coefficient; throws DomainError at a pole.
std::map<IndexSet, Rational> evaluate(const Multivector& t, std::span<const Rational> values);
std::map<IndexSet, Rational> evaluate(const DiffForm& t, std::span<const Rational> values);

/// Re-expresses a tensor on another chart by matching symbol names.
///
/// Throws DomainError if a component index or a coefficient symbol has no
/// counterpart in `to` (e.g. coefficient leakage across product factors).
Multivector transfer(const Multivector& t, const Chart& to);
DiffForm transfer(const DiffForm& t, const Chart& to);

/// Pushforward along the coordinate change y = phi(x) with inverse x = psi(y).
///
/// `phi[a]` expresses target coordinate a in source slots; `psi[i]` expresses source
/// slot i (coordinates, then parameters) in target slots.
Multivector pushforward(const Multivector& t, const Chart& target, const std::vector<ScalarExpr>& phi,
                        const std::vector<ScalarExpr>& psi);

}  // namespace djt
