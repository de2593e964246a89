#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "djt/expr/chart.hpp"
#include "djt/expr/polynomial.hpp"
#include "djt/expr/rational.hpp"

namespace djt {

/// Exact rational function over a chart's symbols, always in canonical form.
///
/// Canonical form: gcd(numerator, denominator) = 1 and the denominator's leading
/// coefficient (graded lex) is 1. Two expressions are equal iff their canonical
/// forms are identical, so operator== decides equality of rational functions.
class ScalarExpr {
 public:
  ScalarExpr() : den_(1) {}
  ScalarExpr(int c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarExpr(long c) : num_(Rational(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarExpr(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarExpr(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Normalizes num/den. Throws DomainError if `den` is zero.
  ScalarExpr(Polynomial num, Polynomial den);

  static ScalarExpr symbol(std::size_t slot) { return ScalarExpr(Polynomial::variable(slot)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool depends_on(std::size_t slot) const { return num_.depends_on(slot) || den_.depends_on(slot); }

  ScalarExpr operator-() const;
  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const ScalarExpr& o);
  /// Throws DomainError when `o` is identically zero.
  ScalarExpr& operator/=(const ScalarExpr& o);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b) { return a *= b; }
  friend ScalarExpr operator/(ScalarExpr a, const ScalarExpr& b) { return a /= b; }
  ScalarExpr inverse() const;
  ScalarExpr pow(unsigned e) const;

  /// Partial derivative along expression slot `slot` (quotient rule).
  ScalarExpr partial(std::size_t slot) const;
  /// Exact value; throws DomainError at a zero of the denominator.
  Rational evaluate(std::span<const Rational> values) const;
  /// Substitutes the valued symbols; throws DomainError if the denominator vanishes identically.
  ScalarExpr substitute(std::span<const std::optional<Rational>> values) const;
  /// Substitutes an expression for every symbol (`images[s]` replaces slot s).
  ScalarExpr compose(std::span<const ScalarExpr> images) const;
  ScalarExpr remap(std::span<const int> slot_map) const;

  friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

inline bool is_zero(const ScalarExpr& e) { return e.is_zero(); }

/// Canonical text in the expression grammar.
std::string to_string(const ScalarExpr& e, const Chart& chart);
std::string to_string(const Polynomial& p, const Chart& chart);

/// Parses the expression grammar over the chart's symbols.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' integer)?
///   primary := number | identifier | '(' expr ')'
///   number  := digits ('.' digits)?
///
/// Throws ParseError (with byte offset) on syntax errors, unknown symbols and
/// division by an expression that is identically zero.
ScalarExpr parse_expr(std::string_view src, const Chart& chart);

}  // namespace djt

namespace Eigen {
template <>
struct NumTraits<djt::ScalarExpr> : GenericNumTraits<djt::ScalarExpr> {
  using Real = djt::ScalarExpr;
  using NonInteger = djt::ScalarExpr;
  using Literal = djt::ScalarExpr;
  using Nested = djt::ScalarExpr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
