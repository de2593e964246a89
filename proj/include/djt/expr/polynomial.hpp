#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "djt/expr/rational.hpp"

namespace djt {

/// Maximum number of symbols (coordinates plus formal parameters) in one chart.
inline constexpr std::size_t kMaxSymbols = 16;

/// Exponent vector over at most kMaxSymbols symbols, ordered graded-lexicographically.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::size_t slot, unsigned power = 1);

  unsigned exponent(std::size_t slot) const { return exp_[slot]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Throws DomainError when an exponent would exceed 255.
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Precondition: divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial with_exponent(std::size_t slot, unsigned e) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded lexicographic: total degree first, then the earlier symbol dominates.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    return a.exp_ <=> b.exp_;
  }

 private:
  std::array<std::uint8_t, kMaxSymbols> exp_{};
  std::uint16_t degree_ = 0;
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing monomial with nonzero coefficients, so
/// equal polynomials have identical representations.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(std::size_t slot);
  static Polynomial monomial(const Monomial& m, const Rational& c = Rational(1));
  /// Builds from arbitrary terms: sorts, merges duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one(); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree_in(std::size_t slot) const;
  bool depends_on(std::size_t slot) const { return degree_in(slot) > 0; }
  std::uint32_t symbol_mask() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial shifted(const Monomial& m) const;

  Polynomial derivative(std::size_t slot) const;
  /// Full evaluation; `values` covers every symbol that occurs.
  Rational evaluate(std::span<const Rational> values) const;
  /// Substitutes the symbols that have a value and keeps the rest.
  Polynomial substitute(std::span<const std::optional<Rational>> values) const;
  /// Moves every symbol `s` to `slot_map[s]`; symbols absent from the map must not occur.
  Polynomial remap(std::span<const int> slot_map) const;

  /// Coefficients as a polynomial in one symbol: degree -> coefficient free of that symbol.
  std::map<unsigned, Polynomial> coefficients_in(std::size_t slot) const;

  /// Exact quotient; throws DomainError when `d` does not divide.
  Polynomial divide_exact(const Polynomial& d) const;
  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q[x]; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace djt
