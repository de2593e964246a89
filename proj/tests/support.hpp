#pragma once

#include <bit>
#include <random>
#include <string>
#include <vector>

#include "djt/cartan/lform.hpp"
#include "djt/expr/scalar_expr.hpp"

namespace djt::testing {

/// Seeded generator for random exact test data.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational small_rational() {
    int den = integer(1, 3);
    return Rational(integer(-4, 4), den);
  }

  Rational nonzero_rational() {
    for (;;) {
      Rational r = small_rational();
      if (!r.is_zero()) return r;
    }
  }

  /// Random polynomial in the given slots with total degree <= max_degree.
  Polynomial polynomial(std::size_t slots, unsigned max_degree, int terms) {
    std::vector<Polynomial::Term> out;
    for (int i = 0; i < terms; ++i) {
      Monomial m;
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
      for (unsigned d = 0; d < budget; ++d) {
        std::size_t s = static_cast<std::size_t>(integer(0, static_cast<int>(slots) - 1));
        m = m * Monomial::variable(s);
      }
      out.push_back({m, small_rational()});
    }
    return Polynomial::from_terms(std::move(out));
  }

  ScalarExpr poly_expr(std::size_t slots, unsigned max_degree, int terms = 3) {
    return ScalarExpr(polynomial(slots, max_degree, terms));
  }

  /// Random rational function with a nonzero denominator.
  ScalarExpr rational_expr(std::size_t slots, unsigned max_degree) {
    Polynomial den;
    while (den.is_zero()) den = polynomial(slots, max_degree, 2) + Polynomial(integer(1, 3));
    return ScalarExpr(polynomial(slots, max_degree, 3), den);
  }

  /// Random tensor of the given degree with polynomial coefficients in the chart's coordinates.
  template <Variance V>
  Tensor<V> tensor(const Chart& chart, int degree, unsigned coeff_degree = 2, double density = 0.6) {
    Tensor<V> t(chart, degree);
    if (degree < 0 || degree > static_cast<int>(chart.dim())) return t;
    for (IndexSet s = 0; s < (IndexSet{1} << chart.dim()); ++s) {
      if (std::popcount(s) != degree || !coin(density)) continue;
      t.set(s, poly_expr(chart.dim(), coeff_degree, 2));
    }
    return t;
  }
  Multivector multivector(const Chart& c, int degree, unsigned coeff_degree = 2) {
    return tensor<Variance::Contravariant>(c, degree, coeff_degree);
  }
  DiffForm form(const Chart& c, int degree, unsigned coeff_degree = 2) {
    return tensor<Variance::Covariant>(c, degree, coeff_degree);
  }
  LForm lform(const Chart& c, int degree, unsigned coeff_degree = 2) {
    return LForm(form(c, degree, coeff_degree), form(c, degree - 1, coeff_degree));
  }
  Derivation derivation(const Chart& c, unsigned coeff_degree = 2) {
    return Derivation(multivector(c, 1, coeff_degree), poly_expr(c.dim(), coeff_degree, 2));
  }
  /// Chart with n coordinates named x0..x(n-1).
  static Chart chart(std::size_t n) {
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
    return Chart("R" + std::to_string(n), vars);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace djt::testing

#include "djt/jacobi/jacobi.hpp"

namespace djt::testing {

/// Conformal change {l, m}' = a^{-1} {a l, a m}: (Lambda, E) -> (a Lambda, a E + Lambda-sharp(da)).
inline JacobiPair conformal(const JacobiPair& jp, const ScalarExpr& a) {
  const Chart& c = jp.chart();
  return JacobiPair(jp.bivector().scaled(a), jp.reeb().scaled(a) + lambda_sharp(jp.bivector(), differential(c, a)));
}

/// Jacobi pairs of known provenance on a chart of dimension >= 3 (coordinates x0, x1, x2, ...).
inline JacobiPair known_jacobi_pair(Gen& g, const Chart& c) {
  Multivector b0 = Multivector::basis(c, {0}), b1 = Multivector::basis(c, {1}), b2 = Multivector::basis(c, {2});
  JacobiPair base;
  switch (g.integer(0, 3)) {
    case 0:  // any function times a coordinate bivector, E = 0 (Poisson)
      base = JacobiPair(wedge(b0, b1).scaled(g.poly_expr(c.dim(), 2)), Multivector(c, 1));
      break;
    case 1:  // Lambda = 0 with an arbitrary vector field
      base = JacobiPair(Multivector(c, 2), g.multivector(c, 1));
      break;
    case 2:  // contact structure on (x0, x1, x2): ((x2 d0 + d1) ^ d2, d0)
      base = JacobiPair(wedge(b0.scaled(ScalarExpr::symbol(2)) + b1, b2), b0);
      break;
    default:  // constant bivector
      base = JacobiPair(wedge(b1, b2).scaled(ScalarExpr(g.integer(1, 3))), Multivector(c, 1));
      break;
  }
  if (g.coin()) base = conformal(base, g.poly_expr(c.dim(), 1) + ScalarExpr(g.integer(1, 3)));
  return base;
}

}  // namespace djt::testing
