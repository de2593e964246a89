#include "djt/jacobi/jacobi.hpp"

#include "djt/error.hpp"

namespace djt {

JacobiPair::JacobiPair(Multivector bivector, Multivector reeb) : bivector_(std::move(bivector)), reeb_(std::move(reeb)) {
  require_same_chart(bivector_.chart(), reeb_.chart(), "Jacobi pair");
  if (bivector_.degree() != 2 || reeb_.degree() != 1) {
    throw DomainError("Jacobi pair needs a bivector and a vector field");
  }
}

JacobiDefect jacobi_defect(const JacobiPair& jp) {
  const Multivector& lam = jp.bivector();
  const Multivector& e = jp.reeb();
  Multivector structure = schouten(lam, lam).scaled(ScalarExpr(Rational(1, 2))) + wedge(e, lam);
  return {std::move(structure), lie(e, lam)};
}

Multivector lambda_sharp(const Multivector& lambda, const DiffForm& alpha) { return contract(alpha, lambda); }

ScalarExpr bivector_pair(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta) {
  return contract(beta, contract(alpha, lambda))[0];
}

Derivation sharp(const JacobiPair& jp, const JetSection& psi) {
  require_same_chart(jp.chart(), psi.chart(), "sharp");
  if (psi.degree() != 1) throw DomainError("sharp needs a jet section (degree-1 LForm)");
  const DiffForm& alpha = psi.plain();
  const ScalarExpr r = psi.jetpart()[0];
  Multivector x = lambda_sharp(jp.bivector(), alpha) + jp.reeb().scaled(r);
  return Derivation(std::move(x), -contract(jp.reeb(), alpha)[0]);
}

ScalarExpr jacobi_bracket(const JacobiPair& jp, const ScalarExpr& l, const ScalarExpr& m) {
  const Chart& c = jp.chart();
  return bivector_pair(jp.bivector(), differential(c, l), differential(c, m)) + l * apply(jp.reeb(), m) -
         m * apply(jp.reeb(), l);
}

JetSection jet_of(const Chart& chart, const ScalarExpr& l) { return dL(LForm::section(chart, l)); }

Derivation hamiltonian_derivation(const JacobiPair& jp, const ScalarExpr& l) {
  return sharp(jp, jet_of(jp.chart(), l));
}

Mat<ScalarExpr> sharp_matrix(const JacobiPair& jp) {
  const Chart& c = jp.chart();
  const auto n = static_cast<Eigen::Index>(c.dim());
  Mat<ScalarExpr> m(n + 1, n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    JetSection e = (j < n) ? LForm::jet(DiffForm::basis(c, {static_cast<std::size_t>(j)}), ScalarExpr())
                           : LForm::unit_dual(c);
    Derivation d = sharp(jp, e);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = d.symbol()[IndexSet{1} << i];
    m(n, j) = d.scalar();
  }
  return m;
}

}  // namespace djt
