#include "djt/homog/homog.hpp"

#include "djt/error.hpp"

namespace djt {

HomogeneousPoisson::HomogeneousPoisson(Multivector bivector, Multivector homogeneity)
    : bivector_(std::move(bivector)), homogeneity_(std::move(homogeneity)) {
  require_same_chart(bivector_.chart(), homogeneity_.chart(), "homogeneous Poisson structure");
  if (bivector_.degree() != 2 || homogeneity_.degree() != 1) {
    throw DomainError("homogeneous Poisson structure needs a bivector and a vector field");
  }
}

HomogeneityDefect homogeneity_defect(const HomogeneousPoisson& hp) {
  const Multivector& pi = hp.bivector();
  return {schouten(pi, pi), lie(hp.homogeneity(), pi) + pi};
}

HomogeneousPoisson homogenize(const JacobiPair& jp, const std::string& uvar) {
  const Chart& base = jp.chart();
  if (base.slot_of(uvar)) throw DomainError("homogenize: variable '" + uvar + "' already used by chart " + base.name());
  std::vector<std::string> coords{uvar};
  coords.insert(coords.end(), base.coordinates().begin(), base.coordinates().end());
  Chart ext(base.name() + "_" + uvar, coords, base.parameters());
  Multivector du = Multivector::basis(ext, {0});
  ScalarExpr u = ScalarExpr::symbol(0);
  Multivector pi = transfer(jp.bivector(), ext).scaled(u.inverse()) + wedge(du, transfer(jp.reeb(), ext));
  return HomogeneousPoisson(std::move(pi), du.scaled(u));
}

JacobiPair dehomogenize(const HomogeneousPoisson& hp, const std::string& uvar) {
  const Chart& ext = hp.chart();
  auto slot = ext.coordinate_index(uvar);
  if (!slot) throw DomainError("dehomogenize: '" + uvar + "' is not a coordinate of chart " + ext.name());
  ScalarExpr u = ScalarExpr::symbol(*slot);
  Multivector du = Multivector::basis(ext, {*slot});
  if (!(hp.homogeneity() == du.scaled(u))) {
    throw DomainError("dehomogenize: homogeneity field must be " + uvar + " d/d" + uvar + " in these coordinates");
  }
  const Multivector& pi = hp.bivector();
  if (!(lie(hp.homogeneity(), pi) + pi).is_zero()) {
    throw DomainError("dehomogenize: Lie_Z pi != -pi, bivector is not homogeneous of degree -1");
  }
  Multivector e = contract(DiffForm::basis(ext, {*slot}), pi);
  Multivector lam = (pi - wedge(du, e)).scaled(u);

  std::vector<std::string> coords;
  for (std::size_t i = 0; i < ext.dim(); ++i) {
    if (i != *slot) coords.push_back(ext.symbol(i));
  }
  std::string name = ext.name();
  std::string suffix = "_" + uvar;
  if (name.size() > suffix.size() && name.ends_with(suffix)) name.resize(name.size() - suffix.size());
  Chart base(name, coords, ext.parameters());
  try {
    return JacobiPair(transfer(lam, base), transfer(e, base));
  } catch (const DomainError& err) {
    throw DomainError(std::string("dehomogenize: extracted pair is not free of ") + uvar + " (" + err.what() + ")");
  }
}

EquivalenceReport equivalence_check(const JacobiPair& jp, const std::string& uvar) {
  EquivalenceReport r;
  r.jacobi = jacobi_defect(jp);
  r.homogenized = homogenize(jp, uvar);
  r.homogeneous = homogeneity_defect(r.homogenized);
  return r;
}

}  // namespace djt
