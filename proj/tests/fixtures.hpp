#pragma once

#include <string>
#include <vector>

#include "djt/moser/moser.hpp"
#include "djt/split/split.hpp"

namespace djt::testing {

struct NamedPair {
  std::string name;
  JacobiPair pair;
};

/// (d/dq1 ^ d/dp1 + d/dq2 ^ d/dp2, 0) on R4(q1,p1,q2,p2); N = {q1 = p1 = 0}.
inline JacobiPair symplectic_r4() {
  Chart c("R4", {"q1", "p1", "q2", "p2"});
  return JacobiPair(Multivector::basis(c, {0, 1}) + Multivector::basis(c, {2, 3}), Multivector(c, 1));
}

/// Canonical contact pair on R3(u,q,p).
inline JacobiPair contact_r3() { return canonical_contact_pair(1); }

/// Contact pair with the Reeb field tilted by q d/dq; fails the Jacobi conditions.
inline JacobiPair perturbed_contact_r3() {
  JacobiPair jp = contact_r3();
  const Chart& c = jp.chart();
  return JacobiPair(jp.bivector(), jp.reeb() + Multivector::basis(c, {1}).scaled(ScalarExpr::symbol(1)));
}

/// Base pair (d/da ^ d/db, d/da) on N(a,b).
inline JacobiPair cosymplectic_base() {
  Chart n("N", {"a", "b"});
  return JacobiPair(Multivector::basis(n, {0, 1}), Multivector::basis(n, {0}));
}

/// Assembled cosymplectic model on (q,p,a,b); N = {q = p = 0}.
inline JacobiPair cosymplectic_model() { return assemble_cosymplectic(cosymplectic_base(), 1); }

/// Assembled contact model with zero transversal data on (u,q,p,y); N = {u = q = p = 0}.
inline JacobiPair contact_model() {
  Chart n("N", {"y"});
  return assemble_contact(HomogeneousPoisson(Multivector(n, 2), Multivector(n, 1)), 1);
}

inline std::vector<NamedPair> omni_fixtures() {
  return {
      {"zero_r3", JacobiPair::zero(Chart("R3", {"u", "q", "p"}))},
      {"contact_r3", contact_r3()},
      {"perturbed_contact_r3", perturbed_contact_r3()},
      {"symplectic_r4", symplectic_r4()},
      {"cosymplectic_model", cosymplectic_model()},
      {"contact_model", contact_model()},
  };
}

/// (d/dq ^ d/dp, 0) on R2(q,p) with sigma_t = c t d_L(q^2 dp / 2) = c t (q dq ^ dp + 1* ^ q^2 dp / 2).
/// J_t-sharp = J-sharp / (1 - c t q); singular at t = 1/(c q).
inline DeformationFamily moser_r2(const Rational& c) {
  Chart r2("R2", {"q", "p"});
  JacobiPair base(Multivector::basis(r2, {0, 1}), Multivector(r2, 1));
  Chart tc = DeformationFamily::time_chart(r2);
  ScalarExpr q = ScalarExpr::symbol(0);
  LForm beta = LForm::jet(DiffForm::basis(tc, {1}).scaled(q * q * ScalarExpr(Rational(1, 2))), ScalarExpr());
  return DeformationFamily(base, dL(beta).scaled(ScalarExpr::symbol(2) * ScalarExpr(c)));
}

}  // namespace djt::testing
