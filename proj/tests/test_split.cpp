#include <doctest.h>

#include "djt/error.hpp"
#include "djt/split/split.hpp"
#include "fixtures.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace djt;
using namespace djt::testing;

namespace {

Point origin(const Chart& c) {
  Point p;
  for (const auto& v : c.coordinates()) p[v] = Rational(0);
  return p;
}

ScalarExpr s(std::size_t i) { return ScalarExpr::symbol(i); }

}  // namespace

TEST_CASE("split kinds and models") {
  CHECK(fiber_variables(SplitKind::Cosymplectic, 1) == std::vector<std::string>{"q", "p"});
  CHECK(fiber_variables(SplitKind::Contact, 2) == std::vector<std::string>{"u", "q1", "q2", "p1", "p2"});
  CHECK_THROWS_AS(fiber_variables(SplitKind::Contact, 0), DomainError);
  for (auto k : {SplitKind::Cosymplectic, SplitKind::Contact, SplitKind::HomogeneousPoissonCaseI,
                 SplitKind::HomogeneousPoissonCaseII}) {
    CHECK(parse_split_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_split_kind("symplectic"), DomainError);

  SplitModel m = SplitModel::make(SplitKind::Contact, 3, {"y"});
  CHECK(m.k() == 1);
  CHECK(m.product_chart().coordinates() == std::vector<std::string>{"u", "q", "p", "y"});
  CHECK_THROWS_AS(SplitModel::make(SplitKind::Contact, 4, {"y"}), DomainError);
  CHECK_THROWS_AS(SplitModel::make(SplitKind::Cosymplectic, 3, {"y"}), DomainError);
  CHECK_THROWS_AS(SplitModel::make(SplitKind::Cosymplectic, 2, {"q"}), DomainError);
  CHECK_THROWS_AS(SplitModel::make(SplitKind::Cosymplectic, 0, {"y"}), DomainError);
}

TEST_CASE("canonical cosymplectic pair") {
  CosymplecticFactor f = canonical_cosymplectic_pair(1);
  const Chart& c = f.pair.chart();
  CHECK(f.pair.bivector() == Multivector::basis(c, {1, 0}));
  CHECK(f.pair.reeb().is_zero());
  CHECK(f.z_can == Multivector::basis(c, {1}).scaled(s(1)));
  CHECK(jacobi_defect(f.pair).is_zero());
  for (int k = 1; k <= 3; ++k) {
    CosymplecticFactor fk = canonical_cosymplectic_pair(k);
    CHECK(lie(fk.z_can, fk.pair.bivector()) == -fk.pair.bivector());
  }
}

TEST_CASE("canonical contact pair search") {
  ContactSearch k1 = search_contact_candidates(1);
  CHECK(k1.candidates.size() == 4);
  CHECK(k1.valid_passes == 1);
  // The two d/dq readings are degenerate (E ^ Lambda = 0) and pass the defect test vacuously.
  CHECK(k1.defect_only_passes == 3);
  for (const auto& c : k1.candidates) {
    if (c.valid()) CHECK(c.label == "+(p du + dq) ^ dp");
  }
  ContactSearch k2 = search_contact_candidates(2);
  CHECK(k2.candidates[2].valid());

  JacobiPair jp = canonical_contact_pair(1);
  const Chart& c = jp.chart();
  CHECK(jp.bivector() == wedge(Multivector::basis(c, {0}).scaled(s(2)) + Multivector::basis(c, {1}),
                               Multivector::basis(c, {2})));
  CHECK(jp.reeb() == Multivector::basis(c, {0}));
  Derivation reeb = sharp(jp, LForm::unit_dual(c));
  CHECK(reeb == Derivation(Multivector::basis(c, {0}), ScalarExpr()));
  CHECK(jacobi_defect(canonical_contact_pair(2)).is_zero());
  CHECK(canonical_contact_pair(2).chart().dim() == 5);
}

TEST_CASE("assemble_cosymplectic") {
  Chart y("N", {"y"});
  JacobiPair zero = assemble_cosymplectic(JacobiPair::zero(y), 1);
  const Chart& c = zero.chart();
  CHECK(c.coordinates() == std::vector<std::string>{"q", "p", "y"});
  CHECK(zero.bivector() == Multivector::basis(c, {1, 0}));
  CHECK(zero.reeb().is_zero());

  JacobiPair withe = assemble_cosymplectic(JacobiPair(Multivector(y, 2), Multivector::basis(y, {0})), 1);
  CHECK(withe.bivector() == Multivector::basis(c, {1, 0}) + Multivector::basis(c, {2, 1}).scaled(s(1)));
  CHECK(jacobi_defect(withe).is_zero());

  Chart ab("N", {"a", "b"});
  JacobiPair bad(Multivector::basis(ab, {0, 1}), Multivector::basis(ab, {0}).scaled(s(0)));
  CHECK_FALSE(jacobi_defect(bad).is_zero());
  CHECK_FALSE(jacobi_defect(assemble_cosymplectic(bad, 1)).is_zero());
  CHECK_THROWS_AS(assemble_cosymplectic(JacobiPair::zero(Chart("N", {"q"})), 1), DomainError);
}

TEST_CASE("assemble_contact") {
  Chart y("N", {"y"});
  JacobiPair zero = assemble_contact(HomogeneousPoisson(Multivector(y, 2), Multivector(y, 1)), 1);
  CHECK(zero == JacobiPair(transfer(contact_r3().bivector(), zero.chart()), transfer(contact_r3().reeb(), zero.chart())));
  CHECK(jacobi_defect(zero).is_zero());

  Chart yab("N", {"y", "a", "b"});
  Multivector pi = Multivector::basis(yab, {1, 2}).scaled(parse_expr("1/y", yab));
  Multivector z = Multivector::basis(yab, {0}).scaled(s(0));
  CHECK(homogeneity_defect(HomogeneousPoisson(pi, z)).is_zero());
  CHECK(jacobi_defect(assemble_contact(HomogeneousPoisson(pi, z), 1)).is_zero());
  JacobiPair bad = assemble_contact(HomogeneousPoisson(Multivector::basis(yab, {1, 2}), Multivector(yab, 1)), 1);
  CHECK_FALSE(jacobi_defect(bad).is_zero());
}

TEST_CASE("assemble_homogeneous_poisson") {
  Chart y("N", {"y"});
  HomogeneousPoisson none(Multivector(y, 2), Multivector(y, 1));
  HomogeneousPoisson ii = assemble_homogeneous_poisson(none, 1, false);
  const Chart& c = ii.chart();
  CHECK(ii.bivector() == Multivector::basis(c, {1, 0}));
  CHECK(ii.homogeneity() == Multivector::basis(c, {1}).scaled(s(1)));
  CHECK(homogeneity_defect(ii).is_zero());
  HomogeneousPoisson i = assemble_homogeneous_poisson(none, 1, true);
  CHECK(i.homogeneity() == Multivector::basis(c, {1}).scaled(s(1) + ScalarExpr(1)));
  CHECK(homogeneity_defect(i).is_zero());
}

TEST_CASE("homogenized contact pair matches case i after renaming") {
  // Q1 = q, P1 = -s p, Q2 = u, P2 = s - 1 on the homogenization chart (s, u, q, p).
  HomogeneousPoisson h = homogenize(contact_r3(), "s");
  REQUIRE(h.chart().coordinates() == std::vector<std::string>{"s", "u", "q", "p"});
  Chart target("R4", {"q1", "q2", "p1", "p2"});
  std::vector<ScalarExpr> phi{s(2), s(1), -(s(0) * s(3)), s(0) - ScalarExpr(1)};
  std::vector<ScalarExpr> psi{s(3) + ScalarExpr(1), s(1), s(0), -(s(2) / (s(3) + ScalarExpr(1)))};
  Multivector pi = pushforward(h.bivector(), target, phi, psi);
  Multivector z = pushforward(h.homogeneity(), target, phi, psi);

  Chart y("N", {"y"});
  HomogeneousPoisson model = assemble_homogeneous_poisson(HomogeneousPoisson(Multivector(y, 2), Multivector(y, 1)), 2, true);
  CHECK(transfer(pi, model.chart()) == model.bivector());
  CHECK(transfer(z, model.chart()) == model.homogeneity());
}

TEST_CASE("splitting omega is d_L-closed") {
  for (int k = 1; k <= 3; ++k) {
    LForm w = splitting_omega(k);
    CHECK(w.degree() == 2);
    CHECK(dL(w).is_zero());
  }
  LForm w = splitting_omega(1);
  const Chart& c = w.chart();
  LForm primitive = LForm::jet(DiffForm::basis(c, {0}).scaled(-s(1)), ScalarExpr());
  CHECK(dL(primitive) == w);
  CHECK(w.plain() == DiffForm::basis(c, {0, 1}));
}

TEST_CASE("theta") {
  JacobiPair model = cosymplectic_model();
  TransversalSpec spec(model.chart(), {"q", "p"});
  ThetaForm th = theta(model, spec, origin(model.chart()));
  QMat expected(2, 2);
  expected << Rational(0), Rational(1), Rational(-1), Rational(0);
  CHECK(th.matrix == expected);
  CHECK(is_zero_matrix(QMat(th.matrix + th.matrix.transpose())));
  CHECK(rank(th.matrix) == 2);
  // The order of the normal variables permutes the basis.
  ThetaForm swapped = theta(model, TransversalSpec(model.chart(), {"p", "q"}), origin(model.chart()));
  CHECK(swapped.matrix == QMat(-expected));

  JacobiPair sym = symplectic_r4();
  ThetaForm t4 = theta(sym, TransversalSpec(sym.chart(), {"q1", "p1"}), origin(sym.chart()));
  CHECK(t4.matrix == QMat(-expected));

  CHECK_THROWS_AS(theta(JacobiPair::zero(model.chart()), spec, origin(model.chart())), DomainError);
  JacobiPair cm = contact_model();
  CHECK_THROWS_AS(theta(cm, TransversalSpec(cm.chart(), {"u", "q", "p"}), origin(cm.chart())), DomainError);
}

TEST_CASE("euler_like_check") {
  Chart xy("R2", {"x", "y"});
  TransversalSpec nx(xy, {"x"});
  Multivector euler = Multivector::basis(xy, {0}).scaled(s(0));
  EulerLikeResult e = euler_like_check(euler, nx);
  CHECK(e.euler_like);
  CHECK(e.linearization(0, 0) == ScalarExpr(1));
  EulerLikeResult twice = euler_like_check(euler.scaled(ScalarExpr(2)), nx);
  CHECK_FALSE(twice.euler_like);
  CHECK(twice.linearization(0, 0) == ScalarExpr(2));
  EulerLikeResult quad = euler_like_check(Multivector::basis(xy, {0}).scaled(s(0) * s(0)), nx);
  CHECK_FALSE(quad.euler_like);
  CHECK(quad.linearization(0, 0).is_zero());
  CHECK_THROWS_AS(euler_like_check(Multivector::basis(xy, {0}), nx), DomainError);
  CHECK_THROWS_AS(euler_like_check(Multivector::basis(xy, {1}).scaled(s(1)), nx), DomainError);

  // Base-dependent linearization: x (1 + y) d/dx is Euler-like only at y = 0.
  EulerLikeResult based = euler_like_check(Multivector::basis(xy, {0}).scaled(s(0) * (s(1) + ScalarExpr(1))), nx);
  CHECK_FALSE(based.euler_like);
  CHECK(based.linearization(0, 0) == s(1) + ScalarExpr(1));

  Sweep sw = euler_like_properties(30, 61);
  CHECK_MESSAGE(sw.ok(), sw.first_failure);
}

TEST_CASE("splitting equivalence sweeps") {
  for (auto kind : {SplitKind::Cosymplectic, SplitKind::Contact, SplitKind::HomogeneousPoissonCaseI,
                    SplitKind::HomogeneousPoissonCaseII}) {
    SplitSweep sw = splitting_equivalence(kind, 12, 71);
    CHECK_MESSAGE(sw.equivalence.ok(), sw.equivalence.first_failure);
    CHECK(sw.passing_inputs > 0);
    CHECK(sw.failing_inputs > 0);
  }
}
