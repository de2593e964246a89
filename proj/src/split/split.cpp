#include "djt/split/split.hpp"

#include <algorithm>

#include "djt/error.hpp"

namespace djt {

std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Cosymplectic: return "cosymplectic";
    case SplitKind::Contact: return "contact";
    case SplitKind::HomogeneousPoissonCaseI: return "homogeneous_poisson_case_i";
    default: return "homogeneous_poisson_case_ii";
  }
}

SplitKind parse_split_kind(const std::string& s) {
  for (SplitKind k : {SplitKind::Cosymplectic, SplitKind::Contact, SplitKind::HomogeneousPoissonCaseI,
                      SplitKind::HomogeneousPoissonCaseII}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown splitting kind '" + s + "'");
}

std::vector<std::string> fiber_variables(SplitKind kind, int k) {
  if (k < 1) throw DomainError("splitting models need k >= 1");
  std::vector<std::string> out;
  if (kind == SplitKind::Contact) out.push_back("u");
  for (const char* letter : {"q", "p"}) {
    for (int i = 1; i <= k; ++i) out.push_back(k == 1 ? std::string(letter) : letter + std::to_string(i));
  }
  return out;
}

SplitModel SplitModel::make(SplitKind kind, int fiber_dim, std::vector<std::string> base_vars) {
  bool odd = fiber_dim % 2 != 0;
  if (odd != (kind == SplitKind::Contact)) {
    throw DomainError("fiber dimension " + std::to_string(fiber_dim) + " has the wrong parity for " + to_string(kind));
  }
  SplitModel m{kind, fiber_dim, {}, std::move(base_vars)};
  m.fiber_vars = fiber_variables(kind, m.k());
  for (const auto& b : m.base_vars) {
    if (std::find(m.fiber_vars.begin(), m.fiber_vars.end(), b) != m.fiber_vars.end()) {
      throw DomainError("base variable '" + b + "' collides with a fiber variable");
    }
  }
  return m;
}

Chart SplitModel::product_chart(const std::vector<std::string>& parameters) const {
  std::vector<std::string> vars = fiber_vars;
  vars.insert(vars.end(), base_vars.begin(), base_vars.end());
  return Chart("U" + std::to_string(fiber_dim) + "xN", vars, parameters);
}

namespace {

// Coordinate index helpers on a chart whose fiber variables come first.
struct FiberIndex {
  std::size_t offset;  // 1 for contact charts (u first), else 0
  int k;
  std::size_t q(int i) const { return offset + static_cast<std::size_t>(i); }
  std::size_t p(int i) const { return offset + static_cast<std::size_t>(k + i); }
};

Multivector pi_can(const Chart& c, FiberIndex f) {
  Multivector pi(c, 2);
  for (int i = 0; i < f.k; ++i) pi += Multivector::basis(c, {f.p(i), f.q(i)});
  return pi;
}

Multivector z_can(const Chart& c, FiberIndex f) {
  Multivector z(c, 1);
  for (int i = 0; i < f.k; ++i) z += Multivector::basis(c, {f.p(i)}).scaled(ScalarExpr::symbol(f.p(i)));
  return z;
}

// sign * sum (p_i du + dq_i) ^ d s_i with s = q or p.
Multivector contact_bivector(const Chart& c, int k, bool s_is_p, int sign) {
  FiberIndex f{1, k};
  Multivector lam(c, 2);
  Multivector du = Multivector::basis(c, {0});
  for (int i = 0; i < k; ++i) {
    Multivector left = du.scaled(ScalarExpr::symbol(f.p(i))) + Multivector::basis(c, {f.q(i)});
    lam += wedge(left, Multivector::basis(c, {s_is_p ? f.p(i) : f.q(i)}));
  }
  return lam.scaled(ScalarExpr(sign));
}

Chart model_chart(SplitKind kind, int k, const Chart& base) {
  return SplitModel::make(kind, kind == SplitKind::Contact ? 2 * k + 1 : 2 * k, base.coordinates())
      .product_chart(base.parameters());
}

}  // namespace

CosymplecticFactor canonical_cosymplectic_pair(int k) {
  Chart c("R" + std::to_string(2 * k), fiber_variables(SplitKind::Cosymplectic, k));
  FiberIndex f{0, k};
  return {JacobiPair(pi_can(c, f), Multivector(c, 1)), z_can(c, f)};
}

ContactSearch search_contact_candidates(int k) {
  Chart c("R" + std::to_string(2 * k + 1), fiber_variables(SplitKind::Contact, k));
  ContactSearch out;
  Multivector e = Multivector::basis(c, {0});
  for (bool s_is_p : {false, true}) {
    for (int sign : {1, -1}) {
      ContactCandidate cand;
      cand.label = std::string(sign > 0 ? "+" : "-") + "(p du + dq) ^ d" + (s_is_p ? "p" : "q");
      cand.pair = JacobiPair(contact_bivector(c, k, s_is_p, sign), e);
      cand.defect_zero = jacobi_defect(cand.pair).is_zero();
      Multivector top = e;
      for (int i = 0; i < k; ++i) top = wedge(top, cand.pair.bivector());
      cand.nondegenerate = !top.is_zero();
      out.defect_only_passes += cand.defect_zero ? 1 : 0;
      out.valid_passes += cand.valid() ? 1 : 0;
      out.candidates.push_back(std::move(cand));
    }
  }
  return out;
}

JacobiPair canonical_contact_pair(int k) {
  ContactSearch pinned = search_contact_candidates(1);
  if (pinned.valid_passes != 1) {
    throw DomainError("contact reading search found " + std::to_string(pinned.valid_passes) +
                      " valid candidates at k=1; expected exactly one");
  }
  std::size_t which = 0;
  while (!pinned.candidates[which].valid()) ++which;
  if (k == 1) return pinned.candidates[which].pair;
  return search_contact_candidates(k).candidates[which].pair;
}

JacobiPair assemble_cosymplectic(const JacobiPair& base, int k) {
  Chart c = model_chart(SplitKind::Cosymplectic, k, base.chart());
  FiberIndex f{0, k};
  Multivector en = transfer(base.reeb(), c);
  Multivector lam = pi_can(c, f) + transfer(base.bivector(), c) + wedge(en, z_can(c, f));
  return JacobiPair(std::move(lam), std::move(en));
}

JacobiPair assemble_contact(const HomogeneousPoisson& base, int k) {
  Chart c = model_chart(SplitKind::Contact, k, base.chart());
  JacobiPair can = canonical_contact_pair(k);
  Multivector du = Multivector::basis(c, {0});
  Multivector lam = transfer(can.bivector(), c) + transfer(base.bivector(), c) + wedge(du, transfer(base.homogeneity(), c));
  return JacobiPair(std::move(lam), du);
}

HomogeneousPoisson assemble_homogeneous_poisson(const HomogeneousPoisson& base, int k, bool case_i) {
  SplitKind kind = case_i ? SplitKind::HomogeneousPoissonCaseI : SplitKind::HomogeneousPoissonCaseII;
  Chart c = model_chart(kind, k, base.chart());
  FiberIndex f{0, k};
  Multivector pi = pi_can(c, f) + transfer(base.bivector(), c);
  Multivector z = z_can(c, f) + transfer(base.homogeneity(), c);
  if (case_i) z += Multivector::basis(c, {f.p(k - 1)});
  return HomogeneousPoisson(std::move(pi), std::move(z));
}

LForm splitting_omega(int k) {
  Chart c("R" + std::to_string(2 * k), fiber_variables(SplitKind::Cosymplectic, k));
  FiberIndex f{0, k};
  DiffForm plain(c, 2), jet(c, 1);
  for (int i = 0; i < k; ++i) {
    plain += DiffForm::basis(c, {f.q(i), f.p(i)});
    jet -= DiffForm::basis(c, {f.q(i)}).scaled(ScalarExpr::symbol(f.p(i)));
  }
  return LForm(std::move(plain), std::move(jet));
}

ThetaForm theta(const JacobiPair& jp, const TransversalSpec& spec, const Point& point) {
  TransversalClass cls = classify_transversal(jp, spec, point);
  if (cls.kind != TransversalKind::Cosymplectic) {
    throw DomainError("theta: transversal is " + to_string(cls.kind) + " at the point, not cosymplectic");
  }
  const Chart& c = jp.chart();
  std::vector<Rational> vals = c.values(point);
  const auto& names = spec.normal_vars();
  const auto k = static_cast<Eigen::Index>(names.size());
  QMat block(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      std::size_t ia = *c.coordinate_index(names[static_cast<std::size_t>(a)]);
      std::size_t ib = *c.coordinate_index(names[static_cast<std::size_t>(b)]);
      block(a, b) = jp.bivector().at({ia, ib}).evaluate(vals);
    }
  }
  QMat th;
  try {
    th = inverse(block);
  } catch (const DomainError&) {
    throw DomainError("theta: normal block of the bivector is singular at the point");
  }
  if (!is_zero_matrix(QMat(th + th.transpose()))) throw DomainError("theta: result is not antisymmetric");
  return {point, names, std::move(th)};
}

EulerLikeResult euler_like_check(const Multivector& x, const TransversalSpec& spec) {
  require_same_chart(x.chart(), spec.chart(), "euler_like_check");
  if (x.degree() != 1) throw DomainError("euler_like_check needs a vector field");
  const Chart& c = x.chart();
  std::vector<std::optional<Rational>> on_n(c.symbol_count());
  for (auto i : spec.normal_indices()) on_n[i] = Rational(0);
  for (const auto& [s, v] : x.components()) {
    if (!v.substitute(on_n).is_zero()) throw DomainError("euler_like_check: vector field does not vanish on N");
  }
  const auto& names = spec.normal_vars();
  const auto k = static_cast<Eigen::Index>(names.size());
  EulerLikeResult out;
  out.linearization = Mat<ScalarExpr>(k, k);
  out.euler_like = true;
  for (Eigen::Index a = 0; a < k; ++a) {
    std::size_t ia = *c.coordinate_index(names[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < k; ++b) {
      std::size_t ib = *c.coordinate_index(names[static_cast<std::size_t>(b)]);
      ScalarExpr v = x[IndexSet{1} << ia].partial(ib).substitute(on_n);
      if (!(v == ScalarExpr(a == b ? 1 : 0))) out.euler_like = false;
      out.linearization(a, b) = std::move(v);
    }
  }
  return out;
}

}  // namespace djt
