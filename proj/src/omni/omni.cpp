#include "djt/omni/omni.hpp"

#include <algorithm>
#include <set>

#include "djt/error.hpp"

namespace djt {

OmniSection::OmniSection(Derivation d, JetSection j) : der(std::move(d)), jet(std::move(j)) {
  require_same_chart(der.chart(), jet.chart(), "omni section");
  if (jet.degree() != 1) throw DomainError("omni section needs a degree-1 jet part");
}

TwistForm::TwistForm(LForm h) : h_(std::move(h)) {
  if (h_.degree() != 3) throw DomainError("twist form must have degree 3");
  if (!dL(h_).is_zero()) throw DomainError("twist form is not d_L-closed");
}

ScalarExpr pairing(const OmniSection& a, const OmniSection& b) {
  require_same_chart(a.chart(), b.chart(), "pairing");
  return pair(a.jet, b.der) + pair(b.jet, a.der);
}

OmniSection dorfman(const OmniSection& a, const OmniSection& b, const TwistForm* twist) {
  require_same_chart(a.chart(), b.chart(), "dorfman bracket");
  LForm jet = lieD(a.der, b.jet) - iota(b.der, dL(a.jet));
  if (twist) {
    require_same_chart(a.chart(), twist->form().chart(), "dorfman twist");
    jet += iota(a.der, iota(b.der, twist->form()));
  }
  return {commutator(a.der, b.der), std::move(jet)};
}

OmniSection bfield(const LForm& b, const OmniSection& a) {
  require_same_chart(b.chart(), a.chart(), "B-field transform");
  if (b.degree() != 2) throw DomainError("B-field must be a degree-2 LForm");
  return {a.der, a.jet + iota(a.der, b)};
}

OmniSection graph_section(const JacobiPair& jp, const JetSection& psi) { return {sharp(jp, psi), psi}; }

QMat fiber_gram(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n + 1);
  QMat g = QMat::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g(i, m + i) = Rational(1);
    g(m + i, i) = Rational(1);
  }
  return g;
}

QMat restricted_pairing(const OmniFiberSubspace& s) {
  QMat g = fiber_gram(s.n());
  return QMat(s.basis.transpose() * g * s.basis);
}

bool is_isotropic(const OmniFiberSubspace& s) { return is_zero_matrix(restricted_pairing(s)); }

Eigen::Index intersection_with_derivations(const OmniFiberSubspace& s) {
  return s.dimension() - rank(s.jet_part());
}

OmniFiberSubspace graph_subspace(const JacobiPair& jp, const Point& point) {
  const Chart& c = jp.chart();
  const auto m = static_cast<Eigen::Index>(c.dim() + 1);
  std::vector<Rational> vals = c.values(point);
  QMat s;
  try {
    s = evaluate(sharp_matrix(jp), vals);
  } catch (const DomainError&) {
    throw DomainError("graph_subspace: Jacobi pair has a pole at the point");
  }
  QMat basis(2 * m, m);
  basis.topRows(m) = s;
  basis.bottomRows(m) = QMat::Identity(m, m);
  return {c, point, std::move(basis)};
}

TransversalSpec::TransversalSpec(Chart chart, std::vector<std::string> normal_vars, std::optional<DiffForm> connection)
    : chart_(std::move(chart)), normal_(std::move(normal_vars)), connection_(std::move(connection)) {
  if (normal_.empty()) throw DomainError("transversal: normal variables must be nonempty");
  std::set<std::size_t> seen;
  for (const auto& v : normal_) {
    auto idx = chart_.coordinate_index(v);
    if (!idx) throw DomainError("transversal: '" + v + "' is not a coordinate of chart " + chart_.name());
    if (!seen.insert(*idx).second) throw DomainError("transversal: duplicate normal variable '" + v + "'");
  }
  if (seen.size() >= chart_.dim()) throw DomainError("transversal: normal variables must be a proper subset");
  normal_idx_.assign(seen.begin(), seen.end());
  std::vector<std::string> tangential;
  for (std::size_t i = 0; i < chart_.dim(); ++i) {
    if (!seen.count(i)) {
      tangential_idx_.push_back(i);
      tangential.push_back(chart_.symbol(i));
    }
  }
  sub_ = Chart(chart_.name() + "_N", tangential, chart_.parameters());
  if (connection_) {
    require_same_chart(connection_->chart(), sub_, "transversal connection");
    if (connection_->degree() != 1) throw DomainError("transversal connection must be a 1-form on N");
    if (!d(*connection_).is_zero()) throw DomainError("transversal connection is not flat (d beta != 0)");
  }
}

void TransversalSpec::require_on_submanifold(const Point& p) const {
  for (const auto& v : normal_) {
    auto it = p.find(v);
    if (it == p.end() || !it->second.is_zero()) {
      throw DomainError("point is not on the submanifold: " + v + " must be 0");
    }
  }
}

Point TransversalSpec::restrict_point(const Point& p) const {
  Point out = p;
  for (const auto& v : normal_) out.erase(v);
  return out;
}

OmniFiberSubspace backwards_transform(const OmniFiberSubspace& sub, const TransversalSpec& spec) {
  require_same_chart(sub.chart, spec.chart(), "backwards transform");
  spec.require_on_submanifold(sub.point);
  const auto n = static_cast<Eigen::Index>(sub.n());
  const auto& normal = spec.normal_indices();
  const auto& tangential = spec.tangential_indices();

  // Combinations whose derivation has no normal component lie over DL_N.
  QMat normal_rows(static_cast<Eigen::Index>(normal.size()), sub.basis.cols());
  for (std::size_t k = 0; k < normal.size(); ++k) {
    normal_rows.row(static_cast<Eigen::Index>(k)) = sub.basis.row(static_cast<Eigen::Index>(normal[k]));
  }
  QMat over = sub.basis * nullspace(normal_rows);

  const auto m = static_cast<Eigen::Index>(tangential.size());
  QMat image(2 * (m + 1), over.cols());
  for (Eigen::Index k = 0; k < m; ++k) {
    auto t = static_cast<Eigen::Index>(tangential[static_cast<std::size_t>(k)]);
    image.row(k) = over.row(t);
    image.row(m + 1 + k) = over.row(n + 1 + t);
  }
  image.row(m) = over.row(n);
  image.row(2 * m + 1) = over.row(2 * n + 1);
  return {spec.submanifold(), spec.restrict_point(sub.point), column_basis(image)};
}

std::string to_string(TransversalKind k) {
  switch (k) {
    case TransversalKind::Cosymplectic: return "cosymplectic";
    case TransversalKind::Cocontact: return "cocontact";
    default: return "neither";
  }
}

TransversalClass classify_transversal(const JacobiPair& jp, const TransversalSpec& spec, const Point& point) {
  require_same_chart(jp.chart(), spec.chart(), "classify_transversal");
  spec.require_on_submanifold(point);
  OmniFiberSubspace graph = graph_subspace(jp, point);
  const auto& normal = spec.normal_indices();
  QMat normal_rows(static_cast<Eigen::Index>(normal.size()), graph.basis.cols());
  for (std::size_t k = 0; k < normal.size(); ++k) {
    normal_rows.row(static_cast<Eigen::Index>(k)) = graph.basis.row(static_cast<Eigen::Index>(normal[k]));
  }
  Eigen::Index r = rank(normal_rows);
  auto required = static_cast<Eigen::Index>(normal.size());
  if (r < required) {
    throw TransversalityError("not transversal: normal part of pr_D L has rank " + std::to_string(r) + ", needs " +
                                  std::to_string(required),
                              r, required);
  }
  TransversalClass out;
  out.backwards = backwards_transform(graph, spec);
  out.intersection_rank = intersection_with_derivations(out.backwards);
  out.kind = out.intersection_rank == 0   ? TransversalKind::Cosymplectic
             : out.intersection_rank == 1 ? TransversalKind::Cocontact
                                          : TransversalKind::Neither;
  return out;
}

HomogeneousPoissonType homogeneous_poisson_type_check(const OmniFiberSubspace& sub,
                                                      const std::optional<DiffForm>& connection) {
  if (!is_isotropic(sub)) throw DomainError("homogeneous Poisson type check needs an isotropic subspace");
  HomogeneousPoissonType out;
  QMat kernel = nullspace(sub.jet_part());
  out.rank = kernel.cols();
  out.is_type = out.rank == 1;
  if (!out.is_type) return out;
  const auto n = static_cast<Eigen::Index>(sub.n());
  QVec gen = sub.derivation_part() * kernel.col(0);
  Rational scale = gen(n);
  if (scale.is_zero()) {
    for (Eigen::Index i = 0; i < gen.size() && scale.is_zero(); ++i) scale = gen(i);
  }
  gen = gen / scale;
  Rational r = gen(n);
  if (connection) {
    auto beta = evaluate(*connection, sub.chart.values(sub.point));
    for (Eigen::Index i = 0; i < n; ++i) {
      auto it = beta.find(IndexSet{1} << i);
      if (it != beta.end()) r -= it->second * gen(i);
    }
  }
  if (!r.is_zero()) out.homogeneity = QVec(-gen.head(n) / r);
  out.generator = std::move(gen);
  return out;
}

InvolutivityReport involutivity_check(const JacobiPair& jp) {
  const Chart& c = jp.chart();
  std::vector<JetSection> frame;
  for (std::size_t i = 0; i < c.dim(); ++i) frame.push_back(LForm::jet(DiffForm::basis(c, {i}), ScalarExpr()));
  frame.push_back(LForm::unit_dual(c));
  std::vector<ScalarExpr> multipliers{ScalarExpr(1)};
  for (std::size_t i = 0; i < c.dim(); ++i) multipliers.push_back(ScalarExpr::symbol(i));

  std::vector<OmniSection> sections;
  for (const auto& e : frame) {
    for (const auto& m : multipliers) sections.push_back(graph_section(jp, e.scaled(m)));
  }
  InvolutivityReport report;
  for (const auto& a : sections) {
    for (const auto& b : sections) {
      OmniSection br = dorfman(a, b);
      Derivation mismatch = sharp(jp, br.jet) - br.der;
      ++report.brackets;
      if (!mismatch.is_zero() && report.failures++ == 0) report.first_mismatch = mismatch;
    }
  }
  return report;
}

}  // namespace djt
