#pragma once

#include <optional>
#include <string>
#include <vector>

#include "djt/jacobi/jacobi.hpp"

namespace djt {

/// Section (Delta, psi) of DL + J^1 L.
struct OmniSection {
  Derivation der;
  JetSection jet;

  OmniSection() = default;
  OmniSection(Derivation d, JetSection j);
  const Chart& chart() const { return der.chart(); }
  OmniSection scaled(const ScalarExpr& f) const { return {der.scaled(f), jet.scaled(f)}; }
  friend OmniSection operator+(const OmniSection& a, const OmniSection& b) { return {a.der + b.der, a.jet + b.jet}; }
  friend OmniSection operator-(const OmniSection& a, const OmniSection& b) { return {a.der - b.der, a.jet - b.jet}; }
  friend bool operator==(const OmniSection&, const OmniSection&) = default;
};

/// Closed degree-3 LForm twisting the bracket.
class TwistForm {
 public:
  /// Throws DomainError unless `h` has degree 3 and d_L h = 0.
  explicit TwistForm(LForm h);
  const LForm& form() const { return h_; }

 private:
  LForm h_;
};

/// psi1(Delta2) + psi2(Delta1).
ScalarExpr pairing(const OmniSection& a, const OmniSection& b);
/// ([D1,D2], L_D1 psi2 - i_D2 d_L psi1 + i_D1 i_D2 H).
OmniSection dorfman(const OmniSection& a, const OmniSection& b, const TwistForm* twist = nullptr);
/// exp(B): (Delta, psi) -> (Delta, psi + i_Delta B).
OmniSection bfield(const LForm& b, const OmniSection& a);
/// Graph section (J-sharp psi, psi).
OmniSection graph_section(const JacobiPair& jp, const JetSection& psi);

/// Subspace of the fiber of DL + J^1 L at a point.
///
/// Coordinates are ordered (d_1..d_n, 1, dx^1..dx^n, 1*); the basis vectors
/// are the columns of `basis`.
struct OmniFiberSubspace {
  Chart chart;
  Point point;
  QMat basis;

  std::size_t n() const { return chart.dim(); }
  Eigen::Index dimension() const { return basis.cols(); }
  /// Derivation block (first n+1 rows) and jet block (last n+1 rows).
  QMat derivation_part() const { return basis.topRows(static_cast<Eigen::Index>(n() + 1)); }
  QMat jet_part() const { return basis.bottomRows(static_cast<Eigen::Index>(n() + 1)); }
};

/// Gram matrix of the pairing in the fiber basis: [[0, I], [I, 0]].
QMat fiber_gram(std::size_t n);
/// Restriction of the pairing to the subspace (zero iff isotropic).
QMat restricted_pairing(const OmniFiberSubspace& s);
bool is_isotropic(const OmniFiberSubspace& s);
/// dim(s intersect DL fiber) = dim s - rank of the jet block.
Eigen::Index intersection_with_derivations(const OmniFiberSubspace& s);

/// Graph of J at a point, spanned by (J-sharp e_j, e_j) over the jet basis.
OmniFiberSubspace graph_subspace(const JacobiPair& jp, const Point& point);

/// Submanifold N = {normal_vars = 0}, optionally with a flat connection 1-form beta
/// on N; the connection splits DL_N by nabla_Y = Y + beta(Y) 1.
class TransversalSpec {
 public:
  TransversalSpec(Chart chart, std::vector<std::string> normal_vars, std::optional<DiffForm> connection = {});

  const Chart& chart() const { return chart_; }
  const Chart& submanifold() const { return sub_; }
  const std::vector<std::string>& normal_vars() const { return normal_; }
  /// Coordinate indices of the normal and tangential variables in the ambient chart.
  const std::vector<std::size_t>& normal_indices() const { return normal_idx_; }
  const std::vector<std::size_t>& tangential_indices() const { return tangential_idx_; }
  const std::optional<DiffForm>& connection() const { return connection_; }

  /// Throws DomainError unless every normal variable is zero at `p`.
  void require_on_submanifold(const Point& p) const;
  /// The point in the submanifold's chart.
  Point restrict_point(const Point& p) const;

 private:
  Chart chart_;
  Chart sub_;
  std::vector<std::string> normal_;
  std::vector<std::size_t> normal_idx_;
  std::vector<std::size_t> tangential_idx_;
  std::optional<DiffForm> connection_;
};

/// {(Delta, (DI)* psi) : Delta in DL_N, (DI Delta, psi) in sub} for the inclusion of N.
OmniFiberSubspace backwards_transform(const OmniFiberSubspace& sub, const TransversalSpec& spec);

/// The graph is not transversal to N at the point.
class TransversalityError : public DomainError {
 public:
  TransversalityError(const std::string& what, Eigen::Index rank, Eigen::Index required)
      : DomainError(what), rank_(rank), required_(required) {}
  Eigen::Index rank() const { return rank_; }
  Eigen::Index required() const { return required_; }

 private:
  Eigen::Index rank_;
  Eigen::Index required_;
};

enum class TransversalKind { Cosymplectic, Cocontact, Neither };
std::string to_string(TransversalKind k);

struct TransversalClass {
  TransversalKind kind = TransversalKind::Neither;
  Eigen::Index intersection_rank = 0;
  OmniFiberSubspace backwards;
};

/// Transversality check, then rank of DL_N intersect B_I(L_J) at the point.
TransversalClass classify_transversal(const JacobiPair& jp, const TransversalSpec& spec, const Point& point);

struct HomogeneousPoissonType {
  bool is_type = false;
  Eigen::Index rank = 0;
  /// Generator (X, f) of the intersection; scaled to f = 1 when f != 0.
  std::optional<QVec> generator;
  /// Z with generator = r (1 - nabla_Z), when the 1-coefficient r is nonzero.
  std::optional<QVec> homogeneity;
};

/// rank(sub intersect DL) = 1 test. Throws DomainError for non-isotropic input.
HomogeneousPoissonType homogeneous_poisson_type_check(const OmniFiberSubspace& sub,
                                                      const std::optional<DiffForm>& connection = {});

struct InvolutivityReport {
  int brackets = 0;
  int failures = 0;
  /// First bracket leaving the graph, as the mismatch J-sharp(psi) - Delta.
  std::optional<Derivation> first_mismatch;
  bool involutive() const { return failures == 0; }
};

/// Brackets graph sections over the jet frame and its coordinate multiples and
/// checks that each result stays in the graph.
InvolutivityReport involutivity_check(const JacobiPair& jp);

}  // namespace djt
