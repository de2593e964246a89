#pragma once

#include <string>
#include <vector>

#include "djt/homog/homog.hpp"
#include "djt/omni/omni.hpp"

namespace djt {

enum class SplitKind { Cosymplectic, Contact, HomogeneousPoissonCaseI, HomogeneousPoissonCaseII };
std::string to_string(SplitKind k);
/// Accepts "cosymplectic", "contact", "homogeneous_poisson_case_i", "homogeneous_poisson_case_ii".
SplitKind parse_split_kind(const std::string& s);

/// Fiber variable names: q, p for k = 1 and q1..qk, p1..pk otherwise; contact models add u first.
std::vector<std::string> fiber_variables(SplitKind kind, int k);

/// Factor shape of a splitting model.
struct SplitModel {
  SplitKind kind;
  int fiber_dim;
  std::vector<std::string> fiber_vars;
  std::vector<std::string> base_vars;
  /// Throws DomainError on parity mismatch, overlapping names or k < 1.
  static SplitModel make(SplitKind kind, int fiber_dim, std::vector<std::string> base_vars);
  int k() const { return kind == SplitKind::Contact ? (fiber_dim - 1) / 2 : fiber_dim / 2; }
  Chart product_chart(const std::vector<std::string>& parameters = {}) const;
};

struct CosymplecticFactor {
  JacobiPair pair;     // (sum d/dp_i ^ d/dq_i, 0)
  Multivector z_can;   // sum p_i d/dp_i
};
CosymplecticFactor canonical_cosymplectic_pair(int k);

/// One reading of the contact bivector: sign * sum (p_i du + dq_i) ^ d s_i, s in {q, p}.
struct ContactCandidate {
  std::string label;
  JacobiPair pair;
  bool defect_zero = false;
  /// E ^ Lambda^k != 0, i.e. the pair is a contact structure.
  bool nondegenerate = false;
  bool valid() const { return defect_zero && nondegenerate; }
};

struct ContactSearch {
  std::vector<ContactCandidate> candidates;
  int defect_only_passes = 0;
  int valid_passes = 0;
};

/// Evaluates the four candidate readings at the given k.
ContactSearch search_contact_candidates(int k);
/// The reading selected by the search at k = 1, instantiated at k.
/// Throws DomainError unless exactly one candidate is valid at k = 1.
JacobiPair canonical_contact_pair(int k);

/// (pi_can + Lambda_N + E_N ^ Z_can, E_N) on the chart (fiber, base).
JacobiPair assemble_cosymplectic(const JacobiPair& base, int k);
/// (Lambda_can + pi_N + du ^ Z_N, du) on the chart (u, fiber, base).
JacobiPair assemble_contact(const HomogeneousPoisson& base, int k);
/// (sum d/dp_i ^ d/dq_i + pi_N, sum p_i d/dp_i [+ d/dp_k] + Z_N).
HomogeneousPoisson assemble_homogeneous_poisson(const HomogeneousPoisson& base, int k, bool case_i);

/// The closed LForm omega = sum dq_i ^ dp_i - 1* ^ sum p_i dq_i on the cosymplectic fiber chart.
LForm splitting_omega(int k);

/// Nondegenerate pairing on the normal directions of a cosymplectic transversal.
struct ThetaForm {
  Point point;
  std::vector<std::string> normal_vars;
  QMat matrix;
};

/// Inverse of the normal block (Lambda^{ab}) over the normal variables, in TransversalSpec order.
/// Throws DomainError unless the transversal is cosymplectic at the point.
ThetaForm theta(const JacobiPair& jp, const TransversalSpec& spec, const Point& point);

struct EulerLikeResult {
  bool euler_like = false;
  /// d X^a / d x^b over normal variables, restricted to N.
  Mat<ScalarExpr> linearization;
};

/// Linearization test for a vector field vanishing on N (flow completeness is not checked).
/// Throws DomainError if X does not vanish on N.
EulerLikeResult euler_like_check(const Multivector& x, const TransversalSpec& spec);

}  // namespace djt
