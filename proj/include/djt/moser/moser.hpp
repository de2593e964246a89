#pragma once

#include <string>
#include <utility>
#include <vector>

#include "djt/jacobi/jacobi.hpp"

namespace djt {

/// Base Jacobi pair plus a family sigma_t of d_L-closed degree-2 LForms with sigma_0 = 0.
///
/// sigma lives on the base chart extended by the time parameter; t is a formal
/// parameter, so d_L and contractions never differentiate in t.
class DeformationFamily {
 public:
  /// Throws DomainError if sigma is not on time_chart(base chart), has the wrong
  /// degree, is nonzero at t = 0, or is not d_L-closed.
  DeformationFamily(JacobiPair base, LForm sigma, std::string tvar = "t");

  /// The base chart with `tvar` appended as a parameter.
  static Chart time_chart(const Chart& base, const std::string& tvar = "t");

  const JacobiPair& base() const { return base_; }
  const LForm& sigma() const { return sigma_; }
  const Chart& chart() const { return sigma_.chart(); }
  const std::string& time_variable() const { return tvar_; }
  std::size_t time_slot() const { return time_slot_; }
  std::size_t dim() const { return base_.chart().dim(); }

 private:
  JacobiPair base_;
  LForm sigma_;
  std::string tvar_;
  std::size_t time_slot_ = 0;
};

/// id + sigma_t-flat . J-sharp is singular at (t, point).
class SingularDeformation : public DomainError {
 public:
  SingularDeformation(const std::string& what, Rational t) : DomainError(what), t_(std::move(t)) {}
  const Rational& t() const { return t_; }

 private:
  Rational t_;
};

/// Matrix of Delta -> i_Delta w for a degree-2 LForm: rows (dx.., 1*), columns (d/dx.., 1).
Mat<ScalarExpr> flat_matrix(const LForm& w);

/// id + sigma_t-flat . J-sharp, symbolic in the coordinates and t.
Mat<ScalarExpr> deformation_matrix(const DeformationFamily& fam);
/// J-sharp (id + sigma_t-flat J-sharp)^{-1}, symbolic. Throws DomainError if generically singular.
Mat<ScalarExpr> deformed_sharp_symbolic(const DeformationFamily& fam);
/// The same as adjugate / det: J-sharp times the scaled inverse, over one polynomial denominator.
ScaledInverse deformed_sharp_scaled(const DeformationFamily& fam);

/// Exact matrix of J_t-sharp at (t0, point). Throws SingularDeformation.
QMat deformed_sharp(const DeformationFamily& fam, const Rational& t0, const Point& point);

/// alpha_t = -d/dt i_1 sigma_t, with 1 the identity derivation.
/// Throws DomainError if d sigma/dt = -d_L alpha_t fails.
LForm moser_alpha(const DeformationFamily& fam);

/// Delta_t = -J_t-sharp(alpha_t) at (t0, point), as a fiber vector in (d/dx.., 1).
QVec moser_derivation(const DeformationFamily& fam, const Rational& t0, const Point& point);

struct MoserDerivativeReport {
  /// d/dt J_t-sharp = -J_t-sharp (d sigma/dt)-flat J_t-sharp as matrices rational in t at the point.
  bool exact_identity = false;
  QMat derivative;   // exact d/dt J_t-sharp at t0
  QMat difference;   // (J_{t0+h} - J_{t0-h}) / 2h
  double deviation = 0;  // max entry of |difference - derivative|
};

/// Exact formal-t check plus a central finite difference with step h.
MoserDerivativeReport verify_moser_derivative(const DeformationFamily& fam, const Rational& t0, const Point& point,
                                              const Rational& h);

/// Same identity with the coordinates kept symbolic.
bool moser_identity_holds(const DeformationFamily& fam);

/// Times in [0, 1] where id + sigma_t-flat J-sharp degenerates at the point.
struct SingularTimes {
  std::vector<Rational> exact;        // rational roots of the determinant
  std::vector<double> approximate;    // remaining sign changes, located by bisection
  bool empty() const { return exact.empty() && approximate.empty(); }
};
SingularTimes singular_times(const DeformationFamily& fam, const Point& point);

struct FlowReport {
  int steps = 0;
  double drift = 0;  // max over the grid of |Phi_t^* J_t - J_0| (max entry)
  std::vector<std::pair<double, double>> table;  // (t, drift) per grid point, t = 0 included
  std::vector<double> endpoint;                  // trajectory position at t = 1
};

/// Integrates the trajectory of the point and the variational equation with classical
/// RK4 over t in [0, 1] along J_t-sharp(alpha_t) = -Delta_t, transporting J_t back to t = 0.
/// Throws SingularDeformation if the determinant vanishes along the way.
FlowReport flow_invariance_probe(const DeformationFamily& fam, const Point& point, int steps);

/// "t,drift" header plus one row per grid point.
std::string drift_csv(const FlowReport& r);

}  // namespace djt
