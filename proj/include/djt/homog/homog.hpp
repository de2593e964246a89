#pragma once

#include <string>

#include "djt/jacobi/jacobi.hpp"

namespace djt {

/// Bivector pi and homogeneity field Z; homogeneous Poisson iff [pi,pi] = 0 and Lie_Z pi = -pi.
class HomogeneousPoisson {
 public:
  HomogeneousPoisson() = default;
  HomogeneousPoisson(Multivector bivector, Multivector homogeneity);

  const Chart& chart() const { return bivector_.chart(); }
  const Multivector& bivector() const { return bivector_; }
  const Multivector& homogeneity() const { return homogeneity_; }
  friend bool operator==(const HomogeneousPoisson&, const HomogeneousPoisson&) = default;

 private:
  Multivector bivector_;
  Multivector homogeneity_;
};

struct HomogeneityDefect {
  Multivector poisson;      // [pi, pi]
  Multivector homogeneity;  // Lie_Z pi + pi
  bool is_zero() const { return poisson.is_zero() && homogeneity.is_zero(); }
};

HomogeneityDefect homogeneity_defect(const HomogeneousPoisson& hp);

/// pi = (1/u) Lambda + du ^ E and Z = u du on the chart (u, original coordinates).
/// Throws DomainError if `uvar` already names a symbol of the chart.
HomogeneousPoisson homogenize(const JacobiPair& jp, const std::string& uvar);

/// Inverse of homogenize: E = i_du pi and Lambda = u (pi - du ^ E), both free of u.
///
/// Requires Z = u du exactly (no coordinate straightening) and Lie_Z pi = -pi.
/// Throws DomainError naming the failed condition otherwise.
JacobiPair dehomogenize(const HomogeneousPoisson& hp, const std::string& uvar);

struct EquivalenceReport {
  JacobiDefect jacobi;
  HomogeneousPoisson homogenized;
  HomogeneityDefect homogeneous;
  /// Both defect systems vanish, or neither does.
  bool consistent() const { return jacobi.is_zero() == homogeneous.is_zero(); }
};

EquivalenceReport equivalence_check(const JacobiPair& jp, const std::string& uvar);

}  // namespace djt
