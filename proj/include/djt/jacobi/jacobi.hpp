#pragma once

#include "djt/cartan/lform.hpp"
#include "djt/linalg.hpp"

namespace djt {

/// Bivector and Reeb field of a Jacobi tensor J = Lambda + 1 ^ E on a trivialized line bundle.
///
/// Only structural consistency is enforced here; the Jacobi conditions are
/// checked by jacobi_defect.
class JacobiPair {
 public:
  JacobiPair() = default;
  JacobiPair(Multivector bivector, Multivector reeb);
  static JacobiPair zero(const Chart& chart) { return JacobiPair(Multivector(chart, 2), Multivector(chart, 1)); }

  const Chart& chart() const { return bivector_.chart(); }
  const Multivector& bivector() const { return bivector_; }
  const Multivector& reeb() const { return reeb_; }
  friend bool operator==(const JacobiPair&, const JacobiPair&) = default;

 private:
  Multivector bivector_;
  Multivector reeb_;
};

/// Jet sections alpha + r 1* are degree-1 LForms (plain part alpha, jet part r).
using JetSection = LForm;

struct JacobiDefect {
  Multivector structure;  // 1/2 [Lambda, Lambda] + E ^ Lambda
  Multivector reeb;       // Lie_E Lambda
  bool is_zero() const { return structure.is_zero() && reeb.is_zero(); }
};

/// Structure-equation defects; the pair is Jacobi iff both vanish.
///
/// The bivector self-bracket enters with weight 1/2: with [X,Y] the Lie bracket,
/// this is the normalization under which a vanishing defect is equivalent to the
/// Jacobi identity of jacobi_bracket.
JacobiDefect jacobi_defect(const JacobiPair& jp);

/// Lambda-sharp: contraction of alpha into the first slot of Lambda.
Multivector lambda_sharp(const Multivector& lambda, const DiffForm& alpha);
/// Lambda(alpha, beta) = sum alpha_i beta_j Lambda^{ij}.
ScalarExpr bivector_pair(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta);

/// J-sharp(alpha + r 1*) = (Lambda-sharp(alpha) + r E, -alpha(E)).
Derivation sharp(const JacobiPair& jp, const JetSection& psi);
/// {l, m} = Lambda(dl, dm) + l E(m) - m E(l).
ScalarExpr jacobi_bracket(const JacobiPair& jp, const ScalarExpr& l, const ScalarExpr& m);
/// First jet (dl, l) of a section.
JetSection jet_of(const Chart& chart, const ScalarExpr& l);
/// The derivation m -> {l, m}, computed as sharp of the first jet of l.
Derivation hamiltonian_derivation(const JacobiPair& jp, const ScalarExpr& l);

/// Matrix of J-sharp: column j is the image of the j-th jet basis vector
/// (dx^1..dx^n, 1*) in derivation coordinates (d_1..d_n, 1).
Mat<ScalarExpr> sharp_matrix(const JacobiPair& jp);

}  // namespace djt
