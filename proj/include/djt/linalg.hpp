#pragma once

#include <Eigen/Core>
#include <vector>

#include "djt/error.hpp"
#include "djt/expr/rational.hpp"
#include "djt/expr/scalar_expr.hpp"

namespace djt {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using QMat = Mat<Rational>;
using QVec = Vec<Rational>;

/// Reduced row echelon form over an exact field, with the pivot columns.
template <class S>
struct Echelon {
  Mat<S> matrix;
  std::vector<Eigen::Index> pivots;
};

template <class S>
Echelon<S> rref(Mat<S> m) {
  using djt::is_zero;
  Echelon<S> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    m.row(piv).swap(m.row(row));
    S inv = S(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      S f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.matrix = std::move(m);
  return out;
}

template <class S>
Eigen::Index rank(const Mat<S>& m) {
  return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Basis of {x : m x = 0}, as columns.
template <class S>
Mat<S> nullspace(const Mat<S>& m) {
  Echelon<S> e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Mat<S> basis = Mat<S>::Zero(m.cols(), m.cols() - static_cast<Eigen::Index>(e.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], k) = -e.matrix(static_cast<Eigen::Index>(r), free);
    }
    ++k;
  }
  return basis;
}

/// Columns forming a basis of the column space of m (a subset of its columns).
template <class S>
Mat<S> column_basis(const Mat<S>& m) {
  Echelon<S> e = rref(m);
  Mat<S> out(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(e.pivots[k]);
  return out;
}

/// Exact inverse; throws DomainError when m is singular.
template <class S>
Mat<S> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<S>::Identity(n, n);
  Echelon<S> e = rref(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
    throw DomainError("singular matrix");
  }
  return e.matrix.rightCols(n);
}

/// Determinant by exact elimination.
template <class S>
S determinant(Mat<S> m) {
  using djt::is_zero;
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  S det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return S(0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det = det * m(c, c);
    S inv = S(1) / m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      S f = m(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

template <class S>
bool is_zero_matrix(const Mat<S>& m) {
  using djt::is_zero;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_zero(m(i, j))) return false;
    }
  }
  return true;
}

/// Entrywise evaluation of a symbolic matrix; throws DomainError at a pole.
QMat evaluate(const Mat<ScalarExpr>& m, std::span<const Rational> values);
Eigen::MatrixXd to_double(const QMat& m);

/// Determinant and inverse of a rational-function matrix via polynomial minors
/// over a common denominator; no intermediate fractions. Up to 24 columns.
ScalarExpr minor_determinant(const Mat<ScalarExpr>& m);
/// m^{-1} = adjugate / det with polynomial adjugate entries when m is polynomial.
struct ScaledInverse {
  Mat<ScalarExpr> adjugate;
  Polynomial det;
};
/// Both throw DomainError when the determinant vanishes identically.
ScaledInverse minor_scaled_inverse(const Mat<ScalarExpr>& m);
Mat<ScalarExpr> minor_inverse(const Mat<ScalarExpr>& m);

}  // namespace djt
