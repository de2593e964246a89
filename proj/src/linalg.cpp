#include "djt/linalg.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace djt {

QMat evaluate(const Mat<ScalarExpr>& m, std::span<const Rational> values) {
  QMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(values);
  }
  return out;
}

Eigen::MatrixXd to_double(const QMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  }
  return out;
}

namespace {

using PolyRows = std::vector<std::vector<Polynomial>>;

// m = P / L with P polynomial and L the lcm of the entry denominators.
Polynomial clear_denominators(const Mat<ScalarExpr>& m, PolyRows& p) {
  Polynomial l(Rational(1));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Polynomial& d = m(i, j).denominator();
      if (!d.is_constant()) l = l * d.divide_exact(gcd(l, d));
    }
  }
  p.assign(static_cast<std::size_t>(m.rows()), std::vector<Polynomial>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      p[i][j] = m(i, j).numerator() * l.divide_exact(m(i, j).denominator());
    }
  }
  return l;
}

// Laplace expansion of the rows in `rows` against the column set `cols`, memoized on `cols`.
class Minors {
 public:
  Minors(const PolyRows& p, std::vector<std::size_t> rows) : p_(p), rows_(std::move(rows)) {}

  const Polynomial& operator()(std::uint32_t cols) {
    auto it = memo_.find(cols);
    if (it != memo_.end()) return it->second;
    Polynomial det;
    if (cols == 0) {
      det = Polynomial(Rational(1));
    } else {
      const auto& row = p_[rows_[rows_.size() - static_cast<std::size_t>(std::popcount(cols))]];
      bool negate = false;
      for (std::uint32_t rest = cols; rest != 0; rest &= rest - 1) {
        std::uint32_t bit = rest & (~rest + 1);
        const Polynomial& a = row[static_cast<std::size_t>(std::countr_zero(bit))];
        if (!a.is_zero()) {
          const Polynomial& sub = (*this)(cols & ~bit);
          if (!sub.is_zero()) {
            if (negate) det -= a * sub;
            else det += a * sub;
          }
        }
        negate = !negate;
      }
    }
    return memo_.emplace(cols, std::move(det)).first->second;
  }

 private:
  const PolyRows& p_;
  std::vector<std::size_t> rows_;
  std::unordered_map<std::uint32_t, Polynomial> memo_;
};

std::uint32_t all_columns(Eigen::Index n) { return n == 0 ? 0 : (std::uint32_t(1) << n) - 1; }

void check_square(const Mat<ScalarExpr>& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix is not square");
  if (m.cols() > 24) throw DomainError("matrix too large for minor expansion");
}

}  // namespace

ScalarExpr minor_determinant(const Mat<ScalarExpr>& m) {
  check_square(m);
  PolyRows p;
  Polynomial l = clear_denominators(m, p);
  std::vector<std::size_t> rows(p.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  Polynomial det = Minors(p, rows)(all_columns(m.cols()));
  Polynomial ln(Rational(1));
  for (Eigen::Index i = 0; i < m.rows(); ++i) ln = ln * l;
  return ScalarExpr(det, ln);
}

ScaledInverse minor_scaled_inverse(const Mat<ScalarExpr>& m) {
  check_square(m);
  const auto n = static_cast<std::size_t>(m.rows());
  PolyRows p;
  Polynomial l = clear_denominators(m, p);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Polynomial det = Minors(p, all)(all_columns(m.cols()));
  if (det.is_zero()) throw DomainError("matrix is singular");

  // inverse = L adj(P) / det(P), adj(P)(j, i) = (-1)^(i+j) M_ij.
  ScaledInverse out{Mat<ScalarExpr>(m.rows(), m.cols()), det};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != i) rows.push_back(r);
    }
    Minors minors(p, rows);
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial c = minors(all_columns(m.cols()) & ~(std::uint32_t(1) << j));
      if ((i + j) % 2 == 1) c = -c;
      out.adjugate(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = ScalarExpr(c * l);
    }
  }
  return out;
}

Mat<ScalarExpr> minor_inverse(const Mat<ScalarExpr>& m) {
  ScaledInverse s = minor_scaled_inverse(m);
  Mat<ScalarExpr> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = s.adjugate(i, j) / ScalarExpr(s.det);
  }
  return out;
}

}  // namespace djt
