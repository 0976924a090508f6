#include "polyirs/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace polyirs {

namespace {

using Fp = PrimeField::Elem;

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  return m;
}

// Row-reduces [A | b] in place; returns pivot column of each pivot row.
std::vector<std::size_t> row_reduce(const PrimeField& f, Matrix<Fp>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const Fp inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Fp factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

LinearSolution<Fp> solve_linear(const PrimeField& f, const Matrix<Fp>& a, std::span<const Fp> b) {
  if (b.size() != a.rows()) throw UsageError("right-hand side length mismatch");
  const std::size_t n = a.cols();
  Matrix<Fp> aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  // Reducing over all n+1 columns: a pivot in the last column means b is
  // outside the column space.
  const auto pivots = row_reduce(f, aug, n + 1);
  LinearSolution<Fp> out;
  out.consistent = pivots.empty() || pivots.back() != n;
  out.rank = out.consistent ? pivots.size() : pivots.size() - 1;
  out.solution.assign(n, 0);
  if (out.consistent) {
    for (std::size_t i = 0; i < pivots.size(); ++i) out.solution[pivots[i]] = aug(i, n);
  }
  return out;
}

std::size_t matrix_rank(const PrimeField& f, const Matrix<Fp>& a) {
  Matrix<Fp> m = a;
  return row_reduce(f, m, a.cols()).size();
}

LinearSolution<double> solve_linear(const RealField& f, const Matrix<double>& a, std::span<const double> b,
                                    bool equilibrate) {
  if (b.size() != a.rows()) throw UsageError("right-hand side length mismatch");
  const auto& tol = f.tolerances();
  LinearSolution<double> out;
  out.solution.assign(a.cols(), 0.0);
  if (a.cols() == 0) {
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    out.residual = rhs.norm();
    out.consistent = out.residual == 0.0;
    return out;
  }

  Eigen::MatrixXd m = to_eigen(a);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(m.cols());
  if (equilibrate) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double nrm = m.col(c).norm();
      if (nrm > 0.0) {
        scale(c) = 1.0 / nrm;
        m.col(c) *= scale(c);
      }
    }
  }
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  out.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff =
      tol.rank_tol * out.sigma_max * static_cast<double>(std::max(m.rows(), m.cols()));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  out.rank = static_cast<std::size_t>(rank);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(m.cols());
  if (rank > 0) {
    const Eigen::VectorXd coeff = svd.matrixU().leftCols(rank).transpose() * rhs;
    y = svd.matrixV().leftCols(rank) * coeff.cwiseQuotient(sv.head(rank));
  }
  out.residual = (m * y - rhs).norm();
  const double ref = std::max(rhs.norm(), out.sigma_max * y.norm());
  out.reference = ref;
  out.consistent = ref == 0.0 ? out.residual == 0.0 : out.residual <= tol.residual_tol * ref;

  const Eigen::VectorXd x = y.cwiseProduct(scale);
  for (Eigen::Index i = 0; i < x.size(); ++i) out.solution[static_cast<std::size_t>(i)] = x(i);
  return out;
}

std::size_t matrix_rank(const RealField& f, const Matrix<double>& a) {
  std::vector<double> zeros(a.rows(), 0.0);
  return solve_linear(f, a, zeros).rank;
}

double gram_condition_number(const Matrix<double>& s) {
  if (s.cols() == 0) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd m = to_eigen(s);
  const Eigen::MatrixXd gram = m.transpose() * m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace polyirs
