#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyirs/field.hpp"
#include "polyirs/matrix.hpp"

namespace polyirs {

/// Result of solving A x = b.
///
/// `solution` is a particular solution when the system is consistent: free
/// variables are zero over GF(p); the minimum-norm truncated least-squares
/// solution over the reals. Over the reals `consistent` is the relative
/// residual test ||Ax - b|| <= residual_tol * max(||b||, sigma_max ||x||).
template <class Elem>
struct LinearSolution {
  std::size_t rank = 0;
  bool consistent = false;
  std::vector<Elem> solution;
  double sigma_max = 0.0;  // reals only
  double residual = 0.0;   // reals only
  double reference = 0.0;  // reals only: max(||b||, sigma_max ||x||), the consistency yardstick
};

LinearSolution<PrimeField::Elem> solve_linear(const PrimeField& f, const Matrix<PrimeField::Elem>& a,
                                              std::span<const PrimeField::Elem> b);

/// SVD based. Numerical rank counts sigma_i > rank_tol * sigma_max * max(rows, cols).
/// With `equilibrate` the columns are scaled to unit norm first (rank and
/// residual are then judged on the scaled system; the solution is unscaled).
LinearSolution<double> solve_linear(const RealField& f, const Matrix<double>& a, std::span<const double> b,
                                    bool equilibrate = false);

std::size_t matrix_rank(const PrimeField& f, const Matrix<PrimeField::Elem>& a);
std::size_t matrix_rank(const RealField& f, const Matrix<double>& a);

/// 2-norm condition number of the Gram matrix S^T S, formed explicitly.
/// Returns +inf when S^T S is singular.
double gram_condition_number(const Matrix<double>& s);

}  // namespace polyirs
