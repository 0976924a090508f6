#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "polyirs/field.hpp"
#include "polyirs/grs.hpp"
#include "polyirs/matrix.hpp"

namespace polyirs {

/// Exponent pair (a, b) such that worker i evaluates
/// sum_{j,k} A_j^T B_k x_i^{j a + k b}. Always (1, m), which maps (j, k)
/// onto the contiguous range j + k m in [0, mn).
std::pair<std::size_t, std::size_t> choose_exponents(std::size_t m, std::size_t n);

template <class F>
struct PolyCodeParams {
  using Elem = typename F::Elem;

  F field;
  std::size_t m = 1;        // column blocks of A
  std::size_t n = 1;        // column blocks of B
  std::size_t workers = 1;  // N
  std::vector<Elem> xs;     // worker evaluation points
  std::size_t exp_a = 1;
  std::size_t exp_b = 1;

  /// Params with choose_exponents(m, n).
  static PolyCodeParams make(F field, std::size_t m, std::size_t n, std::vector<Elem> xs);

  /// Throws InvalidParameters unless xs are distinct, N >= mn, and the mn
  /// exponents j exp_a + k exp_b are distinct.
  void validate() const;

  std::size_t exponent(std::size_t j, std::size_t k) const { return j * exp_a + k * exp_b; }
  /// Degree bound of the product polynomial: max exponent + 1 (= mn for (1, m)).
  std::size_t code_dimension() const;
};

template <class F>
struct WorkerTask {
  std::size_t worker = 0;
  Matrix<typename F::Elem> a_tilde;  // s x r/m
  Matrix<typename F::Elem> b_tilde;  // s x r'/n
};

/// Interleaved codeword together with the GRS code its rows belong to.
template <class F>
struct IrsAssembly {
  Matrix<typename F::Elem> word;  // L x N, column i = vectorize(C~_i)
  GrsCode<F> code;
  std::size_t block_rows = 0;  // r/m
  std::size_t block_cols = 0;  // r'/n
};

/// A~_i = sum_j A_j x_i^{j a},  B~_i = sum_k B_k x_i^{k b}.
template <class F>
std::vector<WorkerTask<F>> encode_tasks(const PolyCodeParams<F>& params, const Matrix<typename F::Elem>& a,
                                        const Matrix<typename F::Elem>& b);

/// C~_i = A~_i^T B~_i.
template <class F>
Matrix<typename F::Elem> worker_compute(const F& field, const WorkerTask<F>& task);

/// Row-major flattening: w[i * cols + j] = W(i, j).
template <class T>
std::vector<T> vectorize(const Matrix<T>& w) {
  return w.data();
}

template <class F>
IrsAssembly<F> assemble_irs(const PolyCodeParams<F>& params, const std::vector<Matrix<typename F::Elem>>& outputs);

/// Interpolates every row of a corrected interleaved word and places the
/// coefficient of x^{j a + k b} of row p (r'/n) + q at A^T B entry
/// (j r/m + p, k r'/n + q). Throws NotACodeword for an inconsistent row.
template <class F>
Matrix<typename F::Elem> recover_product(const PolyCodeParams<F>& params, const IrsAssembly<F>& corrected);

/// Plain A^T B over the field.
template <class F>
Matrix<typename F::Elem> transpose_product(const F& field, const Matrix<typename F::Elem>& a,
                                           const Matrix<typename F::Elem>& b);

}  // namespace polyirs
