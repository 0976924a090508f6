#include "polyirs/polycode.hpp"

#include <algorithm>
#include <set>

#include "polyirs/errors.hpp"

namespace polyirs {

std::pair<std::size_t, std::size_t> choose_exponents(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw InvalidParameters("m and n must be at least 1");
  return {1, m};
}

template <class F>
PolyCodeParams<F> PolyCodeParams<F>::make(F field, std::size_t m, std::size_t n, std::vector<Elem> xs) {
  PolyCodeParams p{std::move(field), m, n, xs.size(), std::move(xs), 1, 1};
  std::tie(p.exp_a, p.exp_b) = choose_exponents(m, n);
  p.validate();
  return p;
}

template <class F>
void PolyCodeParams<F>::validate() const {
  if (m < 1 || n < 1) throw InvalidParameters("m and n must be at least 1");
  if (xs.size() != workers) throw InvalidParameters("need exactly one evaluation point per worker");
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw InvalidParameters("worker evaluation points must be distinct");
  std::set<std::size_t> seen;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (!seen.insert(exponent(j, k)).second) throw InvalidParameters("exponents j*a + k*b are not distinct");
  if (workers <= code_dimension()) throw InvalidParameters("need more workers than the code dimension");
}

template <class F>
std::size_t PolyCodeParams<F>::code_dimension() const {
  return exponent(m - 1, n - 1) + 1;
}

template <class F>
std::vector<WorkerTask<F>> encode_tasks(const PolyCodeParams<F>& params, const Matrix<typename F::Elem>& a,
                                        const Matrix<typename F::Elem>& b) {
  params.validate();
  const F& f = params.field;
  if (a.rows() != b.rows()) throw InvalidParameters("A and B must have the same number of rows");
  if (a.cols() % params.m != 0 || b.cols() % params.n != 0)
    throw InvalidParameters("column counts must be divisible by the partition counts");
  const std::size_t s = a.rows();
  const std::size_t wa = a.cols() / params.m;
  const std::size_t wb = b.cols() / params.n;

  std::vector<WorkerTask<F>> tasks;
  tasks.reserve(params.workers);
  for (std::size_t i = 0; i < params.workers; ++i) {
    WorkerTask<F> task{i, Matrix<typename F::Elem>(s, wa, f.zero()), Matrix<typename F::Elem>(s, wb, f.zero())};
    for (std::size_t j = 0; j < params.m; ++j) {
      const auto w = f.pow(params.xs[i], j * params.exp_a);
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < wa; ++c)
          task.a_tilde(r, c) = f.add(task.a_tilde(r, c), f.mul(a(r, j * wa + c), w));
    }
    for (std::size_t k = 0; k < params.n; ++k) {
      const auto w = f.pow(params.xs[i], k * params.exp_b);
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < wb; ++c)
          task.b_tilde(r, c) = f.add(task.b_tilde(r, c), f.mul(b(r, k * wb + c), w));
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

template <class F>
Matrix<typename F::Elem> transpose_product(const F& field, const Matrix<typename F::Elem>& a,
                                           const Matrix<typename F::Elem>& b) {
  if (a.rows() != b.rows()) throw UsageError("A^T B needs matching row counts");
  Matrix<typename F::Elem> c(a.cols(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto acc = field.zero();
      for (std::size_t r = 0; r < a.rows(); ++r) acc = field.add(acc, field.mul(a(r, i), b(r, j)));
      c(i, j) = acc;
    }
  return c;
}

template <class F>
Matrix<typename F::Elem> worker_compute(const F& field, const WorkerTask<F>& task) {
  return transpose_product(field, task.a_tilde, task.b_tilde);
}

template <class F>
IrsAssembly<F> assemble_irs(const PolyCodeParams<F>& params, const std::vector<Matrix<typename F::Elem>>& outputs) {
  params.validate();
  if (outputs.size() != params.workers) throw InvalidParameters("missing worker outputs");
  const std::size_t rows = outputs.front().rows();
  const std::size_t cols = outputs.front().cols();
  if (rows == 0 || cols == 0) throw InvalidParameters("empty worker output");
  Matrix<typename F::Elem> word(rows * cols, params.workers);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].rows() != rows || outputs[i].cols() != cols)
      throw InvalidParameters("worker " + std::to_string(i) + " returned a matrix of the wrong shape");
    word.set_column(i, vectorize(outputs[i]));
  }
  auto code = GrsCode<F>::make(params.field, params.code_dimension(), params.xs);
  return IrsAssembly<F>{std::move(word), std::move(code), rows, cols};
}

template <class F>
Matrix<typename F::Elem> recover_product(const PolyCodeParams<F>& params, const IrsAssembly<F>& corrected) {
  params.validate();
  const auto& word = corrected.word;
  if (word.cols() != params.workers || word.rows() != corrected.block_rows * corrected.block_cols)
    throw InvalidParameters("corrected word has the wrong shape");
  Matrix<typename F::Elem> product(corrected.block_rows * params.m, corrected.block_cols * params.n,
                                   params.field.zero());
  for (std::size_t row = 0; row < word.rows(); ++row) {
    const std::size_t p = row / corrected.block_cols;
    const std::size_t q = row % corrected.block_cols;
    const auto coeffs = corrected.code.interpolate(word.row(row));
    for (std::size_t j = 0; j < params.m; ++j)
      for (std::size_t k = 0; k < params.n; ++k)
        product(j * corrected.block_rows + p, k * corrected.block_cols + q) = coeffs[params.exponent(j, k)];
  }
  return product;
}

#define POLYIRS_INSTANTIATE(F)                                                                                  \
  template struct PolyCodeParams<F>;                                                                            \
  template std::vector<WorkerTask<F>> encode_tasks(const PolyCodeParams<F>&, const Matrix<F::Elem>&,            \
                                                   const Matrix<F::Elem>&);                                     \
  template Matrix<F::Elem> worker_compute(const F&, const WorkerTask<F>&);                                      \
  template IrsAssembly<F> assemble_irs(const PolyCodeParams<F>&, const std::vector<Matrix<F::Elem>>&);          \
  template Matrix<F::Elem> recover_product(const PolyCodeParams<F>&, const IrsAssembly<F>&);                    \
  template Matrix<F::Elem> transpose_product(const F&, const Matrix<F::Elem>&, const Matrix<F::Elem>&);

POLYIRS_INSTANTIATE(PrimeField)
POLYIRS_INSTANTIATE(RealField)

#undef POLYIRS_INSTANTIATE

}  // namespace polyirs
