#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyirs/field.hpp"
#include "polyirs/matrix.hpp"
#include "polyirs/rng.hpp"

namespace polyirs {

enum class ErrorKind {
  Uref,  // nonzero columns uniform over GF(q)^L \ {0}
  Gre,   // i.i.d. Gaussian entries in the corrupted columns
};

struct ErrorModelSpec {
  ErrorKind kind = ErrorKind::Uref;
  std::size_t t = 0;  // Hamming weight (number of corrupted workers)
  std::uint64_t seed = 0;
  double mean = 0.0;  // GRE only
  double variance = 1.0;
};

template <class F>
struct ErrorMatrix {
  Matrix<typename F::Elem> values;  // L x N
  std::vector<std::size_t> support;  // corrupted columns, ascending
};

/// Exactly spec.t nonzero columns; support uniform over all t-subsets.
/// Throws InvalidParameters for t > N or a model that does not match the field.
template <class F>
ErrorMatrix<F> sample_error(const F& field, const ErrorModelSpec& spec, std::size_t rows, std::size_t cols, Rng& rng);

/// Seeds a fresh Rng from spec.seed.
template <class F>
ErrorMatrix<F> sample_error(const F& field, const ErrorModelSpec& spec, std::size_t rows, std::size_t cols);

/// Number of columns with a nonzero entry. Over the reals an entry counts as
/// zero under is_zero with scale = max magnitude in the same column of
/// `reference` (or 1 when no reference is given).
template <class F>
std::size_t hamming_weight(const F& field, const Matrix<typename F::Elem>& e,
                           const Matrix<typename F::Elem>* reference = nullptr);

/// R = D + E.
template <class F>
Matrix<typename F::Elem> inject(const F& field, const Matrix<typename F::Elem>& word,
                                const Matrix<typename F::Elem>& errors);

}  // namespace polyirs
