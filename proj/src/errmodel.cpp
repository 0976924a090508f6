#include "polyirs/errmodel.hpp"

#include <cmath>

#include "polyirs/errors.hpp"

namespace polyirs {

template <class F>
ErrorMatrix<F> sample_error(const F& field, const ErrorModelSpec& spec, std::size_t rows, std::size_t cols, Rng& rng) {
  if (spec.t > cols) throw InvalidParameters("error weight t exceeds the number of columns");
  if constexpr (F::kExact) {
    if (spec.kind != ErrorKind::Uref) throw InvalidParameters("the GRE model needs the real field");
  } else {
    if (spec.kind != ErrorKind::Gre) throw InvalidParameters("the UREF model needs a finite field");
    if (!(spec.variance > 0.0) || !std::isfinite(spec.mean))
      throw InvalidParameters("GRE needs a finite mean and positive variance");
  }

  ErrorMatrix<F> out{Matrix<typename F::Elem>(rows, cols, field.zero()), rng.subset(cols, spec.t)};
  std::vector<typename F::Elem> column(rows);
  for (auto c : out.support) {
    bool nonzero = false;
    while (!nonzero) {  // resample the all-zero column
      for (auto& v : column) {
        if constexpr (F::kExact) {
          v = rng.uniform_below(field.modulus());
        } else {
          v = rng.normal(spec.mean, std::sqrt(spec.variance));
        }
        nonzero = nonzero || v != field.zero();
      }
      if (rows == 0) break;
    }
    out.values.set_column(c, column);
  }
  return out;
}

template <class F>
ErrorMatrix<F> sample_error(const F& field, const ErrorModelSpec& spec, std::size_t rows, std::size_t cols) {
  Rng rng(spec.seed);
  return sample_error(field, spec, rows, cols, rng);
}

template <class F>
std::size_t hamming_weight(const F& field, const Matrix<typename F::Elem>& e, const Matrix<typename F::Elem>* reference) {
  if (reference) require_same_shape(e, *reference, "reference shape must match the error matrix");
  std::size_t weight = 0;
  for (std::size_t c = 0; c < e.cols(); ++c) {
    double scale = 1.0;
    if (reference) {
      scale = 0.0;
      for (std::size_t r = 0; r < e.rows(); ++r) scale = std::max(scale, field.magnitude((*reference)(r, c)));
    }
    for (std::size_t r = 0; r < e.rows(); ++r) {
      if (!field.is_zero(e(r, c), scale)) {
        ++weight;
        break;
      }
    }
  }
  return weight;
}

template <class F>
Matrix<typename F::Elem> inject(const F& field, const Matrix<typename F::Elem>& word,
                                const Matrix<typename F::Elem>& errors) {
  require_same_shape(word, errors, "error matrix shape must match the codeword");
  Matrix<typename F::Elem> out(word.rows(), word.cols());
  for (std::size_t r = 0; r < word.rows(); ++r)
    for (std::size_t c = 0; c < word.cols(); ++c) out(r, c) = field.add(word(r, c), errors(r, c));
  return out;
}

#define POLYIRS_INSTANTIATE(F)                                                                             \
  template ErrorMatrix<F> sample_error(const F&, const ErrorModelSpec&, std::size_t, std::size_t, Rng&);   \
  template ErrorMatrix<F> sample_error(const F&, const ErrorModelSpec&, std::size_t, std::size_t);         \
  template std::size_t hamming_weight(const F&, const Matrix<F::Elem>&, const Matrix<F::Elem>*);           \
  template Matrix<F::Elem> inject(const F&, const Matrix<F::Elem>&, const Matrix<F::Elem>&);

POLYIRS_INSTANTIATE(PrimeField)
POLYIRS_INSTANTIATE(RealField)

#undef POLYIRS_INSTANTIATE

}  // namespace polyirs
