#include "polyirs/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyirs/errors.hpp"
#include "polyirs/linalg.hpp"

namespace polyirs {

std::size_t t_max(std::size_t n, std::size_t k, std::size_t l) {
  if (k >= n) throw InvalidParameters("t_max needs K < N");
  if (l < 1) throw InvalidParameters("t_max needs L >= 1");
  return l * (n - k) / (l + 1);
}

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NoConsistentT:
      return "no-consistent-t";
    case FailureReason::NotTValid:
      return "not-t-valid";
    case FailureReason::RankDeficient:
      return "rank-deficient";
    case FailureReason::SyndromeResidual:
      return "syndrome-residual";
  }
  return "unknown";
}

template <class F>
SyndromeSet<F> compute_syndromes(const GrsCode<F>& code, const Matrix<typename F::Elem>& received) {
  if (received.cols() != code.length()) throw UsageError("received word must have N columns");
  SyndromeSet<F> out{Matrix<typename F::Elem>(received.rows(), code.redundancy()),
                     Matrix<double>(received.rows(), code.redundancy())};
  for (std::size_t l = 0; l < received.rows(); ++l) {
    const auto s = code.syndromes(received.row(l));
    const auto scale = code.syndrome_scales(received.row(l));
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.values(l, i) = s[i];
      out.scales(l, i) = scale[i];
    }
  }
  return out;
}

template <class F>
StackedSystem<F> build_stacked(const F& field, const SyndromeSet<F>& syndromes, std::size_t t) {
  const std::size_t len = syndromes.length();
  if (t < 1 || t >= len) throw InvalidParameters("stacked system needs 1 <= t < N - K");
  const std::size_t rho = len - t;
  StackedSystem<F> sys{t, Matrix<typename F::Elem>(syndromes.layers() * rho, t), {}};
  sys.rhs.resize(syndromes.layers() * rho);
  for (std::size_t l = 0; l < syndromes.layers(); ++l) {
    for (std::size_t i = 0; i < rho; ++i) {
      for (std::size_t k = 0; k < t; ++k) sys.matrix(l * rho + i, k) = syndromes.values(l, i + k);
      sys.rhs[l * rho + i] = field.neg(syndromes.values(l, t + i));
    }
  }
  return sys;
}

template <class F>
StackedSystem<F> build_stacked(const GrsCode<F>& code, const Matrix<typename F::Elem>& received, std::size_t t) {
  const std::size_t limit = t_max(code.length(), code.dimension(), received.rows());
  if (t < 1 || t > limit)
    throw InvalidParameters("t = " + std::to_string(t) + " outside [1, " + std::to_string(limit) + "]");
  return build_stacked(code.field(), compute_syndromes(code, received), t);
}

namespace detail {

namespace {

// Rounding-noise floor of row i of layer l in S_L(t) lambda = a_L(t).
Matrix<double> row_floors(const SyndromeSet<RealField>& syn, std::size_t t) {
  const std::size_t rho = syn.length() - t;
  Matrix<double> floors(syn.layers(), rho);
  for (std::size_t l = 0; l < syn.layers(); ++l)
    for (std::size_t i = 0; i < rho; ++i) {
      double sum = syn.scales(l, t + i);
      for (std::size_t k = 0; k < t; ++k) sum += syn.scales(l, i + k);
      floors(l, i) = sum;
    }
  return floors;
}

StackedSystem<RealField> weighted_system(const RealField& f, const SyndromeSet<RealField>& syn, std::size_t t) {
  auto sys = build_stacked(f, syn, t);
  const auto floors = row_floors(syn, t);
  const std::size_t rho = floors.cols();
  for (std::size_t l = 0; l < floors.rows(); ++l)
    for (std::size_t i = 0; i < rho; ++i) {
      const double w = floors(l, i);
      if (!(w > 0.0)) continue;
      const std::size_t r = l * rho + i;
      for (double& v : sys.matrix.row(r)) v /= w;
      sys.rhs[r] /= w;
    }
  return sys;
}

}  // namespace

// Componentwise backward error of lambda against the syndrome noise floors:
// max over rows of |residual| / (scale_{t+i} + sum_k |lambda_{t-k}| scale_{i+k}).
double key_equation_backward_error(const SyndromeSet<RealField>& syn, std::size_t t,
                                   const std::vector<double>& lambda) {
  const std::size_t rho = syn.length() - t;
  double worst = 0.0;
  for (std::size_t l = 0; l < syn.layers(); ++l)
    for (std::size_t i = 0; i < rho; ++i) {
      double r = syn.values(l, t + i);
      double floor = syn.scales(l, t + i);
      for (std::size_t k = 0; k < t; ++k) {
        r += syn.values(l, i + k) * lambda[k];
        floor += std::abs(lambda[k]) * syn.scales(l, i + k);
      }
      if (r == 0.0) continue;
      worst = std::max(worst, floor > 0.0 ? std::abs(r) / floor : std::numeric_limits<double>::infinity());
    }
  return worst;
}

template <class F>
LinearSolution<typename F::Elem> solve_key_equation(const F& f, const SyndromeSet<F>& syn, std::size_t t) {
  if constexpr (F::kExact) {
    const auto sys = build_stacked(f, syn, t);
    return solve_linear(f, sys.matrix, sys.rhs);
  } else {
    const auto sys = weighted_system(f, syn, t);
    auto sol = solve_linear(f, sys.matrix, sys.rhs, /*equilibrate=*/true);
    sol.residual = key_equation_backward_error(syn, t, sol.solution);
    sol.reference = 1.0;
    sol.consistent = sol.residual <= f.tolerances().backward_tol;
    return sol;
  }
}

template <class F>
std::size_t key_equation_rank(const F& f, const SyndromeSet<F>& syn, std::size_t t) {
  return solve_key_equation(f, syn, t).rank;
}

}  // namespace detail

template <class F>
TValidity<F> is_t_valid(const GrsCode<F>& code, const ErrorLocator<F>& locator) {
  const F& f = code.field();
  const auto& c = locator.coefficients;
  const std::size_t t = locator.degree();
  TValidity<F> out;

  double coeff_scale = 0.0;
  for (const auto& v : c) coeff_scale += f.magnitude(v);
  if constexpr (F::kExact) {
    if (c[t] == f.zero()) return out;
  } else {
    if (f.negligible(c[t], coeff_scale, f.tolerances().eq_tol)) return out;
  }

  for (std::size_t j = 0; j < code.length(); ++j) {
    const auto alpha = code.alphas()[j];
    if (alpha == f.zero()) continue;  // 1 - z*0 never vanishes
    const auto z = f.inv(alpha);
    auto value = f.zero();
    for (std::size_t i = c.size(); i-- > 0;) value = f.add(f.mul(value, z), c[i]);
    bool root;
    if constexpr (F::kExact) {
      root = value == f.zero();
    } else {
      double slope = 0.0;
      for (std::size_t i = c.size(); i-- > 1;) slope = slope * z + static_cast<double>(i) * c[i];
      root = value == 0.0 || std::abs(value) <= f.tolerances().root_tol * std::abs(z * slope);
    }
    if (root) out.positions.push_back(j);
  }
  out.valid = out.positions.size() == t;
  return out;
}

template <class F>
std::optional<Matrix<typename F::Elem>> recover_error_values(const GrsCode<F>& code,
                                                             const std::vector<std::size_t>& positions,
                                                             const SyndromeSet<F>& syndromes) {
  const F& f = code.field();
  const std::size_t t = positions.size();
  const std::size_t len = syndromes.length();
  if (t > len) throw InvalidParameters("more error positions than syndromes");
  Matrix<typename F::Elem> basis(len, t);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = positions[i];
    auto p = code.dual_multipliers()[j];
    for (std::size_t k = 0; k < len; ++k) {
      basis(k, i) = p;
      p = f.mul(p, code.alphas()[j]);
    }
  }

  Matrix<typename F::Elem> values(syndromes.layers(), t, f.zero());
  for (std::size_t l = 0; l < syndromes.layers(); ++l) {
    const auto rhs = syndromes.values.row(l);
    if constexpr (F::kExact) {
      const auto sol = solve_linear(f, basis, rhs);
      if (!sol.consistent || sol.rank < t) return std::nullopt;
      for (std::size_t i = 0; i < t; ++i) values(l, i) = sol.solution[i];
    } else {
      Matrix<double> weighted = basis;
      std::vector<double> b(rhs.begin(), rhs.end());
      for (std::size_t k = 0; k < len; ++k) {
        const double w = syndromes.scales(l, k);
        if (!(w > 0.0)) continue;
        for (double& v : weighted.row(k)) v /= w;
        b[k] /= w;
      }
      const auto sol = solve_linear(f, weighted, b, /*equilibrate=*/true);
      if (sol.rank < t) return std::nullopt;
      for (std::size_t k = 0; k < len; ++k) {
        double fit = 0.0, floor = syndromes.scales(l, k);
        for (std::size_t i = 0; i < t; ++i) {
          fit += basis(k, i) * sol.solution[i];
          floor += std::abs(basis(k, i) * sol.solution[i]);
        }
        if (std::abs(fit - rhs[k]) > f.tolerances().backward_tol * floor) return std::nullopt;
      }
      for (std::size_t i = 0; i < t; ++i) values(l, i) = sol.solution[i];
    }
  }
  return values;
}

namespace detail {

template <class F>
bool all_syndromes_zero(const F& field, const SyndromeSet<F>& syndromes) {
  for (std::size_t l = 0; l < syndromes.layers(); ++l)
    for (std::size_t i = 0; i < syndromes.length(); ++i) {
      if constexpr (F::kExact) {
        if (syndromes.values(l, i) != field.zero()) return false;
      } else {
        if (!field.negligible(syndromes.values(l, i), syndromes.scales(l, i), field.tolerances().eq_tol))
          return false;
      }
    }
  return true;
}

namespace {

// Over the reals every syndrome of D-hat must sit at the rounding-noise level
// of the corresponding syndrome of R.
bool residual_syndromes_vanish(const RealField& f, const SyndromeSet<RealField>& before,
                               const SyndromeSet<RealField>& after) {
  const double tol = f.tolerances().backward_tol;
  for (std::size_t l = 0; l < after.layers(); ++l)
    for (std::size_t i = 0; i < after.length(); ++i) {
      const double floor = std::max(before.scales(l, i), after.scales(l, i));
      if (std::abs(after.values(l, i)) > tol * floor) return false;
    }
  return true;
}

}  // namespace

template <class F>
DecodeOutcome<F> correct_with_locator(const GrsCode<F>& code, const Matrix<typename F::Elem>& received,
                                      const SyndromeSet<F>& syndromes, ErrorLocator<F> locator) {
  const F& f = code.field();
  auto roots = is_t_valid(code, locator);
  if (!roots.valid) return DecodeFailure{FailureReason::NotTValid};
  auto values = recover_error_values(code, roots.positions, syndromes);
  if (!values) return DecodeFailure{FailureReason::SyndromeResidual};

  Matrix<typename F::Elem> corrected = received;
  for (std::size_t l = 0; l < corrected.rows(); ++l)
    for (std::size_t i = 0; i < roots.positions.size(); ++i) {
      auto& cell = corrected(l, roots.positions[i]);
      cell = f.sub(cell, (*values)(l, i));
    }
  if constexpr (!F::kExact) {
    if (!residual_syndromes_vanish(f, syndromes, compute_syndromes(code, corrected)))
      return DecodeFailure{FailureReason::SyndromeResidual};
  }
  return DecodeSuccess<F>{std::move(corrected), std::move(locator), std::move(roots.positions), std::move(*values)};
}

}  // namespace detail

namespace {

template <class F>
DecodeSuccess<F> unchanged(const F& f, const Matrix<typename F::Elem>& received) {
  return DecodeSuccess<F>{received, ErrorLocator<F>{{f.one()}}, {}, Matrix<typename F::Elem>(received.rows(), 0)};
}

}  // namespace

template <class F>
DecodeOutcome<F> cpda_decode(const GrsCode<F>& code, const Matrix<typename F::Elem>& received) {
  const F& f = code.field();
  const auto syn = compute_syndromes(code, received);
  if (detail::all_syndromes_zero(f, syn)) return unchanged(f, received);

  const std::size_t limit = t_max(code.length(), code.dimension(), received.rows());
  for (std::size_t t = 1; t <= limit; ++t) {
    const auto sol = detail::solve_key_equation(f, syn, t);
    if (!sol.consistent) continue;
    // Every larger t admits Lambda(z)(1 + cz) as well, so a rank-deficient
    // first consistent system can never be repaired by continuing the scan.
    if (sol.rank < t) return DecodeFailure{FailureReason::RankDeficient};
    ErrorLocator<F> locator{std::vector<typename F::Elem>(t + 1)};
    locator.coefficients[0] = f.one();
    for (std::size_t i = 0; i < t; ++i) locator.coefficients[t - i] = sol.solution[i];
    return detail::correct_with_locator(code, received, syn, std::move(locator));
  }
  return DecodeFailure{FailureReason::NoConsistentT};
}

#define POLYIRS_INSTANTIATE(F)                                                                                \
  template SyndromeSet<F> compute_syndromes(const GrsCode<F>&, const Matrix<F::Elem>&);                       \
  template StackedSystem<F> build_stacked(const F&, const SyndromeSet<F>&, std::size_t);                      \
  template StackedSystem<F> build_stacked(const GrsCode<F>&, const Matrix<F::Elem>&, std::size_t);            \
  template TValidity<F> is_t_valid(const GrsCode<F>&, const ErrorLocator<F>&);                                \
  template std::optional<Matrix<F::Elem>> recover_error_values(const GrsCode<F>&,                             \
                                                               const std::vector<std::size_t>&,               \
                                                               const SyndromeSet<F>&);                        \
  template LinearSolution<F::Elem> detail::solve_key_equation(const F&, const SyndromeSet<F>&, std::size_t);     \
  template std::size_t detail::key_equation_rank(const F&, const SyndromeSet<F>&, std::size_t);               \
  template bool detail::all_syndromes_zero(const F&, const SyndromeSet<F>&);                                  \
  template DecodeOutcome<F> detail::correct_with_locator(const GrsCode<F>&, const Matrix<F::Elem>&,           \
                                                         const SyndromeSet<F>&, ErrorLocator<F>);             \
  template DecodeOutcome<F> cpda_decode(const GrsCode<F>&, const Matrix<F::Elem>&);

POLYIRS_INSTANTIATE(PrimeField)
POLYIRS_INSTANTIATE(RealField)

#undef POLYIRS_INSTANTIATE

}  // namespace polyirs
