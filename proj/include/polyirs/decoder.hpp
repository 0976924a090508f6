#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyirs/field.hpp"
#include "polyirs/grs.hpp"
#include "polyirs/linalg.hpp"
#include "polyirs/matrix.hpp"

namespace polyirs {

/// Syndromes of every row of an L x N received word: values(l, i) = S_i^(l).
/// `scales` holds sum_j |u_j R(l,j) alpha_j^i|, the magnitude reference for
/// real-field zero tests.
template <class F>
struct SyndromeSet {
  Matrix<typename F::Elem> values;  // L x (N - K)
  Matrix<double> scales;            // L x (N - K)

  std::size_t layers() const { return values.rows(); }
  std::size_t length() const { return values.cols(); }
};

template <class F>
SyndromeSet<F> compute_syndromes(const GrsCode<F>& code, const Matrix<typename F::Elem>& received);

/// S_L(t) lambda = a_L(t): per layer the (N-K-t) x t Hankel block
/// S(i, k) = S_{i+k} and right-hand side a_i = -S_{t+i}, stacked over layers.
/// The unknown is ordered (lambda_t, ..., lambda_1).
template <class F>
struct StackedSystem {
  std::size_t t = 0;
  Matrix<typename F::Elem> matrix;
  std::vector<typename F::Elem> rhs;
};

/// Throws InvalidParameters unless 1 <= t <= t_max(N, K, L).
template <class F>
StackedSystem<F> build_stacked(const GrsCode<F>& code, const Matrix<typename F::Elem>& received, std::size_t t);

/// No range check beyond 1 <= t < N - K.
template <class F>
StackedSystem<F> build_stacked(const F& field, const SyndromeSet<F>& syndromes, std::size_t t);

/// floor(L (N - K) / (L + 1)).
std::size_t t_max(std::size_t n, std::size_t k, std::size_t l);

/// Lambda(z) = 1 + lambda_1 z + ... + lambda_t z^t; coefficients[0] == 1.
template <class F>
struct ErrorLocator {
  std::vector<typename F::Elem> coefficients;

  std::size_t degree() const { return coefficients.size() - 1; }
  friend bool operator==(const ErrorLocator&, const ErrorLocator&) = default;
};

enum class FailureReason {
  NoConsistentT,     // no t <= t_max admits a consistent key-equation system
  NotTValid,         // locator lacks t distinct roots among alpha_j^{-1}
  RankDeficient,     // the minimal consistent system has no unique solution
  SyndromeResidual,  // error values cannot reproduce the syndromes
};

std::string to_string(FailureReason reason);

template <class F>
struct DecodeSuccess {
  Matrix<typename F::Elem> corrected;  // D-hat
  ErrorLocator<F> locator;
  std::vector<std::size_t> locations;  // ascending
  Matrix<typename F::Elem> values;     // L x t, column i belongs to locations[i]

  friend bool operator==(const DecodeSuccess&, const DecodeSuccess&) = default;
};

struct DecodeFailure {
  FailureReason reason;
  friend bool operator==(const DecodeFailure&, const DecodeFailure&) = default;
};

template <class F>
class DecodeOutcome {
 public:
  DecodeOutcome(DecodeSuccess<F> s) : value_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  DecodeOutcome(DecodeFailure f) : value_(f) {}                 // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<DecodeSuccess<F>>(value_); }
  const DecodeSuccess<F>& success() const { return std::get<DecodeSuccess<F>>(value_); }
  const DecodeFailure& failure() const { return std::get<DecodeFailure>(value_); }

  friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;

 private:
  std::variant<DecodeSuccess<F>, DecodeFailure> value_;
};

template <class F>
struct TValidity {
  bool valid = false;
  std::vector<std::size_t> positions;  // j with Lambda(alpha_j^{-1}) = 0, ascending
};

/// Root search over the candidate points alpha_j^{-1}. Valid iff lambda_t != 0
/// and exactly t candidates are roots. Over the reals a candidate z is a root
/// when the Newton correction is small relative to z:
/// |Lambda(z)| <= root_tol * |z Lambda'(z)|.
template <class F>
TValidity<F> is_t_valid(const GrsCode<F>& code, const ErrorLocator<F>& locator);

/// Per layer, solves sum_i u_{j_i} e_i alpha_{j_i}^k = S_k for k in [0, N-K-1].
/// Empty when some layer is inconsistent (exactly over GF(p); over the reals
/// when some equation misses by more than backward_tol times its noise floor).
template <class F>
std::optional<Matrix<typename F::Elem>> recover_error_values(const GrsCode<F>& code,
                                                             const std::vector<std::size_t>& positions,
                                                             const SyndromeSet<F>& syndromes);

/// Collaborative Peterson decoding. Scans t = 1..t_max for the first t whose
/// stacked system is consistent; that system must have full column rank and
/// its locator must be t-valid. Never throws on a decoding impasse.
template <class F>
DecodeOutcome<F> cpda_decode(const GrsCode<F>& code, const Matrix<typename F::Elem>& received);

/// Shortest linear recurrence generating every syndrome sequence.
template <class F>
struct ShiftRegister {
  std::size_t length = 0;
  std::vector<typename F::Elem> connection;  // length + 1 coefficients, [0] == 1
};

/// Multi-sequence shift-register synthesis (Berlekamp-Massey generalised to
/// L sequences sharing one connection polynomial).
template <class F>
ShiftRegister<F> synthesize_shift_register(const F& field, const SyndromeSet<F>& syndromes);

/// Collaborative decoding via shift-register synthesis. Produces the same
/// outcome as cpda_decode (bit-identical over GF(p)).
template <class F>
DecodeOutcome<F> mssr_decode(const GrsCode<F>& code, const Matrix<typename F::Elem>& received);

namespace detail {

/// The key-equation solve shared by both decoders. Over GF(p) this is exact
/// elimination on S_L(t). Over the reals every row is first divided by its
/// rounding-noise floor (built from the syndrome magnitude scales) and the
/// columns are equilibrated, so that rows of very different magnitude carry
/// equal weight in the rank and consistency decisions.
template <class F>
LinearSolution<typename F::Elem> solve_key_equation(const F& field, const SyndromeSet<F>& syndromes, std::size_t t);

/// Rank of the (weighted, over the reals) key-equation matrix.
template <class F>
std::size_t key_equation_rank(const F& field, const SyndromeSet<F>& syndromes, std::size_t t);

template <class F>
bool all_syndromes_zero(const F& field, const SyndromeSet<F>& syndromes);

/// Locator -> roots -> error values -> corrected word. Shared tail of both decoders.
template <class F>
DecodeOutcome<F> correct_with_locator(const GrsCode<F>& code, const Matrix<typename F::Elem>& received,
                                      const SyndromeSet<F>& syndromes, ErrorLocator<F> locator);

}  // namespace detail

}  // namespace polyirs
