#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polyirs/field.hpp"

namespace polyirs {

/// Generalized Reed-Solomon code GRS(F, N, K, alpha, v).
///
/// Codewords are c_i = v_i m(alpha_i) for messages m of degree < K. The dual
/// multipliers u satisfy u_i^{-1} = v_i prod_{j != i} (alpha_i - alpha_j), so
/// that sum_j u_j c_j alpha_j^i = 0 for every codeword and i in [0, N-K-1].
template <class F>
class GrsCode {
 public:
  using Elem = typename F::Elem;
  using Message = std::vector<Elem>;
  using Codeword = std::vector<Elem>;

  /// Throws InvalidParameters for duplicate alphas, a zero v_i, K = 0 or
  /// K >= N, or length mismatches.
  static GrsCode make(F field, std::size_t n, std::size_t k, std::vector<Elem> alphas, std::vector<Elem> v);
  /// Same with v = all-ones.
  static GrsCode make(F field, std::size_t k, std::vector<Elem> alphas);

  const F& field() const { return field_; }
  std::size_t length() const { return alphas_.size(); }
  std::size_t dimension() const { return k_; }
  std::size_t redundancy() const { return length() - k_; }
  std::size_t min_distance() const { return length() - k_ + 1; }

  std::span<const Elem> alphas() const { return alphas_; }
  std::span<const Elem> multipliers() const { return v_; }
  std::span<const Elem> dual_multipliers() const { return u_; }

  Codeword encode(std::span<const Elem> message) const;

  /// S_i = sum_j u_j r_j alpha_j^i for i in [0, N-K-1].
  std::vector<Elem> syndromes(std::span<const Elem> received) const;

  /// Magnitude references for the syndromes: sum_j |u_j r_j alpha_j^i|.
  /// Meaningful for the real field only (all ones/zeros over GF(p)).
  std::vector<double> syndrome_scales(std::span<const Elem> received) const;

  /// Message whose encoding reproduces `symbols`. Over GF(p) the first K
  /// positions are interpolated and the remainder verified; over the reals
  /// the N x K evaluation system is solved by least squares. Throws
  /// NotACodeword when the symbols are inconsistent.
  Message interpolate(std::span<const Elem> symbols) const;

  bool is_codeword(std::span<const Elem> word) const;

 private:
  GrsCode(F field, std::size_t k, std::vector<Elem> alphas, std::vector<Elem> v, std::vector<Elem> u)
      : field_(std::move(field)), k_(k), alphas_(std::move(alphas)), v_(std::move(v)), u_(std::move(u)) {}

  F field_;
  std::size_t k_;
  std::vector<Elem> alphas_;
  std::vector<Elem> v_;
  std::vector<Elem> u_;
};

/// How evaluation points are chosen.
struct AlphaRule {
  enum class Kind { Power, Linear, Primitive };
  Kind kind = Kind::Power;
  double base = 0.9;  // Power only

  /// Parses "pow:<base>", "linear" or "primitive".
  static AlphaRule parse(const std::string& text);
  std::string to_string() const;
};

/// Power: base^i, i = 0..N-1. Linear: i = 1..N (zero is never an evaluation
/// point). Primitive: g^i for the smallest primitive root g (GF(p) only).
/// Throws InvalidParameters if the points are not distinct or the rule does
/// not apply to the field.
template <class F>
std::vector<typename F::Elem> evaluation_points(const F& field, std::size_t n, const AlphaRule& rule);

extern template class GrsCode<PrimeField>;
extern template class GrsCode<RealField>;

}  // namespace polyirs
