#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace polyirs {

/// Thresholds used by the real field. All are relative; see RealField.
struct ToleranceProfile {
  double eq_tol = 1e-9;        // scalar equality
  double rank_tol = 1e-13;     // singular value cut-off for rank decisions
  double root_tol = 1e-3;      // locator root acceptance (relative Newton step)
  double residual_tol = 1e-8;  // linear-system consistency
  double backward_tol = 1e-12; // componentwise backward error against syndrome noise floors

  /// Throws InvalidParameters unless every threshold is finite and > 0.
  void validate() const;
};

bool is_prime(std::uint64_t n);

/// GF(p) for a prime p < 2^32. Elements are canonical residues in [0, p).
///
/// Arithmetic rejects operands that are not reduced mod p; this is how a
/// residue belonging to a different modulus is caught.
class PrimeField {
 public:
  using Elem = std::uint64_t;
  static constexpr bool kExact = true;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::string name() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  /// Validated element; throws UsageError when v >= p.
  Elem element(std::uint64_t v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  bool is_zero(Elem a, double /*scale*/ = 0.0) const { return a == 0; }
  bool equal(Elem a, Elem b, double /*scale*/ = 0.0) const { return a == b; }
  /// Magnitude used for scale bookkeeping in generic code: 0 or 1.
  double magnitude(Elem a) const { return a == 0 ? 0.0 : 1.0; }

  /// Smallest generator of the multiplicative group.
  Elem primitive_root() const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  void check(Elem a) const;

  std::uint64_t p_;
};

/// The reals as IEEE double. Equality is scale-relative:
/// is_zero(a, scale) <=> |a| <= eq_tol * max(scale, 1).
class RealField {
 public:
  using Elem = double;
  static constexpr bool kExact = false;

  RealField() = default;
  explicit RealField(ToleranceProfile tol);

  const ToleranceProfile& tolerances() const { return tol_; }
  std::string name() const { return "real"; }

  Elem zero() const { return 0.0; }
  Elem one() const { return 1.0; }
  Elem from_int(std::int64_t v) const { return static_cast<double>(v); }
  /// Throws UsageError for NaN or infinite input.
  Elem element(double v) const;

  Elem add(Elem a, Elem b) const { return a + b; }
  Elem sub(Elem a, Elem b) const { return a - b; }
  Elem mul(Elem a, Elem b) const { return a * b; }
  Elem neg(Elem a) const { return -a; }
  /// Throws DivisionByZero for a == 0 (or a result that is not finite).
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  bool is_zero(Elem a, double scale) const;
  bool equal(Elem a, Elem b, double scale) const { return is_zero(a - b, scale); }
  /// Purely relative test |a| <= tol * scale, with no floor at 1. Used where
  /// the natural magnitude of a quantity is far from unity (syndromes of
  /// codes with tiny dual multipliers).
  bool negligible(Elem a, double scale, double tol) const;
  double magnitude(Elem a) const;

  friend bool operator==(const RealField& a, const RealField& b);

 private:
  ToleranceProfile tol_{};
};

/// Runtime selection of one of the two supported fields.
using FieldSpec = std::variant<PrimeField, RealField>;

/// Parses "gf:<p>" or "real".
FieldSpec parse_field(const std::string& text);

}  // namespace polyirs
