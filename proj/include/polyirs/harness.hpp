#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyirs/errmodel.hpp"
#include "polyirs/field.hpp"
#include "polyirs/grs.hpp"

namespace polyirs {

enum class DecoderChoice { Cpda, Mssr, Both };

DecoderChoice parse_decoder(const std::string& text);
std::string to_string(DecoderChoice choice);

/// Monte Carlo configuration. One report row is produced per (L, t) pair.
struct ExperimentConfig {
  FieldSpec field = RealField{};
  std::size_t n = 8;
  std::size_t k = 2;
  std::vector<std::size_t> layers{1};
  std::size_t t_min = 1;
  std::size_t t_max = 1;
  std::size_t trials = 2000;
  ErrorKind model = ErrorKind::Gre;
  double gre_mean = 0.0;
  double gre_variance = 1.0;
  AlphaRule alphas{AlphaRule::Kind::Power, 0.9};
  DecoderChoice decoder = DecoderChoice::Cpda;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency
  bool measure_condition = false;

  void validate() const;
};

struct ReportRow {
  std::size_t t = 0;
  std::size_t layers = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;    // decoder declared failure
  std::size_t undetected = 0;  // decoder returned a wrong word
  double p_f = 0.0;
  double p_ml = 0.0;
  double p_e = 0.0;
  std::optional<double> mean_cond;

  /// Fills the rates from the counters.
  void finalize();

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::vector<std::string> notes;  // written as '#' comment lines
  std::vector<ReportRow> rows;

  const ReportRow* find(std::size_t layers, std::size_t t) const;
};

Report run_monte_carlo(const ExperimentConfig& config);

/// Finite-field failure-probability bound under UREF, clamped to [0, 1].
/// Throws InvalidParameters when t > t_max(N, K, L) or q < 2.
double pf_bound(std::uint64_t q, std::size_t n, std::size_t k, std::size_t l, std::size_t t);

/// Report with one bound row per t; p_f = p_e = bound, no trials.
Report bound_report(std::uint64_t q, std::size_t n, std::size_t k, std::size_t l, std::size_t t_min,
                    std::size_t t_max);

/// Mean condition number of S_L(t)^T S_L(t) at the true error count t, over
/// all trials (decodable or not). Real field and GRE only.
Report condnum_study(ExperimentConfig config);

struct DemoConfig {
  FieldSpec field = PrimeField(257);
  std::size_t m = 2;
  std::size_t nblocks = 2;
  std::size_t workers = 12;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::size_t inner = 3;       // rows s of A and B
  std::size_t block_rows = 2;  // r / m
  std::size_t block_cols = 2;  // r' / n
  std::optional<AlphaRule> alphas;  // default: linear over GF(p), pow:0.9 over the reals
};

struct DemoReport {
  bool decoded = false;
  std::optional<std::string> failure;  // decoder failure reason
  bool exact = false;                  // recovered product equals A^T B exactly
  double relative_error = 0.0;         // Frobenius, ||C^ - C|| / ||C||
  std::size_t layers = 0;
  std::size_t dimension = 0;
  std::size_t t_max = 0;
  std::vector<std::size_t> corrupted;
};

DemoReport demo_matmul(const DemoConfig& config);

void emit_csv(const Report& report, const std::string& path);
std::string format_csv(const Report& report);
Report parse_csv(const std::string& text);

}  // namespace polyirs
