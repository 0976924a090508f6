#include "polyirs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "polyirs/decoder.hpp"
#include "polyirs/errors.hpp"
#include "polyirs/linalg.hpp"
#include "polyirs/polycode.hpp"
#include "polyirs/rng.hpp"

namespace polyirs {

DecoderChoice parse_decoder(const std::string& text) {
  if (text == "cpda") return DecoderChoice::Cpda;
  if (text == "mssr") return DecoderChoice::Mssr;
  if (text == "both") return DecoderChoice::Both;
  throw InvalidParameters("unknown decoder '" + text + "' (expected cpda, mssr or both)");
}

std::string to_string(DecoderChoice choice) {
  switch (choice) {
    case DecoderChoice::Cpda:
      return "cpda";
    case DecoderChoice::Mssr:
      return "mssr";
    case DecoderChoice::Both:
      return "both";
  }
  return "cpda";
}

void ExperimentConfig::validate() const {
  if (k < 1 || k >= n) throw InvalidParameters("need 1 <= K < N");
  if (layers.empty()) throw InvalidParameters("need at least one L value");
  for (std::size_t l : layers)
    if (l < 1) throw InvalidParameters("L must be at least 1");
  if (t_min > t_max) throw InvalidParameters("empty t range");
  if (t_max > n) throw InvalidParameters("t cannot exceed N");
  if (trials < 1) throw InvalidParameters("need at least one trial");
  const bool real = std::holds_alternative<RealField>(field);
  if (real && model != ErrorKind::Gre) throw InvalidParameters("the real field uses the GRE model");
  if (!real && model != ErrorKind::Uref) throw InvalidParameters("finite fields use the UREF model");
  if (!(gre_variance >= 0.0) || !std::isfinite(gre_mean)) throw InvalidParameters("bad GRE parameters");
  if (measure_condition && !real) throw InvalidParameters("condition numbers are measured over the reals only");
}

void ReportRow::finalize() {
  successes = trials - failures - undetected;
  if (trials == 0) return;
  const double m = static_cast<double>(trials);
  p_f = static_cast<double>(failures) / m;
  p_ml = static_cast<double>(undetected) / m;
  p_e = static_cast<double>(failures + undetected) / m;
}

const ReportRow* Report::find(std::size_t layers, std::size_t t) const {
  for (const auto& row : rows)
    if (row.layers == layers && row.t == t) return &row;
  return nullptr;
}

namespace {

enum class Verdict : unsigned char { Success, Failure, Undetected };

struct TrialResult {
  Verdict verdict = Verdict::Success;
  bool decoders_disagree = false;
  double cond = 0.0;
};

template <class F>
Verdict classify(const F& f, const DecodeOutcome<F>& out, const Matrix<typename F::Elem>& sent,
                 const Matrix<typename F::Elem>& errors) {
  if (!out.ok()) return Verdict::Failure;
  const auto& got = out.success().corrected;
  if constexpr (F::kExact) {
    (void)f;
    (void)errors;
    return got == sent ? Verdict::Success : Verdict::Undetected;
  } else {
    double ref = 1.0, diff = 0.0;
    for (double v : sent.data()) ref = std::max(ref, std::abs(v));
    for (double v : errors.data()) ref = std::max(ref, std::abs(v));
    for (std::size_t i = 0; i < got.data().size(); ++i) diff = std::max(diff, std::abs(got.data()[i] - sent.data()[i]));
    return diff <= 1e-6 * ref ? Verdict::Success : Verdict::Undetected;
  }
}

template <class F>
std::vector<typename F::Elem> random_message(const F& f, std::size_t k, double radius, Rng& rng) {
  std::vector<typename F::Elem> msg(k);
  if constexpr (F::kExact) {
    (void)radius;
    for (auto& c : msg) c = rng.uniform_below(f.modulus());
  } else {
    double scale = 1.0;
    for (auto& c : msg) {
      c = rng.normal() * scale;
      scale /= radius;
    }
  }
  return msg;
}

template <class F>
Matrix<typename F::Elem> random_codeword(const GrsCode<F>& code, std::size_t layers, Rng& rng) {
  const F& f = code.field();
  double radius = 1.0;
  for (const auto& a : code.alphas()) radius = std::max(radius, f.magnitude(a));
  Matrix<typename F::Elem> word(layers, code.length());
  for (std::size_t l = 0; l < layers; ++l) {
    const auto c = code.encode(random_message(f, code.dimension(), radius, rng));
    std::copy(c.begin(), c.end(), word.row(l).begin());
  }
  return word;
}

template <class F>
TrialResult run_trial(const ExperimentConfig& cfg, const GrsCode<F>& code, std::size_t layers, std::size_t t,
                      std::size_t trial) {
  const F& f = code.field();
  Rng rng = Rng::for_stream(cfg.seed, {layers, t, trial});
  const auto sent = random_codeword(code, layers, rng);
  ErrorModelSpec spec{cfg.model, t, 0, cfg.gre_mean, cfg.gre_variance};
  const auto err = sample_error(f, spec, layers, code.length(), rng);
  const auto received = inject(f, sent, err.values);

  TrialResult res;
  if constexpr (!F::kExact) {
    if (cfg.measure_condition) {
      res.cond = t >= 1 && t < code.redundancy()
                     ? gram_condition_number(build_stacked(f, compute_syndromes(code, received), t).matrix)
                     : std::numeric_limits<double>::quiet_NaN();
    }
  }
  switch (cfg.decoder) {
    case DecoderChoice::Cpda:
      res.verdict = classify(f, cpda_decode(code, received), sent, err.values);
      break;
    case DecoderChoice::Mssr:
      res.verdict = classify(f, mssr_decode(code, received), sent, err.values);
      break;
    case DecoderChoice::Both: {
      const auto a = cpda_decode(code, received);
      const auto b = mssr_decode(code, received);
      res.verdict = classify(f, a, sent, err.values);
      if constexpr (F::kExact) {
        res.decoders_disagree = !(a == b);
      } else {
        res.decoders_disagree = res.verdict != classify(f, b, sent, err.values);
      }
      break;
    }
  }
  return res;
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Kahan summation in trial order; NaN entries (no system at this t) are
// skipped and any singular Gram matrix makes the mean infinite.
std::optional<double> ordered_mean(const std::vector<TrialResult>& results) {
  double sum = 0.0, comp = 0.0;
  std::size_t used = 0;
  bool singular = false;
  for (const auto& r : results) {
    if (std::isnan(r.cond)) continue;
    if (std::isinf(r.cond)) {
      singular = true;
      ++used;
      continue;
    }
    const double y = r.cond - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    ++used;
  }
  if (used == 0) return std::nullopt;
  if (singular) return std::numeric_limits<double>::infinity();
  return sum / static_cast<double>(used);
}

template <class F>
Report run_typed(const ExperimentConfig& cfg, const F& f) {
  Report report;
  report.notes.push_back("field=" + f.name() + " N=" + std::to_string(cfg.n) + " K=" + std::to_string(cfg.k) +
                         " alphas=" + cfg.alphas.to_string() + " decoder=" + to_string(cfg.decoder) +
                         " seed=" + std::to_string(cfg.seed));
  if (cfg.measure_condition)
    report.notes.push_back("mean_cond = mean of cond(S_L^T S_L) at the true t over all trials");
  const auto code = GrsCode<F>::make(f, cfg.k, evaluation_points(f, cfg.n, cfg.alphas));

  std::vector<std::size_t> layers = cfg.layers;
  std::sort(layers.begin(), layers.end());
  layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
  std::size_t disagreements = 0;
  for (std::size_t l : layers) {
    for (std::size_t t = cfg.t_min; t <= cfg.t_max; ++t) {
      std::vector<TrialResult> results(cfg.trials);
      parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) { results[i] = run_trial(cfg, code, l, t, i); });
      ReportRow row;
      row.t = t;
      row.layers = l;
      row.trials = cfg.trials;
      for (const auto& r : results) {
        if (r.verdict == Verdict::Failure) ++row.failures;
        if (r.verdict == Verdict::Undetected) ++row.undetected;
        if (r.decoders_disagree) ++disagreements;
      }
      if (cfg.measure_condition) row.mean_cond = ordered_mean(results);
      row.finalize();
      report.rows.push_back(row);
    }
  }
  if (cfg.decoder == DecoderChoice::Both)
    report.notes.push_back("cpda/mssr disagreements=" + std::to_string(disagreements));
  return report;
}

}  // namespace

Report run_monte_carlo(const ExperimentConfig& config) {
  config.validate();
  return std::visit([&](const auto& f) { return run_typed(config, f); }, config.field);
}

double pf_bound(std::uint64_t q, std::size_t n, std::size_t k, std::size_t l, std::size_t t) {
  if (q < 2) throw InvalidParameters("q must be at least 2");
  const std::size_t limit = t_max(n, k, l);
  if (t > limit) throw InvalidParameters("t exceeds t_max");
  const double lq = std::log(static_cast<double>(q));
  const double qd = static_cast<double>(q);
  // log of (q^L - 1/q) / (q^L - 1) = log1p((1 - 1/q) / (q^L - 1))
  const double log_lead = std::log1p((1.0 - 1.0 / qd) / std::expm1(static_cast<double>(l) * lq));
  const double log_bound = log_lead - static_cast<double>((l + 1) * (limit - t)) * lq - std::log(qd - 1.0);
  return std::clamp(std::exp(log_bound), 0.0, 1.0);
}

Report bound_report(std::uint64_t q, std::size_t n, std::size_t k, std::size_t l, std::size_t t_min,
                    std::size_t t_max_arg) {
  if (t_min > t_max_arg) throw InvalidParameters("empty t range");
  Report report;
  report.notes.push_back("UREF failure bound q=" + std::to_string(q) + " N=" + std::to_string(n) +
                         " K=" + std::to_string(k));
  for (std::size_t t = t_min; t <= t_max_arg; ++t) {
    ReportRow row;
    row.t = t;
    row.layers = l;
    row.p_f = row.p_e = pf_bound(q, n, k, l, t);
    report.rows.push_back(row);
  }
  return report;
}

Report condnum_study(ExperimentConfig config) {
  if (!std::holds_alternative<RealField>(config.field))
    throw InvalidParameters("the condition-number study runs over the reals only");
  config.model = ErrorKind::Gre;
  config.measure_condition = true;
  return run_monte_carlo(config);
}

namespace {

template <class F>
Matrix<typename F::Elem> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<typename F::Elem> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (auto& v : m.row(r)) {
      if constexpr (F::kExact) {
        v = rng.uniform_below(f.modulus());
      } else {
        v = rng.normal();
      }
    }
  return m;
}

template <class F>
DemoReport demo_typed(const DemoConfig& cfg, const F& f) {
  if (cfg.inner < 1 || cfg.block_rows < 1 || cfg.block_cols < 1) throw InvalidParameters("empty blocks");
  AlphaRule rule;
  if (cfg.alphas) {
    rule = *cfg.alphas;
  } else if constexpr (F::kExact) {
    rule.kind = AlphaRule::Kind::Linear;
  } else {
    rule = AlphaRule{AlphaRule::Kind::Power, 0.9};
  }
  const auto params = PolyCodeParams<F>::make(f, cfg.m, cfg.nblocks, evaluation_points(f, cfg.workers, rule));

  DemoReport report;
  report.layers = cfg.block_rows * cfg.block_cols;
  report.dimension = params.code_dimension();
  report.t_max = t_max(cfg.workers, report.dimension, report.layers);
  if (cfg.t > report.t_max) throw InvalidParameters("t exceeds t_max = " + std::to_string(report.t_max));

  Rng rng(cfg.seed);
  const auto a = random_matrix(f, cfg.inner, cfg.m * cfg.block_rows, rng);
  const auto b = random_matrix(f, cfg.inner, cfg.nblocks * cfg.block_cols, rng);
  const auto tasks = encode_tasks(params, a, b);
  std::vector<Matrix<typename F::Elem>> outputs;
  outputs.reserve(tasks.size());
  for (const auto& task : tasks) outputs.push_back(worker_compute(f, task));
  auto assembly = assemble_irs(params, outputs);

  ErrorModelSpec spec{F::kExact ? ErrorKind::Uref : ErrorKind::Gre, cfg.t, 0, 0.0, 1.0};
  const auto err = sample_error(f, spec, assembly.word.rows(), assembly.word.cols(), rng);
  report.corrupted = err.support;
  const auto received = inject(f, assembly.word, err.values);

  const auto outcome = cpda_decode(assembly.code, received);
  if (!outcome.ok()) {
    report.failure = to_string(outcome.failure().reason);
    return report;
  }
  report.decoded = true;
  assembly.word = outcome.success().corrected;
  const auto got = recover_product(params, assembly);
  const auto want = transpose_product(f, a, b);
  report.exact = got == want;
  if constexpr (F::kExact) {
    report.relative_error = report.exact ? 0.0 : 1.0;
  } else {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < want.data().size(); ++i) {
      const double d = got.data()[i] - want.data()[i];
      num += d * d;
      den += want.data()[i] * want.data()[i];
    }
    report.relative_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  }
  return report;
}

}  // namespace

DemoReport demo_matmul(const DemoConfig& config) {
  return std::visit([&](const auto& f) { return demo_typed(config, f); }, config.field);
}

}  // namespace polyirs
