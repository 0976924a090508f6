// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyirs/decoder.hpp"
#include "polyirs/errmodel.hpp"
#include "polyirs/harness.hpp"
#include "polyirs/polycode.hpp"

using namespace polyirs;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

using GfMat = Matrix<std::uint64_t>;

GfMat random_irs(const GrsCode<PrimeField>& code, std::size_t layers, Rng& rng) {
  GfMat d(layers, code.length());
  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<std::uint64_t> msg(code.dimension());
    for (auto& x : msg) x = rng.uniform_below(code.field().modulus());
    const auto c = code.encode(msg);
    std::copy(c.begin(), c.end(), d.row(l).begin());
  }
  return d;
}

std::size_t column_distance(const GfMat& a, const GfMat& b) {
  std::size_t d = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    bool diff = false;
    for (std::size_t r = 0; r < a.rows(); ++r) diff = diff || a(r, c) != b(r, c);
    d += diff;
  }
  return d;
}

constexpr std::uint64_t kSeed = 42;

// 1. Hard 0/1 transitions of the N=8, K=2 real experiment.
void short_code_transitions(Check& c) {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.k = 2;
  cfg.layers = {1, 6};
  cfg.t_min = 1;
  cfg.t_max = 6;
  cfg.trials = 2000;
  cfg.seed = kSeed;
  const auto rep = run_monte_carlo(cfg);
  for (std::size_t t = 1; t <= 6; ++t) {
    const double want6 = t <= 5 ? 0.0 : 1.0;
    const double want1 = t <= 3 ? 0.0 : 1.0;
    const double got6 = rep.find(6, t)->p_e, got1 = rep.find(1, t)->p_e;
    c.detail << " L6t" << t << "=" << got6 << " L1t" << t << "=" << got1;
    c.require(got6 == want6, "L=6 t=" + std::to_string(t));
    c.require(got1 == want1, "L=1 t=" + std::to_string(t));
  }
}

// 2. N=20, K=12, alpha_i = i error rates.
void long_code_rates(Check& c) {
  ExperimentConfig cfg;
  cfg.n = 20;
  cfg.k = 12;
  cfg.trials = 2000;
  cfg.alphas = AlphaRule{AlphaRule::Kind::Linear, 0};
  cfg.seed = kSeed;
  struct Part {
    std::size_t l, t_lo, t_hi;
    double limit;
  };
  for (const Part& p : {Part{20, 1, 7, 0.0}, Part{2, 1, 5, 0.0}, Part{1, 4, 4, 0.005}}) {
    cfg.layers = {p.l};
    cfg.t_min = p.t_lo;
    cfg.t_max = p.t_hi;
    const auto rep = run_monte_carlo(cfg);
    for (const auto& row : rep.rows) {
      c.detail << " L" << row.layers << "t" << row.t << "=" << row.p_e;
      c.require(row.p_e <= p.limit, "L=" + std::to_string(row.layers) + " t=" + std::to_string(row.t));
    }
  }
}

// 3. Empirical finite-field failure rate against the analytic bound.
void bound_check(Check& c) {
  ExperimentConfig cfg;
  cfg.field = PrimeField(257);
  cfg.n = 16;
  cfg.k = 4;
  cfg.layers = {4};
  cfg.t_min = 7;
  cfg.t_max = 9;
  cfg.trials = 5000;
  cfg.model = ErrorKind::Uref;
  cfg.alphas = AlphaRule{AlphaRule::Kind::Linear, 0};
  cfg.seed = kSeed;
  const auto rep = run_monte_carlo(cfg);
  for (const auto& row : rep.rows) {
    const double b = pf_bound(257, 16, 4, 4, row.t);
    const double limit = b + 3.0 * std::sqrt(b * (1.0 - b) / row.trials) + 1.0 / row.trials;
    c.detail << " t" << row.t << ": P_F=" << row.p_f << " (limit " << limit << ") P_ML=" << row.p_ml;
    c.require(row.p_f <= limit, "P_F t=" + std::to_string(row.t));
    c.require(row.p_ml == 0.0, "P_ML t=" + std::to_string(row.t));
  }
}

// 4. Every support of size <= 2 with every nonzero column value, GF(7), N=6, K=1, L=2.
void classical_radius(Check& c) {
  const PrimeField f(7);
  const auto code = GrsCode<PrimeField>::make(f, 1, evaluation_points(f, 6, AlphaRule{AlphaRule::Kind::Linear, 0}));
  Rng rng(kSeed);
  const auto d = random_irs(code, 2, rng);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> columns;
  for (std::uint64_t a = 0; a < 7; ++a)
    for (std::uint64_t b = 0; b < 7; ++b)
      if (a || b) columns.emplace_back(a, b);
  std::size_t cases = 0, bad = 0;
  auto run = [&](const GfMat& r) {
    ++cases;
    const auto x = cpda_decode(code, r);
    const auto y = mssr_decode(code, r);
    if (!x.ok() || !(x.success().corrected == d) || !(x == y)) ++bad;
  };
  for (std::size_t j1 = 0; j1 < 6; ++j1) {
    for (const auto& e1 : columns) {
      GfMat r = d;
      r(0, j1) = f.add(r(0, j1), e1.first);
      r(1, j1) = f.add(r(1, j1), e1.second);
      run(r);
      for (std::size_t j2 = j1 + 1; j2 < 6; ++j2)
        for (const auto& e2 : columns) {
          GfMat r2 = r;
          r2(0, j2) = f.add(r2(0, j2), e2.first);
          r2(1, j2) = f.add(r2(1, j2), e2.second);
          run(r2);
        }
    }
  }
  c.detail << " patterns=" << cases << " wrong_or_failed=" << bad;
  c.require(cases == 6 * 48 + 15 * 48 * 48, "pattern count");
  c.require(bad == 0, "all corrected");
}

// 5. CPDA and MSSR outcomes agree exactly over GF(257).
void equivalence(Check& c) {
  const PrimeField f(257);
  const auto code = GrsCode<PrimeField>::make(f, 4, evaluation_points(f, 16, AlphaRule{AlphaRule::Kind::Linear, 0}));
  Rng rng(kSeed);
  std::size_t mismatches = 0, failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t layers = 1 + rng.uniform_below(4);
    const std::size_t t = rng.uniform_below(t_max(16, 4, layers) + 1);
    const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Uref, t}, layers, 16, rng);
    const auto r = inject(f, random_irs(code, layers, rng), e.values);
    const auto x = cpda_decode(code, r);
    if (!(x == mssr_decode(code, r))) ++mismatches;
    failures += x.ok() ? 0 : 1;
  }
  c.detail << " instances=1000 mismatches=" << mismatches << " (decoder failures " << failures << ")";
  c.require(mismatches == 0, "identical outcomes");
}

// 6. Successful decodes are nearest codewords, GF(7), N=6, K=1, L=2.
void ml_certificate(Check& c) {
  const PrimeField f(7);
  const auto alphas = evaluation_points(f, 6, AlphaRule{AlphaRule::Kind::Linear, 0});
  const auto code = GrsCode<PrimeField>::make(f, 1, alphas);
  Rng rng(kSeed);
  std::size_t successes = 0, violations = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t t = rng.uniform_below(4);
    const auto d = random_irs(code, 2, rng);
    const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Uref, t}, 2, 6, rng);
    const auto r = inject(f, d, e.values);
    const auto out = cpda_decode(code, r);
    if (!out.ok()) continue;
    ++successes;
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t l = 0; l < 2; ++l) rows.emplace_back(r.row(l).begin(), r.row(l).end());
    const auto best = oracle::nearest_codeword_distance(rows, alphas, std::vector<std::uint64_t>(6, 1), 1, 7);
    if (column_distance(out.success().corrected, r) != best) ++violations;
  }
  c.detail << " pairs=500 successes=" << successes << " violations=" << violations;
  c.require(violations == 0, "nearest codeword");
}

// 7. Mean condition numbers of S_L^T S_L for N=8, K=2, alpha_i = 0.9^i.
void condition_trend(Check& c) {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.k = 2;
  cfg.layers = {1, 2, 3, 4, 5};
  cfg.t_min = 2;
  cfg.t_max = 3;
  cfg.trials = 500;
  cfg.seed = kSeed;
  const auto rep = condnum_study(cfg);
  const double l1 = *rep.find(1, 3)->mean_cond, l3 = *rep.find(3, 3)->mean_cond;
  c.detail << " L1t3=" << l1 << " L3t3=" << l3;
  c.require(l1 >= 4.06e13 / 100 && l1 <= 4.06e13 * 100, "L=1 magnitude");
  c.require(l3 >= 7.73e6 / 100 && l3 <= 7.73e6 * 100, "L=3 magnitude");
  for (std::size_t t : {2u, 3u}) {
    c.detail << " t" << t << ":";
    for (std::size_t l = 1; l <= 5; ++l) {
      c.detail << (l > 1 ? "," : "") << *rep.find(l, t)->mean_cond;
      if (l > 1)
        c.require(*rep.find(l, t)->mean_cond < *rep.find(l - 1, t)->mean_cond,
                  "decreasing at t=" + std::to_string(t) + " L=" + std::to_string(l));
    }
  }
}

// 8. End-to-end coded multiplication with t_max corrupted workers.
void matmul(Check& c) {
  DemoConfig gf;
  gf.field = PrimeField(257);
  gf.m = 2;
  gf.nblocks = 2;
  gf.workers = 12;
  gf.t = t_max(12, 4, gf.block_rows * gf.block_cols);
  std::size_t exact = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    gf.seed = s;
    exact += demo_matmul(gf).exact ? 1 : 0;
  }
  c.detail << " GF(257) t=" << gf.t << ": exact " << exact << "/200";
  c.require(exact >= 198, "GF exact rate");

  DemoConfig real;
  real.field = RealField{};
  real.m = 2;
  real.nblocks = 1;
  real.workers = 8;
  real.t = 3;
  double worst = 0.0;
  std::size_t decoded = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    real.seed = s;
    const auto r = demo_matmul(real);
    decoded += r.decoded ? 1 : 0;
    worst = std::max(worst, r.decoded ? r.relative_error : INFINITY);
  }
  c.detail << " real t=3: decoded " << decoded << "/50, worst relative error " << worst;
  c.require(worst <= 1e-6, "real relative error");
}

// 9. Module invariants.
void properties(Check& c) {
  // Field axioms and inverses.
  {
    const PrimeField f(257);
    Rng rng(kSeed);
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
      const auto a = rng.uniform_below(257), b = rng.uniform_below(257), d = rng.uniform_below(257);
      ok = ok && f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d));
      ok = ok && f.add(f.add(a, b), d) == f.add(a, f.add(b, d)) && f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d));
      ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
    }
    for (std::uint64_t p = 2; p <= 257; ++p) {
      if (!is_prime(p)) continue;
      const PrimeField g(p);
      for (std::uint64_t a = 1; a < p; ++a) ok = ok && g.mul(g.inv(a), a) == 1;
    }
    const RealField r;
    ok = ok && r.add(0.25, 0.5) == 0.75 && r.mul(0.9, 0.9) == 0.81;
    c.require(ok, "field axioms");
  }
  // GRS duality and round trip.
  {
    const PrimeField f(257);
    Rng rng(kSeed + 1);
    const auto code = GrsCode<PrimeField>::make(f, 5, evaluation_points(f, 16, AlphaRule{AlphaRule::Kind::Primitive, 0}));
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      std::vector<std::uint64_t> msg(5);
      for (auto& x : msg) x = rng.uniform_below(257);
      const auto w = code.encode(msg);
      for (auto s : code.syndromes(w)) ok = ok && s == 0;
      ok = ok && code.interpolate(w) == msg;
    }
    c.require(ok, "GRS duality");
  }
  // Vectorization order and the row-codeword property of assembled words.
  {
    Matrix<int> w(2, 2);
    w(0, 0) = 1; w(0, 1) = 2; w(1, 0) = 3; w(1, 1) = 4;
    c.require(vectorize(w) == std::vector<int>{1, 2, 3, 4}, "vectorize order");
    const PrimeField f(257);
    Rng rng(kSeed + 2);
    bool ok = true;
    for (auto [m, n, workers] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
             {1, 1, 4}, {2, 1, 6}, {2, 2, 12}, {3, 2, 10}}) {
      const auto params = PolyCodeParams<PrimeField>::make(
          f, m, n, evaluation_points(f, workers, AlphaRule{AlphaRule::Kind::Linear, 0}));
      GfMat a(3, m * 2), b(3, n * 3);
      for (std::size_t r = 0; r < 3; ++r) {
        for (auto& x : a.row(r)) x = rng.uniform_below(257);
        for (auto& x : b.row(r)) x = rng.uniform_below(257);
      }
      std::vector<GfMat> outs;
      for (const auto& task : encode_tasks(params, a, b)) outs.push_back(worker_compute(f, task));
      const auto irs = assemble_irs(params, outs);
      ok = ok && irs.word.rows() == 6;  // (r/m)(r'/n)
      for (std::size_t r = 0; r < irs.word.rows(); ++r)
        for (auto s : irs.code.syndromes(irs.word.row(r))) ok = ok && s == 0;
      ok = ok && recover_product(params, irs) == transpose_product(f, a, b);
    }
    c.require(ok, "row codewords");
  }
  // Hamming weight of sampled errors and determinism.
  {
    const PrimeField f(3);
    bool ok = true;
    for (std::uint64_t s = 0; s < 500; ++s) {
      const std::size_t t = s % 9;
      const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Uref, t, s}, 2, 8);
      ok = ok && hamming_weight(f, e.values) == t;
      ok = ok && sample_error(f, ErrorModelSpec{ErrorKind::Uref, t, s}, 2, 8).values == e.values;
    }
    c.require(ok, "W_H");
    ExperimentConfig cfg;
    cfg.layers = {1, 4};
    cfg.t_min = 1;
    cfg.t_max = 4;
    cfg.trials = 300;
    cfg.measure_condition = true;
    cfg.threads = 1;
    const auto one = format_csv(run_monte_carlo(cfg));
    cfg.threads = 6;
    c.require(one == format_csv(run_monte_carlo(cfg)), "seed determinism");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 short-code-transitions", short_code_transitions},
      {"2 long-code-error-rates", long_code_rates},
      {"3 gf-bound", bound_check},
      {"4 classical-radius-exhaustive", classical_radius},
      {"5 cpda-mssr-equivalence", equivalence},
      {"6 ml-certificate", ml_certificate},
      {"7 condition-number-trend", condition_trend},
      {"8 end-to-end-matmul", matmul},
      {"9 property-suites", properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.1fs)%s\n", check.ok ? "PASS" : "FAIL", cr.name, secs, check.detail.str().c_str());
    std::fflush(stdout);
    failed += check.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
