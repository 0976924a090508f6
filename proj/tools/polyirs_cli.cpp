// polyirs command line: simulate, bound, condnum, demo-matmul.
//
// Exit codes: 0 success, 2 invalid parameters or usage, 3 decode failure in
// demo mode, 1 for anything unexpected (I/O errors included).

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <variant>
#include <string>
#include <vector>

#include "polyirs/errors.hpp"
#include "polyirs/harness.hpp"

namespace {

using namespace polyirs;

constexpr int kExitInvalid = 2;
constexpr int kExitDecodeFailure = 3;

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw InvalidParameters("bad " + what + " '" + text + "'");
  return value;
}

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// "a:b" or a single "a".
Range parse_range(const std::string& text, const std::string& what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const auto v = parse_count(text, what);
    return {v, v};
  }
  Range r{parse_count(text.substr(0, colon), what), parse_count(text.substr(colon + 1), what)};
  if (r.lo > r.hi) throw InvalidParameters("empty " + what + " range '" + text + "'");
  return r;
}

// "a:b", "a,b,c" or "a".
std::vector<std::size_t> parse_layers(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto r = parse_range(text, "L");
    for (auto l = r.lo; l <= r.hi; ++l) out.push_back(l);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_count(text.substr(start, comma - start), "L"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_report(const Report& report, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << format_csv(report);
  } else {
    emit_csv(report, out);
  }
}

struct SimulateArgs {
  std::string field = "real";
  std::size_t n = 8, k = 2;
  std::string layers = "1";
  std::string t = "1";
  std::size_t trials = 2000;
  std::string model;
  std::string alphas;
  std::string decoder = "cpda";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  ExperimentConfig c;
  c.field = parse_field(a.field);
  const bool real = std::holds_alternative<RealField>(c.field);
  c.n = a.n;
  c.k = a.k;
  c.layers = parse_layers(a.layers);
  const auto tr = parse_range(a.t, "t");
  c.t_min = tr.lo;
  c.t_max = tr.hi;
  c.trials = a.trials;
  if (a.model.empty()) {
    c.model = real ? ErrorKind::Gre : ErrorKind::Uref;
  } else if (a.model == "uref") {
    c.model = ErrorKind::Uref;
  } else if (a.model == "gre") {
    c.model = ErrorKind::Gre;
  } else {
    throw InvalidParameters("unknown error model '" + a.model + "' (expected uref or gre)");
  }
  c.alphas = AlphaRule::parse(a.alphas.empty() ? (real ? "pow:0.9" : "linear") : a.alphas);
  c.decoder = parse_decoder(a.decoder);
  c.seed = a.seed;
  c.threads = a.threads;
  write_report(run_monte_carlo(c), a.out);
  return 0;
}

struct BoundArgs {
  std::uint64_t q = 2;
  std::size_t n = 8, k = 2, l = 1;
  std::string t = "1";
  std::string out;
};

int run_bound(const BoundArgs& a) {
  const auto tr = parse_range(a.t, "t");
  write_report(bound_report(a.q, a.n, a.k, a.l, tr.lo, tr.hi), a.out);
  return 0;
}

struct CondnumArgs {
  std::size_t n = 8, k = 2;
  std::string layers = "1:5";
  std::string t = "1:5";
  std::size_t trials = 500;
  std::string alphas = "pow:0.9";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
};

int run_condnum(const CondnumArgs& a) {
  ExperimentConfig c;
  c.field = RealField{};
  c.n = a.n;
  c.k = a.k;
  c.layers = parse_layers(a.layers);
  const auto tr = parse_range(a.t, "t");
  c.t_min = tr.lo;
  c.t_max = tr.hi;
  c.trials = a.trials;
  c.alphas = AlphaRule::parse(a.alphas);
  c.seed = a.seed;
  c.threads = a.threads;
  write_report(condnum_study(c), a.out);
  return 0;
}

struct DemoArgs {
  std::string field = "gf:257";
  DemoConfig cfg;
  std::string alphas;
};

int run_demo(DemoArgs a) {
  a.cfg.field = parse_field(a.field);
  if (!a.alphas.empty()) a.cfg.alphas = AlphaRule::parse(a.alphas);
  const auto r = demo_matmul(a.cfg);
  std::cout << "field=" << a.field << " m=" << a.cfg.m << " n=" << a.cfg.nblocks << " N=" << a.cfg.workers
            << " L=" << r.layers << " K=" << r.dimension << " t_max=" << r.t_max << " t=" << a.cfg.t << "\n";
  std::cout << "corrupted workers:";
  for (auto w : r.corrupted) std::cout << ' ' << w;
  std::cout << "\n";
  if (!r.decoded) {
    std::cout << "decode failure: " << r.failure.value_or("unknown") << "\n";
    return kExitDecodeFailure;
  }
  std::cout << "decoded: yes\nexact: " << (r.exact ? "yes" : "no") << "\nrelative error: " << r.relative_error
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial-code matrix multiplication with collaborative IRS decoding"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of P_F, P_ML and P_e");
  simulate->add_option("--field", sim.field, "gf:<p> or real")->capture_default_str();
  simulate->add_option("--n", sim.n, "code length N")->capture_default_str();
  simulate->add_option("--k", sim.k, "code dimension K")->capture_default_str();
  simulate->add_option("--l", sim.layers, "interleaving depth: L, L1,L2,... or lmin:lmax")->capture_default_str();
  simulate->add_option("--t", sim.t, "error weights: t or tmin:tmax")->capture_default_str();
  simulate->add_option("--trials", sim.trials, "trials per (L, t)")->capture_default_str();
  simulate->add_option("--model", sim.model, "uref or gre (default follows the field)");
  simulate->add_option("--alphas", sim.alphas, "pow:<base>, linear or primitive (default pow:0.9 over the reals, linear over GF(p))");
  simulate->add_option("--decoder", sim.decoder, "cpda, mssr or both")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "worker threads, 0 = all cores")->capture_default_str();
  simulate->add_option("--out", sim.out, "CSV path (stdout when omitted)");

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Analytic finite-field failure bound");
  bound->add_option("--q", bnd.q, "field size")->required();
  bound->add_option("--n", bnd.n, "code length N")->required();
  bound->add_option("--k", bnd.k, "code dimension K")->required();
  bound->add_option("--l", bnd.l, "interleaving depth L")->required();
  bound->add_option("--t", bnd.t, "t or tmin:tmax")->required();
  bound->add_option("--out", bnd.out, "CSV path (stdout when omitted)");

  CondnumArgs cnd;
  auto* condnum = app.add_subcommand("condnum", "Mean condition number of S_L^T S_L at the true t");
  condnum->add_option("--n", cnd.n, "code length N")->capture_default_str();
  condnum->add_option("--k", cnd.k, "code dimension K")->capture_default_str();
  condnum->add_option("--l", cnd.layers, "lmin:lmax or a list")->capture_default_str();
  condnum->add_option("--t", cnd.t, "tmin:tmax")->capture_default_str();
  condnum->add_option("--trials", cnd.trials, "trials per (L, t)")->capture_default_str();
  condnum->add_option("--alphas", cnd.alphas, "pow:<base> or linear")->capture_default_str();
  condnum->add_option("--seed", cnd.seed, "master seed")->capture_default_str();
  condnum->add_option("--threads", cnd.threads, "worker threads, 0 = all cores")->capture_default_str();
  condnum->add_option("--out", cnd.out, "CSV path (stdout when omitted)");

  DemoArgs dem;
  auto* demo = app.add_subcommand("demo-matmul", "End-to-end coded A^T B with injected worker errors");
  demo->add_option("--field", dem.field, "gf:<p> or real")->capture_default_str();
  demo->add_option("--m", dem.cfg.m, "column blocks of A")->capture_default_str();
  demo->add_option("--nblocks", dem.cfg.nblocks, "column blocks of B")->capture_default_str();
  demo->add_option("--workers", dem.cfg.workers, "number of workers N")->capture_default_str();
  demo->add_option("--t", dem.cfg.t, "corrupted workers")->capture_default_str();
  demo->add_option("--seed", dem.cfg.seed, "seed")->capture_default_str();
  demo->add_option("--inner", dem.cfg.inner, "rows of A and B")->capture_default_str();
  demo->add_option("--block-rows", dem.cfg.block_rows, "columns per block of A")->capture_default_str();
  demo->add_option("--block-cols", dem.cfg.block_cols, "columns per block of B")->capture_default_str();
  demo->add_option("--alphas", dem.alphas, "worker points: pow:<base>, linear or primitive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*bound) return run_bound(bnd);
    if (*condnum) return run_condnum(cnd);
    if (*demo) return run_demo(dem);
  } catch (const InvalidParameters& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalid;
}
