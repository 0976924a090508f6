#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace polyirs {

/// Reproducible random source. Wraps std::mt19937_64 (bit-exact across
/// standard libraries) with hand-written distributions, since the standard
/// distribution objects are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for (master, ids...): SplitMix64 is folded over the
  /// ids so that trial i of cell (L, t) never depends on scheduling.
  static Rng for_stream(std::uint64_t master, std::initializer_list<std::uint64_t> ids);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, bound); bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform on [0, 1).
  double uniform01();
  double normal(double mean = 0.0, double stddev = 1.0);
  /// Uniformly random k-subset of [0, n), sorted ascending.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace polyirs
