#pragma once

#include <cstdint>
#include <string_view>

namespace oransim::sim {

/// Counter-based pseudo-random stream (splitmix64 output function over a
/// per-stream key). Streams derived from distinct (label, seed) pairs are
/// independent by construction, and a stream never touches global state, so
/// draw order across subsystems cannot leak between them.
///
/// All distribution code is hand-rolled: std::*_distribution is
/// implementation-defined and would break cross-platform replay.
class RngStream {
 public:
  RngStream(std::string_view label, std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n);

  /// Standard normal via Box-Muller (second draw cached).
  double normal();

  double normal(double mean, double stddev);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace oransim::sim
