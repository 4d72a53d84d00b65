#pragma once

// Deterministic random streams.
//
// Each stream is a 64-bit Mersenne Twister (std::mt19937_64, whose output
// sequence is fixed by the C++ standard) seeded through std::seed_seq with the
// 32-bit halves of (seed, stream_id). seed_seq's mixing is also specified
// exactly, so a (seed, stream_id) pair yields the same sequence on every
// conforming platform. Variates are derived here rather than through the
// standard distributions, whose algorithms are implementation-defined.

#include <cstdint>
#include <optional>
#include <random>

#include "oppnet/scenario.hpp"

namespace oppnet {

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Normal variate by the Box-Muller transform; the second value of each
  /// pair is cached.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

RandomStream rng_stream(std::uint64_t seed, std::uint64_t stream_id);

inline constexpr std::uint64_t kTrafficStream = 0;
inline constexpr std::uint64_t node_stream(NodeId id) { return static_cast<std::uint64_t>(id) + 1; }

}  // namespace oppnet
