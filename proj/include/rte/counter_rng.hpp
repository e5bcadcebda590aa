// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_COUNTER_RNG_HPP
#define RTE_COUNTER_RNG_HPP

#include <cmath>
#include <cstdint>

namespace rte {

/// Weyl increment used by the SplitMix64 family (2^64 / golden ratio).
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer: a 64-bit bijective mix with strong avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-mode SplitMix64 stream.  Every output is a pure function of
/// (seed, stream, counter), so draw i of stream s is the same value no
/// matter how the counter range is partitioned across threads, and streams
/// derived from the same seed never share state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed + kGoldenGamma) + stream * kGoldenGamma)) {}

  /// Raw 64 bits for the given counter.
  std::uint64_t bits_at(std::uint64_t counter) const {
    return mix64(key_ + counter * kGoldenGamma);
  }

  /// Uniform draw strictly inside (0, 1): the top 53 bits select one of
  /// 2^53 equal cells and the value is the cell midpoint, so neither
  /// endpoint is reachable and log(u) is always finite.
  double uniform_at(std::uint64_t counter) const {
    return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1p-53;
  }

 private:
  std::uint64_t key_;
};

/// Inverse-CDF transform: maps a uniform (0,1) draw to an exponential
/// variate with the given mean.  Kept separate from the generator so tests
/// can drive it with hand-picked uniforms.
inline double exponential_from_uniform(double mean, double u) {
  return -mean * std::log(u);
}

}  // namespace rte

#endif  // RTE_COUNTER_RNG_HPP
