// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace flashcard {

// Portable randomness for stochastic schedules. Everything here is defined by
// integer arithmetic on uint64 (plus libm log/exp/lgamma for large-mean Poisson
// draws), so a (seed, draw) pair yields the same value on every platform.

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream keyed by (seed, draw index). Each call to next()
/// hashes the key with an incrementing counter; no state is shared between
/// draws, so any draw can be replayed in isolation.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t draw)
      : key_(splitmix64(seed ^ splitmix64(draw + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform integer in [lo, hi] by rejection (no modulo bias).
std::uint64_t uniform_int(CounterRng& rng, std::uint64_t lo, std::uint64_t hi);

/// Poisson(mean) sample: multiplication method below mean 10, Hormann's PTRS
/// transformed rejection otherwise.
std::uint64_t poisson(CounterRng& rng, double mean);

}  // namespace flashcard
