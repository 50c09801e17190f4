// SPDX-License-Identifier: Apache-2.0
#include "flashcard/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flashcard {

std::uint64_t uniform_int(CounterRng& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng.next();
  const std::uint64_t range = span + 1;
  // Largest multiple of range that fits; values at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
  for (;;) {
    const std::uint64_t x = rng.next();
    if (x <= limit) return lo + x % range;
  }
}

std::uint64_t poisson(CounterRng& rng, double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be non-negative");
  if (mean == 0.0) return 0;

  if (mean < 10.0) {
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double product = rng.uniform01();
    while (product > threshold) {
      ++k;
      product *= rng.uniform01();
    }
    return k;
  }

  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace flashcard
