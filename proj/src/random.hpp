#pragma once

// Draws built directly on mt19937_64, whose output sequence is fixed by the
// standard; the library distributions are not, so they are avoided wherever
// results must be reproducible across toolchains.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_set>
#include <vector>

namespace adal::detail {

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Standard normal by Box-Muller (one draw per call, the partner is discarded).
inline double normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// `count` distinct integers from [0, pop) by Floyd's algorithm, in draw order.
inline std::vector<std::uint64_t> sample_distinct(std::mt19937_64& rng, std::uint64_t pop, std::uint64_t count) {
  std::vector<std::uint64_t> picked;
  picked.reserve(static_cast<std::size_t>(count));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(count) * 2);
  for (std::uint64_t j = pop - count; j < pop; ++j) {
    const std::uint64_t t = bounded(rng, j + 1);
    picked.push_back(seen.insert(t).second ? t : (seen.insert(j), j));
  }
  return picked;
}

}  // namespace adal::detail
