#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace coprimality {

// Uniform integer in [lo, hi] by rejection. Unlike
// std::uniform_int_distribution the stream is identical across standard
// libraries, which keeps seeded suites reproducible.
inline std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t u;
  do u = rng();
  while (u >= limit);
  return lo + u % range;
}

}  // namespace coprimality
