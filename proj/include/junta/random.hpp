#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace junta {

// All randomness flows through one engine type. The standard fixes the output
// sequence of mt19937_64, but not that of the <random> distributions, so the
// helpers below derive values from raw engine output. That keeps seeded runs
// identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). bound must be nonzero.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool uniform_bit(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace junta
