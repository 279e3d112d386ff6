#pragma once

#include <cstdint>
#include <random>

namespace somguard {

// The standard distributions are implementation-defined, so draws are derived
// directly from the 64-bit Mersenne Twister output. Same seed, same stream,
// on every platform.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
inline double uniform_between(Rng& rng, double lo, double hi) {
  const double u = uniform_unit(rng);
  const double v = lo + (hi - lo) * u;
  return v > hi ? hi : v;
}

// Uniform integer in [0, n) by rejection, free of modulo bias. n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - Rng::max() % n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

}  // namespace somguard
