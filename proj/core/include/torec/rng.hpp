#pragma once

#include <cstdint>
#include <random>

namespace torec {

// splitmix64 finalizer; pure function of its argument.
inline std::uint64_t sm64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream derivation: independent substream `tag` of a root seed. Recorded in
// design file headers so a rerun can verify the rule.
inline std::uint64_t stream_seed(std::uint64_t root, std::uint64_t tag) {
  return sm64(root + tag * 0x9E3779B97F4A7C15ULL);
}

// Tags used by the sampling schemes. Band k uses tag k directly.
inline constexpr std::uint64_t kTagTrim = (1ULL << 32) + 1;
inline constexpr std::uint64_t kTagFill = (1ULL << 32) + 2;
inline constexpr std::uint64_t kTagUniform = (1ULL << 32) + 3;

// mt19937_64 is specified bit-for-bit by the standard, unlike the std
// distributions; all bounded draws below use explicit rejection so that
// sequences are identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform draw from [0, n); unbiased via rejection below the largest
// multiple of n representable in 64 bits.
inline std::uint64_t draw_below(Rng& g, std::uint64_t n) {
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
  const std::uint64_t bound = UINT64_MAX - rem;        // inclusive accept zone top
  for (;;) {
    const std::uint64_t r = g();
    if (r <= bound) return r % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(Rng& g) { return double(g() >> 11) * 0x1.0p-53; }

}  // namespace torec
