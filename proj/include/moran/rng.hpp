#pragma once

#include <cstdint>

namespace moran {

// Finalizer of the splitmix64 generator: a full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Small, fast, splittable PRNG (splitmix64).  A stream is keyed by
// (seed, stream_index), so independent Monte Carlo runs can be generated in
// any order and on any thread with bit-identical results.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_index)
      : state_(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, m); m >= 1.  Rejection sampling.
  std::uint64_t below(std::uint64_t m) {
    const std::uint64_t threshold = (-m) % m;  // 2^64 mod m
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % m;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace moran
