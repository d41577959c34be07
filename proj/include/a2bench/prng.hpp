// Deterministic PRNG used for procedural generation and test fixtures.
//
// The generator is SplitMix64 (Steele, Lea & Flood 2014): a 64-bit state
// advanced by the golden-gamma constant and finalized with a mix function.
// Every output is a pure function of (seed, draw index), so sequences are
// reproducible across platforms and compilers. Streams are split by mixing
// a stream index into the seed before construction.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace a2bench {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) without modulo bias. Rejection-samples the
  // top of the 64-bit range; identical draw sequences on every platform.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on two uniform draws.
  double next_gaussian() {
    double u;
    do {
      u = next_double();
    } while (u == 0.0);
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  std::uint64_t state_;
};

// Derives the seed for stream `index` of a generator family rooted at `seed`.
// Mixing through one SplitMix64 step decorrelates consecutive indices.
inline std::uint64_t split_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
  return mixer.next();
}

}  // namespace a2bench
