#pragma once

#include <cstdint>

namespace geodiam {

// SplitMix64 (Steele, Lea, Flood et al.; public-domain reference constants).
// Used as a counter-based generator: substream(seed, i) yields a stream that
// is a pure function of (seed, i), so draws are independent of evaluation
// order and worker count.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  // Stream for item `index` under `seed`; the initial state is one mixing
  // round applied to seed xor a distinct odd multiplier of the index.
  static SplitMix64 substream(uint64_t seed, uint64_t index) {
    return SplitMix64(mix(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))));
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound > 0.  Uses rejection-free multiply-shift,
  // bias is negligible for the bounds used here (< 2^32).
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * bound) >> 64);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace geodiam
