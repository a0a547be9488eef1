#pragma once

#include <cstdint>

namespace ifs {

// Identifies one reproducible random stream. Distinct (seed, stream_index)
// pairs give independent-for-practical-purposes generators; the same pair
// always reproduces the same sequence, bit for bit, on every platform.
struct StreamSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

// SplitMix64 with per-stream state derived from
//   seed ^ (0x9E3779B97F4A7C15 * (stream_index + 1)),
// passed through the SplitMix64 output mix once. Without that extra mix the
// raw combination leaves consecutive streams as arithmetic shifts of one
// another (the generator itself steps by the same constant), which makes
// replicas overlap instead of being independent. Uniform doubles are
// (output >> 11) * 2^-53, so u is in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(StreamSpec spec)
      : state_(mix(spec.seed ^
                   (UINT64_C(0x9E3779B97F4A7C15) * (spec.stream_index + 1)))) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream_index)
      : SplitMix64(StreamSpec{seed, stream_index}) {}

  std::uint64_t next_u64() {
    return mix(state_ += UINT64_C(0x9E3779B97F4A7C15));
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace ifs
