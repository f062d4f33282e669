#pragma once

#include <cstdint>

namespace ff {

// Counter-based splitmix64 stream. Pure integer arithmetic, so sequences are
// identical across platforms. One stream per (seed, stream_id) pair; parallel
// consumers get independent streams by construction.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id = 0)
      : state_(mix(seed ^ mix(stream_id + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [a, b]
  double uniform(double a, double b) { return a + (b - a) * next_double(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace ff
