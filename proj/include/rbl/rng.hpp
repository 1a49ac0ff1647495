#pragma once

#include <cstdint>

#include "rbl/common.hpp"

namespace rbl {

// splitmix64: tiny, fast, and good enough for sampling experiments.
// Used in counter mode: each (seed, stream) pair derives an independent
// deterministic generator, so parallel sampling is schedule-independent.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0xA0761D6478BD642Full + stream * 0xE7037ED1A0B428DBull));
  g.next();
  return g.next();
}

// Independent generator for sample index `stream` under `seed`.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(mix_key(seed, stream));
}

}  // namespace rbl
