#pragma once

#include <cstdint>

namespace qproc {

/// Counter-based pseudo-random generator (SplitMix64 output function).
/// Output i depends only on (key, i), so independent substreams can be
/// derived for parallel sweeps and results do not depend on evaluation
/// order or thread count. Same seed, same sequence, bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (pairs generated, one cached).
  double next_gaussian();

  /// Independent generator for substream `idx` of this generator's key.
  CounterRng stream(std::uint64_t idx) const {
    return CounterRng(mix(key_ ^ mix(idx + kGamma)));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qproc
