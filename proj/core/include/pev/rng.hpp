#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pev/errors.hpp"

namespace pev {

/// Seeded random stream with a fixed algorithm identity: std::mt19937_64
/// (bit-exact across platforms per the C++ standard) with uniform doubles
/// mapped as (x >> 11) * 2^-53. std::uniform_real_distribution is avoided
/// on purpose; its output is implementation defined.
///
/// Substreams are derived by SplitMix64-mixing the root seed with the
/// substream index, giving independent reproducible streams for parallel
/// sampling tasks.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  RandomStream substream(std::uint64_t index) const {
    return RandomStream(mix(seed_ ^ mix(0x9e3779b97f4a7c15ULL + index)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Draws an index with probability weights[i] / sum(weights). Weights
  /// must be nonnegative; throws AllBranchesZero when the sum is not
  /// positive.
  std::size_t choose(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) {
      throw AllBranchesZero("all choice weights are zero");
    }
    const double r = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (r < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pev
