#pragma once

#include <cstdint>
#include <vector>

namespace ipa {

// Deterministic 64-bit generator (splitmix64). All randomness in the library
// goes through this so generated matrices and sampled trials are reproducible
// across platforms and standard-library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased-enough bounded draw in [0, n) via multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Independent stream for a labelled subcomponent (block of a lifted
  // matrix, worker index, ...). Children with distinct labels do not collide.
  SplitMix64 split(std::uint64_t label) const {
    SplitMix64 child(state_ ^ (0xA0761D6478BD642Full * (label + 1)));
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

// k distinct values from [0, n), returned sorted ascending.
std::vector<int> sample_without_replacement(SplitMix64& rng, int n, int k);

// FNV-1a over a byte range; used for fingerprints and stable per-item hashing.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t seed = 0xCBF29CE484222325ull);

}  // namespace ipa
