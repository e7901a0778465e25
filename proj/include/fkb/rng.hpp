#pragma once

#include <cmath>
#include <cstdint>

namespace fkb {

// The canonical generator for the whole project is splitmix64 (Steele,
// Lea & Flood; Vigna's fixed-increment variant). Every stochastic
// routine derives its stream from a user seed and a stream/replica
// index through `replica_seed`, so results depend only on (seed,
// stream) and never on scheduling.

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64_mix(seed ^ ((stream + 1) * kSplitMixGamma));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() { return splitmix64_mix(state_ += kSplitMixGamma); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double next_double_open() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Box-Muller pair; consumes exactly two draws.
  void next_gaussian_pair(double& g1, double& g2) {
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    g1 = r * std::cos(theta);
    g2 = r * std::sin(theta);
  }

 private:
  std::uint64_t state_;
};

// Random access into the bi-infinite stream of a replica: draw k is
// splitmix64_mix(seed_r + GAMMA*(k+1)), i.e. the (k+1)-th output of the
// sequential generator. Negative k wraps modulo 2^64, which keeps the
// map k -> draw injective over the whole index range.
inline std::uint64_t draw_at(std::uint64_t seed_r, std::int64_t k) {
  return splitmix64_mix(seed_r + kSplitMixGamma * (static_cast<std::uint64_t>(k) + 1));
}

}  // namespace fkb
