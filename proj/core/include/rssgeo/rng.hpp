#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rssgeo {

// Generator identity recorded in run manifests.  Bump when the stream or the
// normal transform changes; outputs are only comparable at equal identity.
inline constexpr const char* kRngIdentity = "splitmix64-boxmuller-v1";

/// SplitMix64 finalizer (golden-ratio increment followed by the murmur-style
/// avalanche).  Pure function; the basis for streams and substream derivation.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of substream `stream` of a master seed.  Substreams are
/// order-independent: trial k always sees the same draws no matter which
/// trials ran before it or on which thread.
inline constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                              std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream));
}

/// Deterministic SplitMix64 stream.  Identical seed implies an identical
/// sample sequence on every platform.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1]; 53-bit resolution, never exactly zero.
  double next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
  }

  /// Standard normal via the Box-Muller transform, cosine branch.
  /// One draw consumes exactly two uniforms.
  double next_normal() noexcept {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Normal with mean 0 and the given standard deviation.
  double next_normal(double stddev) noexcept { return stddev * next_normal(); }

 private:
  std::uint64_t state_;
};

/// Stream for trial `trial` of a seeded Monte Carlo batch.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) noexcept {
  return Rng(substream_seed(seed, trial));
}

}  // namespace rssgeo
