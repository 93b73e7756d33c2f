#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace kwb {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used only to derive
/// well-separated seeds, never as the sampling engine.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream for replication `index` under `base_seed`.
/// Depends only on the pair, so adding replications never shifts existing ones.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
}

/// Random stream owned by a single trajectory. Every variate consumes a fixed
/// number of engine draws: uniform 1, normal 2.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_replication(std::uint64_t base_seed, std::uint64_t index) {
    return RandomStream(derive_stream_seed(base_seed, index));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller; the sine branch is discarded so the draw
  /// count stays fixed.
  double normal() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Engine outputs consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::uint64_t next() {
    ++draws_;
    return engine_();
  }

  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace kwb
