#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "kwbandit/objective.hpp"
#include "kwbandit/random.hpp"

namespace kwb {

enum class NoiseKind { none, gaussian, uniform_bounded };

inline std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::uniform_bounded: return "uniform-bounded";
  }
  return "?";
}

inline std::optional<NoiseKind> parse_noise_kind(std::string_view s) {
  if (s == "none") return NoiseKind::none;
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "uniform-bounded") return NoiseKind::uniform_bounded;
  return std::nullopt;
}

/// Additive zero-mean reward noise with variance sigma2. The uniform kind has
/// support [-sqrt(3 sigma2), sqrt(3 sigma2)].
class NoiseModel {
 public:
  static NoiseModel none() { return NoiseModel(NoiseKind::none, 0.0); }
  static NoiseModel gaussian(double sigma2) { return NoiseModel(NoiseKind::gaussian, sigma2); }
  static NoiseModel uniform_bounded(double sigma2) {
    return NoiseModel(NoiseKind::uniform_bounded, sigma2);
  }

  NoiseModel(NoiseKind kind, double sigma2) : kind_(kind), sigma2_(sigma2) {
    require(sigma2_ >= 0 && std::isfinite(sigma2_), "noise: sigma2 must be >= 0");
    require(kind_ != NoiseKind::none || sigma2_ == 0.0, "noise: kind none requires sigma2 = 0");
  }

  NoiseKind kind() const noexcept { return kind_; }
  double sigma2() const noexcept { return sigma2_; }

  /// sigma~^2 = 4 d sigma^2, the variance scale of a d-axis central difference.
  double sigma_tilde2(int d) const noexcept { return 4.0 * d * sigma2_; }

  /// Half-width of the uniform support.
  double half_width() const noexcept { return std::sqrt(3.0 * sigma2_); }

  /// Engine draws consumed per sample: none 0, uniform 1, gaussian 2.
  int draws_per_sample() const noexcept {
    switch (kind_) {
      case NoiseKind::none: return 0;
      case NoiseKind::uniform_bounded: return 1;
      case NoiseKind::gaussian: return 2;
    }
    return 0;
  }

  double draw(RandomStream& rng) const {
    switch (kind_) {
      case NoiseKind::none: return 0.0;
      case NoiseKind::gaussian: return std::sqrt(sigma2_) * rng.normal();
      case NoiseKind::uniform_bounded: {
        const double h = half_width();
        return rng.uniform(-h, h);
      }
    }
    return 0.0;
  }

  bool operator==(const NoiseModel&) const = default;

 private:
  NoiseKind kind_;
  double sigma2_;
};

/// Noisy reward F = f(x) + xi.
inline double sample_reward(const NoiseModel& noise, const ObjectiveSpec& f, const Point& x,
                            RandomStream& rng) {
  const double mean = f.evaluate(x);
  return mean + noise.draw(rng);
}

}  // namespace kwb
