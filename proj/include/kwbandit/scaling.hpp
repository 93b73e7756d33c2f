#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "kwbandit/error.hpp"

namespace kwb {

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< log-space intercept
  double r2 = 1.0;
};

/// Least-squares line through (log scale, log value). r2 is 1 when the values
/// are constant (nothing left to explain).
inline ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> pairs) {
  require(pairs.size() >= 3, "fit_scaling_exponent: at least 3 points required");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [scale, value] : pairs) {
    require(scale > 0 && value > 0 && std::isfinite(scale) && std::isfinite(value),
            "fit_scaling_exponent: scales and values must be positive");
    lx.push_back(std::log(scale));
    ly.push_back(std::log(value));
  }
  const auto n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  require(sxx > 0, "fit_scaling_exponent: scales must not all be equal");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

inline ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& pairs) {
  return fit_scaling_exponent(std::span<const std::pair<double, double>>(pairs));
}

}  // namespace kwb
