#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "kwbandit/error.hpp"

namespace kwb {

/// Contraction factor of the fixed-step recursion,
/// gamma = 1 - 2 beta K1 + 2 beta^2 K2^2. Throws unless gamma < 1.
inline double gamma(double beta, double k1, double k2) {
  require(beta >= 0 && std::isfinite(beta), "gamma: beta must be >= 0");
  require(k1 > 0 && k2 > 0, "gamma: K1, K2 must be > 0");
  const double g = 1.0 - 2.0 * beta * k1 + 2.0 * beta * beta * k2 * k2;
  if (!(g < 1.0))
    throw ContractionViolation("gamma(beta=" + std::to_string(beta) + ") = " + std::to_string(g) +
                               " >= 1: step size does not contract");
  return g;
}

/// Per-step error floor H(beta) = beta^2 sigma~^2 / c^2 + 2 K K4 beta eps + 2 beta^2 K2^2 eps^2.
inline double h_beta(double beta, double c, double sigma_tilde2, double diameter, double k4,
                     double k2, double epsilon) {
  require(beta >= 0 && c > 0 && sigma_tilde2 >= 0 && diameter > 0 && k4 > 0 && k2 > 0 &&
              epsilon >= 0,
          "h_beta: inputs out of range");
  if (!(epsilon < c * c))
    throw Condition4Violation("h_beta: epsilon=" + std::to_string(epsilon) +
                              " must be < c^2=" + std::to_string(c * c));
  return beta * beta * sigma_tilde2 / (c * c) + 2.0 * diameter * k4 * beta * epsilon +
         2.0 * beta * beta * k2 * k2 * epsilon * epsilon;
}

namespace detail {

/// x^(1/(2+alpha)); the cube root is taken exactly when alpha = 1.
inline double root_2_plus_alpha(double x, double alpha) {
  return alpha == 1.0 ? std::cbrt(x) : std::pow(x, 1.0 / (2.0 + alpha));
}

inline void check_rate(std::int64_t horizon, std::int64_t episodes) {
  require(horizon >= 1, "horizon T must be >= 1");
  require(episodes >= 1 && episodes <= horizon, "Delta_T must lie in [1, T]");
}

}  // namespace detail

/// Lambda = (K^2 / sigma~^2)^(1/(2+alpha)).
inline double lambda_constant(double diameter, double sigma_tilde2, double alpha) {
  require(diameter > 0, "lambda: K must be > 0");
  require(sigma_tilde2 > 0, "lambda: sigma~^2 must be > 0");
  require(alpha > 0 && alpha <= 1, "lambda: alpha must lie in (0, 1]");
  return detail::root_2_plus_alpha(diameter * diameter / sigma_tilde2, alpha);
}

/// Optimal fixed step beta* = Lambda (Delta_T / T)^(1/(2+alpha)).
inline double beta_star(double diameter, double sigma_tilde2, double alpha, std::int64_t horizon,
                        std::int64_t episodes) {
  detail::check_rate(horizon, episodes);
  const double rate = static_cast<double>(episodes) / static_cast<double>(horizon);
  return lambda_constant(diameter, sigma_tilde2, alpha) * detail::root_2_plus_alpha(rate, alpha);
}

/// Unrounded window minimizing the sliding-window bound,
/// (K5 / (2K) * T / Delta_T)^(2/3).
inline double l_star_real(double k5, double diameter, std::int64_t horizon, std::int64_t episodes) {
  require(k5 > 0 && diameter > 0, "l_star: K5 and K must be > 0");
  detail::check_rate(horizon, episodes);
  const double x = k5 / (2.0 * diameter) * static_cast<double>(horizon) /
                   static_cast<double>(episodes);
  const double c = std::cbrt(x);
  return c * c;
}

/// L* rounded to the nearest integer, at least 1.
inline std::int64_t l_star(double k5, double diameter, std::int64_t horizon,
                           std::int64_t episodes) {
  const auto l = static_cast<std::int64_t>(std::llround(l_star_real(k5, diameter, horizon, episodes)));
  return std::max<std::int64_t>(l, 1);
}

}  // namespace kwb
