#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kwbandit/objective.hpp"
#include "kwbandit/tuning.hpp"

namespace kwb {

enum class BoundName {
  lemma2_recursion,
  closed_form_distance,
  fixed_step_stationary,
  fixed_step_nonstationary,
  sliding_window_per_episode,
  sliding_window_total,
  normalized_regret_kwb,
  normalized_regret_kwl,
};

inline constexpr BoundName kAllBounds[] = {
    BoundName::lemma2_recursion,           BoundName::closed_form_distance,
    BoundName::fixed_step_stationary,      BoundName::fixed_step_nonstationary,
    BoundName::sliding_window_per_episode, BoundName::sliding_window_total,
    BoundName::normalized_regret_kwb,      BoundName::normalized_regret_kwl,
};

inline std::string_view to_string(BoundName b) {
  switch (b) {
    case BoundName::lemma2_recursion: return "lemma2-recursion";
    case BoundName::closed_form_distance: return "closed-form-distance";
    case BoundName::fixed_step_stationary: return "fixed-step-stationary";
    case BoundName::fixed_step_nonstationary: return "fixed-step-nonstationary";
    case BoundName::sliding_window_per_episode: return "sliding-window-per-episode";
    case BoundName::sliding_window_total: return "sliding-window-total";
    case BoundName::normalized_regret_kwb: return "normalized-regret-kwb";
    case BoundName::normalized_regret_kwl: return "normalized-regret-kwl";
  }
  return "?";
}

inline std::optional<BoundName> parse_bound_name(std::string_view s) {
  for (BoundName b : kAllBounds)
    if (to_string(b) == s) return b;
  return std::nullopt;
}

struct BoundReport {
  BoundName name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
};

/// Everything the fixed-step bounds depend on.
struct FixedStepBoundInputs {
  ClassConstants constants;
  double beta = 0.0;
  double c = 0.0;
  double sigma_tilde2 = 0.0;
  double diameter = 0.0;  ///< K
  double epsilon = 0.0;   ///< mean-value offset bound, < c^2

  double gamma() const { return kwb::gamma(beta, constants.k1, constants.k2); }
  double h() const {
    return h_beta(beta, c, sigma_tilde2, diameter, constants.k4, constants.k2, epsilon);
  }

  std::vector<std::pair<std::string, double>> echo() const {
    return {{"beta", beta},         {"c", c},         {"sigma_tilde2", sigma_tilde2},
            {"K", diameter},        {"epsilon", epsilon}, {"K1", constants.k1},
            {"K2", constants.k2},   {"K3", constants.k3}, {"K4", constants.k4},
            {"gamma", gamma()},     {"H", h()}};
  }
};

/// E|X_s - theta|^2 <= H (1 - gamma^s) / (1 - gamma) + |x0 - theta|^2 gamma^s.
inline double closed_form_distance(std::int64_t s, double gamma, double h, double x0_dist2) {
  require(s >= 0, "closed_form_distance: s must be >= 0");
  require(gamma < 1.0, "closed_form_distance: gamma must be < 1");
  const double gs = std::pow(gamma, static_cast<double>(s));
  return h * (1.0 - gs) / (1.0 - gamma) + x0_dist2 * gs;
}

inline BoundReport closed_form_distance_bound(std::int64_t s, const FixedStepBoundInputs& in,
                                              double x0_dist2) {
  auto echo = in.echo();
  echo.emplace_back("s", static_cast<double>(s));
  echo.emplace_back("x0_dist2", x0_dist2);
  return {BoundName::closed_form_distance, closed_form_distance(s, in.gamma(), in.h(), x0_dist2),
          std::move(echo)};
}

/// One step of the conditional recursion: gamma * dist2 + H(beta).
inline BoundReport lemma2_recursion_bound(const FixedStepBoundInputs& in, double dist2) {
  auto echo = in.echo();
  echo.emplace_back("dist2", dist2);
  return {BoundName::lemma2_recursion, in.gamma() * dist2 + in.h(), std::move(echo)};
}

/// Stationary fixed-step regret: K3 H T / (1-gamma) + |x0 - theta|^2 K3 / (1-gamma).
inline BoundReport bound_fixed_step_stationary(const FixedStepBoundInputs& in, std::int64_t horizon,
                                               double x0_dist2) {
  require(horizon >= 0, "bound: T must be >= 0");
  const double g = in.gamma();
  const double k3 = in.constants.k3;
  const double v = k3 * in.h() * static_cast<double>(horizon) / (1.0 - g) + x0_dist2 * k3 / (1.0 - g);
  auto echo = in.echo();
  echo.emplace_back("T", static_cast<double>(horizon));
  echo.emplace_back("x0_dist2", x0_dist2);
  return {BoundName::fixed_step_stationary, v, std::move(echo)};
}

/// Piecewise-stationary fixed-step regret:
/// H K3 T / (1-gamma) + K^2 Delta_T K3 / (1-gamma).
inline BoundReport bound_fixed_step(const FixedStepBoundInputs& in, std::int64_t horizon,
                                    std::int64_t episodes) {
  require(horizon >= 0, "bound: T must be >= 0");
  require(episodes >= 1, "bound: Delta_T must be >= 1");
  const double g = in.gamma();
  const double k3 = in.constants.k3;
  const double kk = in.diameter * in.diameter;
  const double v = in.h() * k3 * static_cast<double>(horizon) / (1.0 - g) +
                   kk * static_cast<double>(episodes) * k3 / (1.0 - g);
  auto echo = in.echo();
  echo.emplace_back("T", static_cast<double>(horizon));
  echo.emplace_back("delta_T", static_cast<double>(episodes));
  return {BoundName::fixed_step_nonstationary, v, std::move(echo)};
}

/// The two terms of the sliding-window bound, K3 K5 T / sqrt(L) and L K3 K Delta_T.
struct SlidingWindowTerms {
  double learning = 0.0;
  double switching = 0.0;
  double total() const { return learning + switching; }
};

inline SlidingWindowTerms sliding_window_terms(double k3, double k5, double diameter, double window,
                                               std::int64_t horizon, std::int64_t episodes) {
  require(window >= 1, "bound: L must be >= 1");
  require(k3 > 0 && k5 > 0 && diameter > 0, "bound: K3, K5, K must be > 0");
  require(horizon >= 0 && episodes >= 1, "bound: need T >= 0, Delta_T >= 1");
  return {k3 * k5 * static_cast<double>(horizon) / std::sqrt(window),
          window * k3 * diameter * static_cast<double>(episodes)};
}

inline double require_k5(const ClassConstants& constants) {
  if (!constants.k5) throw InvalidArgument("sliding-window bound requires K5 (declared or calibrated)");
  return *constants.k5;
}

inline BoundReport bound_sliding_window(const ClassConstants& constants, double diameter,
                                        double window, std::int64_t horizon, std::int64_t episodes) {
  const double k5 = require_k5(constants);
  const auto terms = sliding_window_terms(constants.k3, k5, diameter, window, horizon, episodes);
  return {BoundName::sliding_window_total,
          terms.total(),
          {{"K3", constants.k3},
           {"K5", k5},
           {"K", diameter},
           {"L", window},
           {"T", static_cast<double>(horizon)},
           {"delta_T", static_cast<double>(episodes)}}};
}

/// Regret of one episode of length T_i: K3 (K5 (T_i - L)^+ / sqrt(L) + min(L, T_i) K).
inline BoundReport bound_sliding_window_episode(const ClassConstants& constants, double diameter,
                                                double window, std::int64_t episode_length) {
  const double k5 = require_k5(constants);
  require(window >= 1 && episode_length >= 0, "bound: need L >= 1, T_i >= 0");
  const double ti = static_cast<double>(episode_length);
  const double v = constants.k3 * (k5 * std::max(ti - window, 0.0) / std::sqrt(window) +
                                   std::min(window, ti) * diameter);
  return {BoundName::sliding_window_per_episode,
          v,
          {{"K3", constants.k3}, {"K5", k5}, {"K", diameter}, {"L", window}, {"T_i", ti}}};
}

/// 2^(1/3) + 2^(-2/3).
inline double kwl_rate_coefficient() { return std::cbrt(2.0) + 1.0 / std::cbrt(4.0); }

/// R(T, KW(L*)) / T <= K5^(2/3) K^(1/3) (Delta_T / T)^(1/3) (2^(1/3) + 2^(-2/3)).
inline double normalized_regret_bound_kwl(const ClassConstants& constants, double diameter,
                                          std::int64_t horizon, std::int64_t episodes) {
  const double k5 = require_k5(constants);
  require(diameter > 0, "bound: K must be > 0");
  detail::check_rate(horizon, episodes);
  const double rate = static_cast<double>(episodes) / static_cast<double>(horizon);
  const double k5c = std::cbrt(k5);
  return k5c * k5c * std::cbrt(diameter) * std::cbrt(rate) * kwl_rate_coefficient();
}

/// R(T, KW_beta*) / T <= K3/(2 K1) (Lambda^a x^(1/(2+a)) + 2 K K4 Lambda^a x^(1/(2+a))
///                      + 2 Lambda^3 x^(3/(2+a)) + K^2/Lambda x^((1+a)/(2+a))), x = Delta_T/T.
inline double normalized_regret_bound_kwb(const ClassConstants& constants, double diameter,
                                          double sigma_tilde2, double alpha, std::int64_t horizon,
                                          std::int64_t episodes) {
  detail::check_rate(horizon, episodes);
  const double lam = lambda_constant(diameter, sigma_tilde2, alpha);
  const double x = static_cast<double>(episodes) / static_cast<double>(horizon);
  const double e = 1.0 / (2.0 + alpha);
  const double la = std::pow(lam, alpha);
  const double sum = la * std::pow(x, e) + 2.0 * diameter * constants.k4 * la * std::pow(x, e) +
                     2.0 * lam * lam * lam * std::pow(x, 3.0 * e) +
                     diameter * diameter / lam * std::pow(x, (1.0 + alpha) * e);
  return constants.k3 / (2.0 * constants.k1) * sum;
}

}  // namespace kwb
