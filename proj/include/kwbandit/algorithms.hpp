#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>

#include "kwbandit/gradient.hpp"
#include "kwbandit/tuning.hpp"

namespace kwb {

/// Fixed-step configuration: X_{s+1} = project(X_s + beta Y_s) with Y_s
/// measured at perturbation c.
struct FixedStepConfig {
  double beta = 0.0;
  double c = 0.0;
  double alpha = 1.0;

  /// Validates beta, c > 0 and gamma(beta, K1, K2) < 1 for `constants`.
  static FixedStepConfig make(double beta, double c, double alpha, const ClassConstants& constants) {
    require(beta > 0 && std::isfinite(beta), "fixed-step: beta must be > 0");
    require(c > 0 && std::isfinite(c), "fixed-step: c must be > 0");
    require(alpha > 0 && alpha <= 1, "fixed-step: alpha must lie in (0, 1]");
    gamma(beta, constants.k1, constants.k2);
    return FixedStepConfig{beta, c, alpha};
  }

  /// Step size coupled to the perturbation, beta = c^(2/(1-alpha)); needs alpha < 1.
  static FixedStepConfig coupled(double c, double alpha, const ClassConstants& constants) {
    require(alpha > 0 && alpha < 1, "fixed-step: coupled step needs alpha in (0, 1)");
    require(c > 0, "fixed-step: c must be > 0");
    return make(std::pow(c, 2.0 / (1.0 - alpha)), c, alpha, constants);
  }

  /// Perturbation paired with a given step, c = beta^((1-alpha)/2).
  static double coupled_c(double beta, double alpha) {
    require(alpha > 0 && alpha < 1, "fixed-step: coupled c needs alpha in (0, 1)");
    return std::pow(beta, (1.0 - alpha) / 2.0);
  }

  bool operator==(const FixedStepConfig&) const = default;
};

/// How the window buffer forgets.
///  - sliding: drop the single oldest estimate once more than L are held.
///  - restart: once L estimates are held, start over from an empty buffer,
///    so each action is the restarted KW iterate X0 + sum beta_n Y_(n).
enum class WindowPolicy { sliding, restart };

inline std::string_view to_string(WindowPolicy p) {
  return p == WindowPolicy::sliding ? "sliding" : "restart";
}

inline std::optional<WindowPolicy> parse_window_policy(std::string_view s) {
  if (s == "sliding") return WindowPolicy::sliding;
  if (s == "restart") return WindowPolicy::restart;
  return std::nullopt;
}

/// Weight of the n-th oldest estimate in the window, beta_n = n^(-1/2).
inline double window_weight(std::int64_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

struct SlidingWindowConfig {
  std::int64_t window = 1;
  Point x0;
  double c_fixed = 1.0;
  WindowPolicy policy = WindowPolicy::restart;

  /// c_fixed defaults to L^(-1/4).
  static SlidingWindowConfig make(const Domain& domain, std::int64_t window, Point x0,
                                  std::optional<double> c = std::nullopt,
                                  WindowPolicy policy = WindowPolicy::restart) {
    require(window >= 1, "sliding-window: L must be >= 1");
    domain.check_contains(x0, "sliding-window: x0");
    const double cf = c ? *c : std::pow(static_cast<double>(window), -0.25);
    require(cf > 0 && std::isfinite(cf), "sliding-window: c must be > 0");
    return SlidingWindowConfig{window, std::move(x0), cf, policy};
  }
};

/// X = project(x0 + sum_{n=1}^{m} n^(-1/2) y_(n)), y_(1) the oldest estimate.
/// Summation runs oldest to newest starting from x0.
template <typename Buffer>
Point sliding_window_action(const SlidingWindowConfig& cfg, const Domain& domain,
                            const Buffer& buffer) {
  Point acc = cfg.x0;
  std::int64_t n = 0;
  for (const GradientEstimate& est : buffer) acc += window_weight(++n) * est.y;
  return project(domain, acc);
}

enum class Variant { vanilla, fixed_step, sliding_window };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::vanilla: return "vanilla";
    case Variant::fixed_step: return "fixed-step";
    case Variant::sliding_window: return "sliding-window";
  }
  return "?";
}

/// Iterate of one KW trajectory. `steps()` counts completed updates, so the
/// update being applied is step s = steps() + 1.
class AlgorithmState {
 public:
  static AlgorithmState vanilla(const Domain& domain, Point x0) {
    return AlgorithmState(Variant::vanilla, domain, std::move(x0));
  }
  static AlgorithmState fixed_step(const Domain& domain, Point x0) {
    return AlgorithmState(Variant::fixed_step, domain, std::move(x0));
  }
  static AlgorithmState sliding_window(const Domain& domain, const SlidingWindowConfig& cfg) {
    AlgorithmState st(Variant::sliding_window, domain, cfg.x0);
    st.window_sum_ = cfg.x0;
    return st;
  }

  Variant variant() const noexcept { return variant_; }
  const Domain& domain() const noexcept { return domain_; }
  const Point& current_x() const noexcept { return x_; }
  std::int64_t steps() const noexcept { return steps_; }
  const std::deque<GradientEstimate>& window_buffer() const noexcept { return buffer_; }

  /// c_s = s^(-1/4) of the vanilla schedule at the upcoming step.
  double vanilla_c() const { return std::pow(static_cast<double>(steps_ + 1), -0.25); }

  void advance_vanilla(const GradientEstimate& y) {
    expect(Variant::vanilla);
    const double beta = 1.0 / std::sqrt(static_cast<double>(steps_ + 1));
    x_ = project(domain_, x_ + beta * y.y);
    ++steps_;
  }

  void advance_fixed(const GradientEstimate& y, const FixedStepConfig& cfg) {
    expect(Variant::fixed_step);
    x_ = project(domain_, x_ + cfg.beta * y.y);
    ++steps_;
  }

  void advance_window(GradientEstimate y, const SlidingWindowConfig& cfg) {
    expect(Variant::sliding_window);
    const auto cap = static_cast<std::size_t>(cfg.window);
    if (cfg.policy == WindowPolicy::sliding) {
      buffer_.push_back(std::move(y));
      if (buffer_.size() > cap) buffer_.pop_front();
      x_ = sliding_window_action(cfg, domain_, buffer_);
    } else {
      if (buffer_.size() >= cap) {
        buffer_.clear();
        window_sum_ = cfg.x0;
      }
      buffer_.push_back(std::move(y));
      // Same operation order as sliding_window_action, so replay is bit-exact.
      window_sum_ += window_weight(static_cast<std::int64_t>(buffer_.size())) * buffer_.back().y;
      x_ = project(domain_, window_sum_);
    }
    ++steps_;
  }

 private:
  AlgorithmState(Variant v, const Domain& domain, Point x0)
      : variant_(v), domain_(domain), x_(std::move(x0)) {
    domain_.check_contains(x_, "initial iterate x0");
  }

  void expect(Variant v) const {
    require(variant_ == v, std::string("algorithm state is ") + std::string(to_string(variant_)) +
                               ", update requires " + std::string(to_string(v)));
  }

  Variant variant_;
  Domain domain_;
  Point x_;
  std::int64_t steps_ = 0;
  std::deque<GradientEstimate> buffer_;
  Point window_sum_;
};

inline AlgorithmState step_vanilla(AlgorithmState state, const GradientEstimate& y) {
  state.advance_vanilla(y);
  return state;
}

inline AlgorithmState step_fixed(AlgorithmState state, const GradientEstimate& y,
                                 const FixedStepConfig& cfg) {
  state.advance_fixed(y, cfg);
  return state;
}

inline AlgorithmState sliding_window_advance(AlgorithmState state, GradientEstimate y,
                                             const SlidingWindowConfig& cfg) {
  state.advance_window(std::move(y), cfg);
  return state;
}

}  // namespace kwb
