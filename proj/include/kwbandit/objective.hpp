#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "kwbandit/domain.hpp"

namespace kwb {

enum class ObjectiveKind { quadratic_bowl, quartic_perturbed_bowl };

inline std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::quadratic_bowl: return "quadratic-bowl";
    case ObjectiveKind::quartic_perturbed_bowl: return "quartic-perturbed-bowl";
  }
  return "?";
}

inline std::optional<ObjectiveKind> parse_objective_kind(std::string_view s) {
  if (s == "quadratic-bowl") return ObjectiveKind::quadratic_bowl;
  if (s == "quartic-perturbed-bowl") return ObjectiveKind::quartic_perturbed_bowl;
  return std::nullopt;
}

/// Constants of the function class. K1..K4 enter the fixed-step analysis,
/// K5 and s0 the sliding-window one; the latter two are calibration inputs.
struct ClassConstants {
  double k1 = 0.0;  ///< concavity-like: (x-theta)'grad f(x) <= -K1 |x-theta|^2
  double k2 = 0.0;  ///< linear gradient growth: |grad f(x)| <= K2 |x-theta|
  double k3 = 0.0;  ///< quadratic bound: f(theta) - f(x) <= K3 |x-theta|^2
  double k4 = 0.0;  ///< local Lipschitz constant of grad f
  std::optional<double> k5;
  int s0 = 0;

  void validate() const {
    require(k1 > 0 && k2 > 0 && k3 > 0 && k4 > 0, "class constants K1..K4 must be > 0");
    require(!k5 || *k5 > 0, "class constant K5 must be > 0");
    require(s0 >= 0, "class constant s0 must be >= 0");
  }

  /// Constants valid for both `*this` and `other`.
  ClassConstants merged_with(const ClassConstants& other) const {
    ClassConstants out;
    out.k1 = std::min(k1, other.k1);
    out.k2 = std::max(k2, other.k2);
    out.k3 = std::max(k3, other.k3);
    out.k4 = std::max(k4, other.k4);
    if (k5 && other.k5) out.k5 = std::max(*k5, *other.k5);
    else out.k5 = k5 ? k5 : other.k5;
    out.s0 = std::max(s0, other.s0);
    return out;
  }

  bool operator==(const ClassConstants&) const = default;
};

/// Synthetic objective on a box domain with a known maximizer.
///
///   quadratic-bowl:          f(x) = a - b |x-theta|^2
///   quartic-perturbed-bowl:  f(x) = a - b |x-theta|^2 - q |x-theta|^4
///
/// Both are maximized at theta with f(theta) = a. The analytic class
/// constants are exact for the bowl and worst-case-over-D for the quartic.
class ObjectiveSpec {
 public:
  static ObjectiveSpec quadratic_bowl(const Domain& domain, Point theta, double a, double b) {
    return ObjectiveSpec(ObjectiveKind::quadratic_bowl, domain, std::move(theta), a, b, 0.0);
  }

  static ObjectiveSpec quartic_perturbed_bowl(const Domain& domain, Point theta, double a,
                                              double b, double q) {
    require(q > 0, "quartic-perturbed-bowl: q must be > 0");
    return ObjectiveSpec(ObjectiveKind::quartic_perturbed_bowl, domain, std::move(theta), a, b, q);
  }

  ObjectiveKind kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }
  const Point& theta() const noexcept { return theta_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double q() const noexcept { return q_; }
  double max_value() const noexcept { return a_; }

  /// Analytically derived constants (K5 unset, s0 = 0).
  const ClassConstants& constants() const noexcept { return constants_; }

  double evaluate(const Point& x) const {
    domain_.check_contains(x, "evaluate: x");
    return evaluate_unchecked(x);
  }

  Point gradient(const Point& x) const {
    domain_.check_contains(x, "analytic_gradient: x");
    return gradient_unchecked(x);
  }

  /// f(theta) - f(x), the instantaneous regret of playing x.
  double gap(const Point& x) const { return max_value() - evaluate(x); }

  /// Radius of the smallest Condition-4 offset: the central difference with
  /// step c equals grad f(x + e) with |e| below this value for every interior x.
  ///
  /// The quartic term gives M(x) = grad f(x) - 4 q c^2 (x - theta); solving
  /// along x - theta yields |e| <= 4 q c^2 r / (2b + 12 q r^2) <= c^2 sqrt(q / 6b).
  double mean_value_offset_bound(double c) const {
    require(c > 0, "mean_value_offset_bound: c must be > 0");
    if (kind_ == ObjectiveKind::quadratic_bowl) return 0.0;
    const double r_max = domain_.max_distance_from(theta_);
    const double peak = std::sqrt(b_ / (6.0 * q_));
    const double r = std::min(r_max, peak);
    return 4.0 * q_ * c * c * r / (2.0 * b_ + 12.0 * q_ * r * r);
  }

  double evaluate_unchecked(const Point& x) const {
    const double r2 = (x - theta_).squaredNorm();
    return a_ - b_ * r2 - q_ * r2 * r2;
  }

  Point gradient_unchecked(const Point& x) const {
    const Point u = x - theta_;
    return -(2.0 * b_ + 4.0 * q_ * u.squaredNorm()) * u;
  }

  /// Two specs are equal when they describe the same function on the same box.
  bool same_function(const ObjectiveSpec& o) const {
    return kind_ == o.kind_ && a_ == o.a_ && b_ == o.b_ && q_ == o.q_ &&
           theta_.size() == o.theta_.size() && theta_ == o.theta_;
  }

 private:
  ObjectiveSpec(ObjectiveKind kind, const Domain& domain, Point theta, double a, double b,
                double q)
      : kind_(kind), domain_(domain), theta_(std::move(theta)), a_(a), b_(b), q_(q) {
    require(std::isfinite(a_), "objective: a must be finite");
    require(b_ > 0 && std::isfinite(b_), "objective: b must be > 0");
    domain_.check_contains(theta_, "objective: theta");
    const double r2 = std::pow(domain_.max_distance_from(theta_), 2);
    constants_.k1 = 2.0 * b_;
    constants_.k2 = 2.0 * b_ + 4.0 * q_ * r2;
    constants_.k3 = b_ + q_ * r2;
    constants_.k4 = 2.0 * b_ + 12.0 * q_ * r2;
  }

  ObjectiveKind kind_;
  Domain domain_;
  Point theta_;
  double a_;
  double b_;
  double q_;
  ClassConstants constants_;
};

inline double evaluate(const ObjectiveSpec& f, const Point& x) { return f.evaluate(x); }
inline Point analytic_gradient(const ObjectiveSpec& f, const Point& x) { return f.gradient(x); }

}  // namespace kwb
