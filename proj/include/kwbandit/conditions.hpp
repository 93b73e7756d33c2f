#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kwbandit/objective.hpp"

namespace kwb {

/// Outcome of one grid check. `tightest` is the best constant the grid
/// supports: the smallest ratio for lower-bound constants (K1), the largest
/// for upper-bound constants (K2, K3, K4).
struct ConditionCheck {
  std::string name;
  double declared = 0.0;
  double tightest = 0.0;
  bool holds = true;
  std::int64_t points_checked = 0;
  std::int64_t failures = 0;
  Point first_failure;
};

struct ConditionReport {
  ConditionCheck maximizer;  ///< f(theta) >= f(x)
  ConditionCheck cl;         ///< concavity-like, K1
  ConditionCheck lbg;        ///< linearly bounded gradient, K2
  ConditionCheck qb;         ///< quadratically bounded, K3
  ConditionCheck lipschitz;  ///< local Lipschitz gradient, K4
  double lipschitz_radius = 0.0;
  std::int64_t grid_points = 0;

  bool all_hold() const {
    return maximizer.holds && cl.holds && lbg.holds && qb.holds && lipschitz.holds;
  }

  std::vector<const ConditionCheck*> checks() const {
    return {&maximizer, &cl, &lbg, &qb, &lipschitz};
  }
};

namespace detail {

/// Relative slack absorbing rounding when a constant is attained exactly.
inline constexpr double kConditionRelTol = 1e-10;

inline void record_failure(ConditionCheck& c, const Point& x) {
  if (c.failures == 0) c.first_failure = x;
  ++c.failures;
  c.holds = false;
}

}  // namespace detail

/// Checks the declared constants of `f` on a regular grid of
/// `grid_points_per_axis`^d points spanning `domain` (corners included).
/// The Lipschitz condition is checked over all pairs of adjacent grid
/// points, including diagonal neighbours, so its radius is spacing * sqrt(d).
inline ConditionReport verify_conditions(const ObjectiveSpec& f, const ClassConstants& declared,
                                         const Domain& domain, int grid_points_per_axis) {
  require(grid_points_per_axis >= 2, "verify_conditions: grid_points_per_axis must be >= 2");
  require(domain.dim() == f.domain().dim(), "verify_conditions: dimension mismatch");
  const int d = domain.dim();
  const int n = grid_points_per_axis;
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) {
    require(total <= (std::int64_t{1} << 26) / n, "verify_conditions: grid too large");
    total *= n;
  }

  const Point spacing = (domain.upper() - domain.lower()) / static_cast<double>(n - 1);
  std::vector<Point> points;
  std::vector<Point> grads;
  points.reserve(static_cast<std::size_t>(total));
  grads.reserve(static_cast<std::size_t>(total));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (std::int64_t k = 0; k < total; ++k) {
    Point x(d);
    for (int i = 0; i < d; ++i)
      x[i] = (idx[i] == n - 1) ? domain.upper()[i] : domain.lower()[i] + idx[i] * spacing[i];
    points.push_back(x);
    grads.push_back(f.gradient_unchecked(x));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
  }

  ConditionReport rep;
  rep.grid_points = total;
  rep.maximizer = {"maximizer", f.max_value(), -std::numeric_limits<double>::infinity()};
  rep.cl = {"CL", declared.k1, std::numeric_limits<double>::infinity()};
  rep.lbg = {"LBG", declared.k2, 0.0};
  rep.qb = {"QB", declared.k3, 0.0};
  rep.lipschitz = {"Lipschitz", declared.k4, 0.0};
  rep.lipschitz_radius = spacing.norm();

  const double tol = detail::kConditionRelTol;
  const double fmax = f.max_value();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& x = points[k];
    const double fx = f.evaluate_unchecked(x);
    ++rep.maximizer.points_checked;
    rep.maximizer.tightest = std::max(rep.maximizer.tightest, fx);
    if (fx > fmax + tol * std::max(1.0, std::abs(fmax))) detail::record_failure(rep.maximizer, x);

    const Point u = x - f.theta();
    const double r2 = u.squaredNorm();
    if (r2 == 0.0) continue;  // every inequality is 0 <= 0 at theta

    const double cl_ratio = -u.dot(grads[k]) / r2;
    ++rep.cl.points_checked;
    rep.cl.tightest = std::min(rep.cl.tightest, cl_ratio);
    if (cl_ratio < declared.k1 * (1.0 - tol)) detail::record_failure(rep.cl, x);

    const double lbg_ratio = grads[k].norm() / std::sqrt(r2);
    ++rep.lbg.points_checked;
    rep.lbg.tightest = std::max(rep.lbg.tightest, lbg_ratio);
    if (lbg_ratio > declared.k2 * (1.0 + tol)) detail::record_failure(rep.lbg, x);

    const double qb_ratio = (fmax - fx) / r2;
    ++rep.qb.points_checked;
    rep.qb.tightest = std::max(rep.qb.tightest, qb_ratio);
    if (qb_ratio > declared.k3 * (1.0 + tol)) detail::record_failure(rep.qb, x);
  }

  // Forward neighbours only: offsets in {-1,0,1}^d whose first nonzero entry is +1.
  std::vector<std::vector<int>> offsets;
  std::vector<int> off(static_cast<std::size_t>(d), -1);
  while (true) {
    int first = 0;
    for (int v : off)
      if (v != 0) {
        first = v;
        break;
      }
    if (first == 1) offsets.push_back(off);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++off[i] <= 1) break;
      off[i] = -1;
    }
    if (i < 0) break;
  }
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;

  idx.assign(static_cast<std::size_t>(d), 0);
  for (std::int64_t k = 0; k < total; ++k) {
    for (const auto& o : offsets) {
      std::int64_t j = k;
      bool inside = true;
      for (int i = 0; i < d && inside; ++i) {
        const int v = idx[i] + o[i];
        inside = v >= 0 && v < n;
        j += o[i] * stride[i];
      }
      if (!inside) continue;
      const double dist = (points[k] - points[j]).norm();
      const double ratio = (grads[k] - grads[j]).norm() / dist;
      ++rep.lipschitz.points_checked;
      rep.lipschitz.tightest = std::max(rep.lipschitz.tightest, ratio);
      if (ratio > declared.k4 * (1.0 + tol)) detail::record_failure(rep.lipschitz, points[k]);
    }
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
  }
  return rep;
}

/// Verifies the analytically derived constants of `f` on its own domain.
inline ConditionReport verify_conditions(const ObjectiveSpec& f, int grid_points_per_axis) {
  return verify_conditions(f, f.constants(), f.domain(), grid_points_per_axis);
}

}  // namespace kwb
