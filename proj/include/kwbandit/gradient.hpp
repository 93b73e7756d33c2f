#pragma once

#include "kwbandit/noise.hpp"

namespace kwb {

/// Central-difference gradient estimate Y with its raw samples.
/// y[i] = (plus_samples[i] - minus_samples[i]) / (2 c_used) exactly, even when
/// a perturbation point had to be clamped into the domain.
struct GradientEstimate {
  Point y;
  Point plus_samples;
  Point minus_samples;
  double c_used = 0.0;
  bool boundary_contact = false;
};

/// Queries 2d noisy rewards at project(x +/- c e(i)), axis by axis, plus
/// before minus, and returns the componentwise central differences.
inline GradientEstimate estimate_gradient(const ObjectiveSpec& f, const NoiseModel& noise,
                                          const Point& x, double c, RandomStream& rng) {
  require(c > 0 && std::isfinite(c), "estimate_gradient: c must be > 0");
  const Domain& domain = f.domain();
  domain.check_contains(x, "estimate_gradient: x");
  const int d = domain.dim();

  GradientEstimate est;
  est.c_used = c;
  est.y.resize(d);
  est.plus_samples.resize(d);
  est.minus_samples.resize(d);
  Point probe = x;
  for (int i = 0; i < d; ++i) {
    const double lo = domain.lower()[i];
    const double hi = domain.upper()[i];
    const double xp = x[i] + c;
    const double xm = x[i] - c;
    probe[i] = std::min(xp, hi);
    est.boundary_contact |= xp > hi;
    est.plus_samples[i] = f.evaluate_unchecked(probe) + noise.draw(rng);
    probe[i] = std::max(xm, lo);
    est.boundary_contact |= xm < lo;
    est.minus_samples[i] = f.evaluate_unchecked(probe) + noise.draw(rng);
    probe[i] = x[i];
    est.y[i] = (est.plus_samples[i] - est.minus_samples[i]) / (2.0 * c);
  }
  return est;
}

}  // namespace kwb
