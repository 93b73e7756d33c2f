#pragma once

#include <Eigen/Dense>

#include <sstream>
#include <string>

#include "kwbandit/error.hpp"

namespace kwb {

/// A point of R^d: an action, an iterate or a maximizer.
using Point = Eigen::VectorXd;

inline std::string to_string(const Point& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

/// Axis-aligned box [lower, upper] with nonempty interior.
class Domain {
 public:
  Domain(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    require(lower_.size() >= 1, "domain: dimension must be >= 1");
    require(lower_.size() == upper_.size(), "domain: lower/upper dimension mismatch");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
      require(std::isfinite(lower_[i]) && std::isfinite(upper_[i]),
              "domain: bounds must be finite");
      require(lower_[i] < upper_[i], "domain: lower[i] < upper[i] required on every axis");
    }
    diameter_ = (upper_ - lower_).norm();
  }

  /// The box [lo, hi]^d.
  static Domain cube(int d, double lo, double hi) {
    return Domain(Point::Constant(d, lo), Point::Constant(d, hi));
  }

  int dim() const noexcept { return static_cast<int>(lower_.size()); }
  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }

  /// Euclidean diameter K of the box.
  double diameter() const noexcept { return diameter_; }

  bool contains(const Point& x) const noexcept {
    if (x.size() != lower_.size()) return false;
    return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
  }

  /// Largest distance from `x` to any point of the box (attained at a corner).
  double max_distance_from(const Point& x) const {
    const Eigen::ArrayXd far = (x - lower_).cwiseAbs().array().max((upper_ - x).cwiseAbs().array());
    return far.matrix().norm();
  }

  void check_contains(const Point& x, const char* what = "point") const {
    if (x.size() != lower_.size())
      throw DomainViolation(std::string(what) + " has dimension " + std::to_string(x.size()) +
                            ", domain has " + std::to_string(lower_.size()));
    if (!contains(x)) throw DomainViolation(std::string(what) + " " + to_string(x) + " outside domain");
  }

 private:
  Point lower_;
  Point upper_;
  double diameter_ = 0.0;
};

/// Euclidean projection onto the box, i.e. a componentwise clamp.
inline Point project(const Domain& domain, const Point& x) {
  require(x.size() == domain.dim(), "project: dimension mismatch");
  return x.cwiseMax(domain.lower()).cwiseMin(domain.upper());
}

}  // namespace kwb
