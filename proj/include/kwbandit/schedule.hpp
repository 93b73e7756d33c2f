#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kwbandit/objective.hpp"

namespace kwb {

/// Piecewise-stationary environment. Episode i (1-based) covers the steps
/// [tau_i, tau_{i+1} - 1]; a change takes effect AT its change time.
class EnvironmentSchedule {
 public:
  EnvironmentSchedule(std::int64_t horizon, std::vector<std::int64_t> change_times,
                      std::vector<ObjectiveSpec> objectives)
      : horizon_(horizon), change_times_(std::move(change_times)), objectives_(std::move(objectives)) {
    require(horizon_ >= 1, "schedule: horizon T must be >= 1");
    require(!change_times_.empty(), "schedule: at least one episode required");
    require(change_times_.size() == objectives_.size(),
            "schedule: one objective per episode required");
    require(change_times_.front() == 1, "schedule: the first episode must start at step 1");
    for (std::size_t i = 1; i < change_times_.size(); ++i) {
      require(change_times_[i] > change_times_[i - 1], "schedule: change times must increase");
      require(!objectives_[i].same_function(objectives_[i - 1]),
              "schedule: consecutive episodes must serve different objectives (episode " +
                  std::to_string(i + 1) + ")");
    }
    require(change_times_.back() <= horizon_, "schedule: change times must lie in [1, T]");
    const int d = objectives_.front().domain().dim();
    for (const auto& f : objectives_) require(f.domain().dim() == d, "schedule: dimension mismatch");
  }

  static EnvironmentSchedule stationary(std::int64_t horizon, ObjectiveSpec f) {
    return EnvironmentSchedule(horizon, {1}, {std::move(f)});
  }

  /// `episodes` evenly spaced episodes, tau_i = 1 + floor((i-1) T / episodes),
  /// cycling through `cycle` (so a two-element cycle alternates maximizers).
  static EnvironmentSchedule evenly_spaced(std::int64_t horizon, std::int64_t episodes,
                                           const std::vector<ObjectiveSpec>& cycle) {
    require(episodes >= 1 && episodes <= horizon, "schedule: need 1 <= episodes <= T");
    require(!cycle.empty(), "schedule: objective cycle is empty");
    std::vector<std::int64_t> taus;
    std::vector<ObjectiveSpec> objs;
    taus.reserve(static_cast<std::size_t>(episodes));
    for (std::int64_t i = 0; i < episodes; ++i) {
      taus.push_back(1 + (i * horizon) / episodes);
      objs.push_back(cycle[static_cast<std::size_t>(i) % cycle.size()]);
    }
    return EnvironmentSchedule(horizon, std::move(taus), std::move(objs));
  }

  std::int64_t horizon() const noexcept { return horizon_; }
  const std::vector<std::int64_t>& change_times() const noexcept { return change_times_; }
  const std::vector<ObjectiveSpec>& objectives() const noexcept { return objectives_; }
  const Domain& domain() const noexcept { return objectives_.front().domain(); }

  /// Delta_T, the number of episodes up to T.
  std::int64_t episode_count() const noexcept {
    return static_cast<std::int64_t>(change_times_.size());
  }

  /// T_i = tau_{i+1} - tau_i, with tau_{Delta_T + 1} = T + 1.
  std::int64_t episode_length(std::int64_t episode) const {
    require(episode >= 1 && episode <= episode_count(), "schedule: episode out of range");
    const auto i = static_cast<std::size_t>(episode - 1);
    const std::int64_t end = (i + 1 < change_times_.size()) ? change_times_[i + 1] : horizon_ + 1;
    return end - change_times_[i];
  }

  /// 1-based episode containing step s.
  std::int64_t episode_at(std::int64_t s) const {
    if (s < 1 || s > horizon_)
      throw InvalidArgument("objective_at: step " + std::to_string(s) + " outside [1, " +
                            std::to_string(horizon_) + "]");
    const auto it = std::upper_bound(change_times_.begin(), change_times_.end(), s);
    return static_cast<std::int64_t>(it - change_times_.begin());
  }

  const ObjectiveSpec& objective_at(std::int64_t s) const {
    return objectives_[static_cast<std::size_t>(episode_at(s) - 1)];
  }

  /// Class constants valid for every objective in the schedule.
  ClassConstants class_constants() const {
    ClassConstants c = objectives_.front().constants();
    for (const auto& f : objectives_) c = c.merged_with(f.constants());
    return c;
  }

 private:
  std::int64_t horizon_;
  std::vector<std::int64_t> change_times_;
  std::vector<ObjectiveSpec> objectives_;
};

inline const ObjectiveSpec& objective_at(const EnvironmentSchedule& env, std::int64_t s) {
  return env.objective_at(s);
}

}  // namespace kwb
