#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "kwbandit/algorithms.hpp"
#include "kwbandit/schedule.hpp"

namespace kwb {

/// Allocation rules a trajectory can run. `oracle` plays theta_s and `static_action`
/// always plays x0; both are baselines and never query the environment.
enum class PolicyKind { vanilla, fixed_step, sliding_window, oracle, static_action };

inline std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::vanilla: return "vanilla";
    case PolicyKind::fixed_step: return "fixed-step";
    case PolicyKind::sliding_window: return "sliding-window";
    case PolicyKind::oracle: return "oracle";
    case PolicyKind::static_action: return "static";
  }
  return "?";
}

inline std::optional<PolicyKind> parse_policy_kind(std::string_view s) {
  if (s == "vanilla") return PolicyKind::vanilla;
  if (s == "fixed-step") return PolicyKind::fixed_step;
  if (s == "sliding-window") return PolicyKind::sliding_window;
  if (s == "oracle") return PolicyKind::oracle;
  if (s == "static") return PolicyKind::static_action;
  return std::nullopt;
}

/// A fully tuned allocation rule.
struct PolicySpec {
  PolicyKind kind = PolicyKind::fixed_step;
  Point x0;
  FixedStepConfig fixed;        // fixed_step only
  SlidingWindowConfig window;   // sliding_window only

  static PolicySpec vanilla(Point x0) { return {PolicyKind::vanilla, std::move(x0), {}, {}}; }
  static PolicySpec fixed_step(Point x0, FixedStepConfig cfg) {
    return {PolicyKind::fixed_step, std::move(x0), cfg, {}};
  }
  static PolicySpec sliding_window(SlidingWindowConfig cfg) {
    Point x0 = cfg.x0;
    return {PolicyKind::sliding_window, std::move(x0), {}, std::move(cfg)};
  }
  static PolicySpec oracle(Point x0) { return {PolicyKind::oracle, std::move(x0), {}, {}}; }
  static PolicySpec static_action(Point x0) {
    return {PolicyKind::static_action, std::move(x0), {}, {}};
  }
};

/// What a trajectory reports at every step.
struct StepRecord {
  std::int64_t step;
  std::int64_t episode;
  const Point& action;
  const ObjectiveSpec& objective;
  double regret;
  bool boundary_contact;
};

/// Runs `spec` for T = env.horizon() steps and hands every StepRecord to
/// `sink`. At step s the rule plays X_s, the simulator books the true regret
/// f_s(theta_s) - f_s(X_s), and the rule then measures a central-difference
/// estimate at X_s against f_s and updates.
template <typename Sink>
void simulate(const PolicySpec& spec, const EnvironmentSchedule& env, const NoiseModel& noise,
              RandomStream& rng, Sink&& sink) {
  const Domain& domain = env.domain();
  domain.check_contains(spec.x0, "x0");
  AlgorithmState state = [&] {
    switch (spec.kind) {
      case PolicyKind::vanilla: return AlgorithmState::vanilla(domain, spec.x0);
      case PolicyKind::sliding_window: return AlgorithmState::sliding_window(domain, spec.window);
      default: return AlgorithmState::fixed_step(domain, spec.x0);
    }
  }();

  const auto& taus = env.change_times();
  std::size_t episode = 0;
  for (std::int64_t s = 1; s <= env.horizon(); ++s) {
    while (episode + 1 < taus.size() && taus[episode + 1] <= s) ++episode;
    const ObjectiveSpec& f = env.objectives()[episode];
    const Point& x = spec.kind == PolicyKind::oracle ? f.theta()
                     : spec.kind == PolicyKind::static_action ? spec.x0
                                                              : state.current_x();
    const double regret = f.max_value() - f.evaluate_unchecked(x);
    const auto ep = static_cast<std::int64_t>(episode) + 1;
    if (spec.kind == PolicyKind::oracle || spec.kind == PolicyKind::static_action) {
      sink(StepRecord{s, ep, x, f, regret, false});
      continue;
    }
    const double c = spec.kind == PolicyKind::vanilla      ? state.vanilla_c()
                     : spec.kind == PolicyKind::fixed_step ? spec.fixed.c
                                                           : spec.window.c_fixed;
    GradientEstimate y = estimate_gradient(f, noise, x, c, rng);
    // x aliases state.current_x(): record before updating.
    sink(StepRecord{s, ep, x, f, regret, y.boundary_contact});
    switch (spec.kind) {
      case PolicyKind::vanilla: state.advance_vanilla(y); break;
      case PolicyKind::fixed_step: state.advance_fixed(y, spec.fixed); break;
      default: state.advance_window(std::move(y), spec.window); break;
    }
  }
}

/// Per-step record of one trajectory.
struct RegretTrace {
  std::vector<Point> actions;
  std::vector<double> inst_regret;
  std::vector<double> cum_regret;
  std::vector<std::int64_t> episode;
  std::vector<bool> boundary_contact;

  std::size_t size() const noexcept { return inst_regret.size(); }
  double total() const noexcept { return cum_regret.empty() ? 0.0 : cum_regret.back(); }

  /// Regret summed within each episode (index 0 is episode 1).
  std::vector<double> episode_regret() const {
    std::vector<double> out;
    for (std::size_t s = 0; s < size(); ++s) {
      const auto i = static_cast<std::size_t>(episode[s] - 1);
      if (out.size() <= i) out.resize(i + 1, 0.0);
      out[i] += inst_regret[s];
    }
    return out;
  }
};

inline RegretTrace run_trajectory(const PolicySpec& spec, const EnvironmentSchedule& env,
                                  const NoiseModel& noise, RandomStream& rng) {
  RegretTrace trace;
  const auto n = static_cast<std::size_t>(env.horizon());
  trace.actions.reserve(n);
  trace.inst_regret.reserve(n);
  trace.cum_regret.reserve(n);
  trace.episode.reserve(n);
  trace.boundary_contact.reserve(n);
  double cum = 0.0;
  simulate(spec, env, noise, rng, [&](const StepRecord& r) {
    cum += r.regret;
    trace.actions.push_back(r.action);
    trace.inst_regret.push_back(r.regret);
    trace.cum_regret.push_back(cum);
    trace.episode.push_back(r.episode);
    trace.boundary_contact.push_back(r.boundary_contact);
  });
  return trace;
}

/// Cumulative regret R_T only, accumulated exactly as run_trajectory does.
inline double trajectory_regret(const PolicySpec& spec, const EnvironmentSchedule& env,
                                const NoiseModel& noise, RandomStream& rng) {
  double cum = 0.0;
  simulate(spec, env, noise, rng, [&](const StepRecord& r) { cum += r.regret; });
  return cum;
}

}  // namespace kwb
