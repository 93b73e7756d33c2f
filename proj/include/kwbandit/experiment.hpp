#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kwbandit/analysis.hpp"
#include "kwbandit/bounds.hpp"
#include "kwbandit/conditions.hpp"
#include "kwbandit/config.hpp"
#include "kwbandit/csv.hpp"
#include "kwbandit/monte_carlo.hpp"
#include "kwbandit/scaling.hpp"

namespace kwb {

/// A config turned into ready-to-run objects, with every tuning value the
/// run will use.
struct ResolvedExperiment {
  ExperimentConfig config;
  Domain domain;
  std::vector<ObjectiveSpec> objectives;
  EnvironmentSchedule env;
  NoiseModel noise;
  ClassConstants constants;  ///< declared overrides on top of the analytic constants
  double diameter = 0.0;
  double sigma_tilde2 = 0.0;
  std::int64_t tuning_delta_T = 1;  ///< Delta_T the tuning formulas were fed
  PolicySpec policy;
  std::optional<double> beta;
  std::optional<double> c;
  std::optional<double> epsilon;
  std::optional<std::int64_t> window;
  std::optional<K5Calibration> calibration;
  std::optional<BoundReport> bound;
};

namespace detail {

inline Point to_point(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline ObjectiveSpec build_objective(const Domain& dom, const ObjectiveConfig& o) {
  return o.kind == ObjectiveKind::quadratic_bowl
             ? ObjectiveSpec::quadratic_bowl(dom, to_point(o.theta), o.a, o.b)
             : ObjectiveSpec::quartic_perturbed_bowl(dom, to_point(o.theta), o.a, o.b, o.q);
}

inline NoiseModel build_noise(const NoiseConfig& n) {
  switch (n.kind) {
    case NoiseKind::none: return NoiseModel::none();
    case NoiseKind::gaussian: return NoiseModel::gaussian(n.sigma2);
    case NoiseKind::uniform_bounded: return NoiseModel::uniform_bounded(n.sigma2);
  }
  return NoiseModel::none();
}

inline EnvironmentSchedule build_schedule(const ExperimentConfig& cfg,
                                          const std::vector<ObjectiveSpec>& objs) {
  switch (cfg.schedule.type) {
    case ScheduleType::stationary: return EnvironmentSchedule::stationary(cfg.horizon, objs.front());
    case ScheduleType::evenly_spaced:
      return EnvironmentSchedule::evenly_spaced(cfg.horizon, cfg.schedule.episodes, objs);
    case ScheduleType::change_times: {
      std::vector<ObjectiveSpec> seq;
      for (std::size_t i = 0; i < cfg.schedule.change_times.size(); ++i) seq.push_back(objs[i % objs.size()]);
      return EnvironmentSchedule(cfg.horizon, cfg.schedule.change_times, std::move(seq));
    }
  }
  throw InvalidArgument("unknown schedule type");
}

/// Stream reserved for K5 calibration; replications use indices from 0 up.
inline constexpr std::uint64_t kCalibrationStream = ~std::uint64_t{0};

}  // namespace detail

/// Builds environment, noise, tuning and the matching bound. Runs the K5
/// calibration when the sliding-window rule needs K5 and none is declared.
inline ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg, unsigned threads = 1) {
  std::vector<std::string> errors;
  validate_config(cfg, errors);
  if (!errors.empty()) throw InvalidArgument("invalid config: " + errors.front());

  const Domain dom(detail::to_point(cfg.domain.lower), detail::to_point(cfg.domain.upper));
  std::vector<ObjectiveSpec> objs;
  for (const auto& o : cfg.objectives) objs.push_back(detail::build_objective(dom, o));
  auto env = detail::build_schedule(cfg, objs);
  ResolvedExperiment r{cfg, dom, objs, env, detail::build_noise(cfg.noise)};

  ClassConstants k = objs.front().constants();
  for (const auto& f : objs) k = k.merged_with(f.constants());
  const auto& ov = cfg.constants;
  if (ov.k1) k.k1 = *ov.k1;
  if (ov.k2) k.k2 = *ov.k2;
  if (ov.k3) k.k3 = *ov.k3;
  if (ov.k4) k.k4 = *ov.k4;
  if (ov.k5) k.k5 = *ov.k5;
  if (ov.s0) k.s0 = *ov.s0;
  k.validate();
  r.constants = k;
  r.diameter = dom.diameter();
  r.sigma_tilde2 = r.noise.sigma_tilde2(dom.dim());
  r.tuning_delta_T = cfg.algorithm.delta_T.value_or(env.episode_count());

  const auto& a = cfg.algorithm;
  const Point x0 = detail::to_point(a.x0);
  const std::int64_t T = cfg.horizon;
  switch (a.variant) {
    case PolicyKind::vanilla: r.policy = PolicySpec::vanilla(x0); break;
    case PolicyKind::oracle: r.policy = PolicySpec::oracle(x0); break;
    case PolicyKind::static_action: r.policy = PolicySpec::static_action(x0); break;
    case PolicyKind::fixed_step: {
      const double beta =
          a.beta_auto ? beta_star(r.diameter, r.sigma_tilde2, a.alpha, T, r.tuning_delta_T) : *a.beta;
      const double c = a.c ? *a.c : FixedStepConfig::coupled_c(beta, a.alpha);
      const auto fs = FixedStepConfig::make(beta, c, a.alpha, k);
      r.policy = PolicySpec::fixed_step(x0, fs);
      r.beta = beta;
      r.c = c;
      double eps = 0.0;
      for (const auto& f : objs) eps = std::max(eps, f.mean_value_offset_bound(c));
      r.epsilon = a.epsilon.value_or(eps);
      const FixedStepBoundInputs in{k, beta, c, r.sigma_tilde2, r.diameter, *r.epsilon};
      r.bound = bound_fixed_step(in, T, env.episode_count());
      break;
    }
    case PolicyKind::sliding_window: {
      if (!k.k5 && cfg.calibration) {
        const auto& cal = *cfg.calibration;
        const auto base = SlidingWindowConfig::make(dom, cal.windows.front(), x0, a.c, a.window_policy);
        r.calibration = calibrate_k5(base, a.c, objs, r.noise, cal.windows, cal.blocks, cal.replications,
                                     derive_stream_seed(cfg.seed, detail::kCalibrationStream), threads);
        k.k5 = r.calibration->k5;
        r.constants.k5 = k.k5;
      }
      std::int64_t window = 0;
      if (a.window_auto) {
        if (!k.k5) throw InvalidArgument("auto window requires K5");
        window = l_star(*k.k5, r.diameter, T, r.tuning_delta_T);
      } else {
        window = *a.window;
      }
      require(window > k.s0, "sliding-window: L must exceed s0");
      const auto sw = SlidingWindowConfig::make(dom, window, x0, a.c, a.window_policy);
      r.policy = PolicySpec::sliding_window(sw);
      r.window = window;
      r.c = sw.c_fixed;
      if (k.k5)
        r.bound = bound_sliding_window(k, r.diameter, static_cast<double>(window), T, env.episode_count());
      break;
    }
  }
  return r;
}

struct ExperimentResult {
  ResolvedExperiment resolved;
  RegretTrace trace;  ///< replication 0
  std::vector<double> regrets;
  double mean_regret = 0.0;
  double standard_error = 0.0;
};

inline double regret_standard_error(const std::vector<double>& v, double& mean) {
  if (v.size() == 1) {
    mean = v.front();
    return 0.0;
  }
  const auto est = summarize(v);
  mean = est.mean;
  return est.standard_error;
}

/// Runs every replication; replication r uses the stream (seed, r), so the
/// result does not depend on `threads`.
inline ExperimentResult run_experiment(const ResolvedExperiment& r, unsigned threads = 1) {
  ExperimentResult out{r};
  const auto& cfg = r.config;
  RandomStream rng0 = RandomStream::for_replication(cfg.seed, 0);
  out.trace = run_trajectory(r.policy, r.env, r.noise, rng0);
  out.regrets = parallel_map(cfg.replications, threads, [&](std::int64_t i) {
    if (i == 0) return out.trace.total();
    RandomStream rng = RandomStream::for_replication(cfg.seed, static_cast<std::uint64_t>(i));
    return trajectory_regret(r.policy, r.env, r.noise, rng);
  });
  out.standard_error = regret_standard_error(out.regrets, out.mean_regret);
  return out;
}

// ---- CSV artifacts ---------------------------------------------------------

inline CsvWriter trace_csv(const RegretTrace& t, int dim) {
  std::vector<std::string> header{"step", "episode"};
  for (int i = 1; i <= dim; ++i) header.push_back("x" + std::to_string(i));
  header.insert(header.end(), {"inst_regret", "cum_regret", "boundary_contact"});
  CsvWriter w(header);
  for (std::size_t s = 0; s < t.size(); ++s) {
    w.cell(static_cast<std::int64_t>(s + 1)).cell(t.episode[s]);
    for (int i = 0; i < dim; ++i) w.cell(t.actions[s][i]);
    w.cell(t.inst_regret[s]).cell(t.cum_regret[s]).cell(static_cast<bool>(t.boundary_contact[s]));
    w.end_row();
  }
  return w;
}

namespace detail {

inline const std::vector<std::string>& tuning_columns() {
  static const std::vector<std::string> cols{
      "bound_name", "bound_value", "beta",   "c",  "alpha", "epsilon",      "window", "window_policy",
      "K1",         "K2",          "K3",     "K4", "K5",    "sigma_tilde2", "diameter", "tuning_delta_T"};
  return cols;
}

template <typename T>
void optional_cell(CsvWriter& w, const std::optional<T>& v) {
  if (v) w.cell(*v);
  else w.cell("");
}

inline void tuning_cells(CsvWriter& w, const ResolvedExperiment& r) {
  const auto& a = r.config.algorithm;
  w.cell(r.bound ? std::string(to_string(r.bound->name)) : std::string());
  optional_cell(w, r.bound ? std::optional<double>(r.bound->value) : std::nullopt);
  optional_cell(w, r.beta);
  optional_cell(w, r.c);
  w.cell(a.alpha);
  optional_cell(w, r.epsilon);
  optional_cell(w, r.window);
  w.cell(a.variant == PolicyKind::sliding_window ? std::string(to_string(a.window_policy)) : std::string());
  w.cell(r.constants.k1).cell(r.constants.k2).cell(r.constants.k3).cell(r.constants.k4);
  optional_cell(w, r.constants.k5);
  w.cell(r.sigma_tilde2).cell(r.diameter).cell(r.tuning_delta_T);
}

}  // namespace detail

inline CsvWriter summary_csv(const ExperimentResult& res) {
  std::vector<std::string> header{"variant",     "horizon",        "delta_T",
                                  "replications", "base_seed",     "mean_regret",
                                  "standard_error", "mean_regret_per_step"};
  const auto& tc = detail::tuning_columns();
  header.insert(header.end(), tc.begin(), tc.end());
  CsvWriter w(header);
  const auto& r = res.resolved;
  const auto& cfg = r.config;
  w.cell(std::string(to_string(cfg.algorithm.variant)))
      .cell(cfg.horizon)
      .cell(r.env.episode_count())
      .cell(cfg.replications)
      .cell(cfg.seed)
      .cell(res.mean_regret)
      .cell(res.standard_error)
      .cell(res.mean_regret / static_cast<double>(cfg.horizon));
  detail::tuning_cells(w, r);
  w.end_row();
  return w;
}

inline std::filesystem::path output_dir(const ExperimentConfig& cfg) {
  return cfg.output ? std::filesystem::path(*cfg.output) : std::filesystem::path("out");
}

/// Writes trace.csv and summary.csv into `dir`.
inline void write_experiment(const ExperimentResult& res, const std::filesystem::path& dir) {
  ensure_directory(dir);
  trace_csv(res.trace, res.resolved.domain.dim()).write(dir / "trace.csv");
  summary_csv(res).write(dir / "summary.csv");
}

// ---- sweeps ----------------------------------------------------------------

/// The config of one sweep point: the base with the swept field replaced.
inline ExperimentConfig sweep_point_config(const ExperimentConfig& base, double value) {
  require(base.sweep.has_value(), "sweep_point_config: config has no sweep");
  ExperimentConfig c = base;
  c.sweep.reset();
  const auto iv = static_cast<std::int64_t>(std::llround(value));
  switch (base.sweep->axis) {
    case SweepAxis::horizon: c.horizon = iv; break;
    case SweepAxis::delta_T:
      c.schedule.type = ScheduleType::evenly_spaced;
      c.schedule.change_times.clear();
      c.schedule.episodes = iv;
      c.algorithm.delta_T = iv;
      break;
    case SweepAxis::beta:
      c.algorithm.beta_auto = false;
      c.algorithm.beta = value;
      break;
    case SweepAxis::window:
      c.algorithm.window_auto = false;
      c.algorithm.window = iv;
      break;
  }
  return c;
}

struct SweepPoint {
  double value = 0.0;
  double scale = 0.0;  ///< x coordinate of the fit: Delta_T/T on the delta_T axis, else the value
  ResolvedExperiment resolved;
  std::vector<double> regrets;
  double mean_regret = 0.0;
  double standard_error = 0.0;
  double mean_per_step() const { return mean_regret / static_cast<double>(resolved.config.horizon); }
};

struct SweepResult {
  SweepAxis axis = SweepAxis::horizon;
  std::vector<SweepPoint> points;
  ScalingFit fit;  ///< log(mean R_T / T) against log(scale)
};

/// R_T of replication `rep` at a sweep point; replaced by synthetic values in tests.
using SweepEvaluator = std::function<double(const ResolvedExperiment&, std::int64_t rep)>;

inline double simulate_replication(const ResolvedExperiment& r, std::int64_t rep) {
  RandomStream rng = RandomStream::for_replication(r.config.seed, static_cast<std::uint64_t>(rep));
  return trajectory_regret(r.policy, r.env, r.noise, rng);
}

/// Every (point, replication) pair is one job on the pool. Replication r
/// uses the stream (seed, r) at every point, so points share random numbers.
/// A calibrated K5 is computed once on the base config and reused.
inline SweepResult run_sweep(const ExperimentConfig& base, unsigned threads = 1,
                             const SweepEvaluator& evaluator = simulate_replication) {
  require(base.sweep.has_value(), "run_sweep: config has no sweep section");
  std::vector<std::string> errors;
  validate_config(base, errors);
  if (!errors.empty()) throw InvalidArgument("invalid config: " + errors.front());

  ExperimentConfig shared = base;
  if (base.algorithm.variant == PolicyKind::sliding_window && !base.constants.k5 && base.calibration) {
    ExperimentConfig probe = sweep_point_config(base, base.sweep->values.front());
    const auto r0 = resolve_experiment(probe, threads);
    shared.constants.k5 = r0.constants.k5;
  }

  SweepResult out;
  out.axis = base.sweep->axis;
  for (double v : base.sweep->values) {
    const ExperimentConfig pc = sweep_point_config(shared, v);
    const double scale = out.axis == SweepAxis::delta_T ? v / static_cast<double>(pc.horizon) : v;
    out.points.push_back(SweepPoint{v, scale, resolve_experiment(pc, threads)});
  }

  const auto reps = base.replications;
  const auto n_jobs = static_cast<std::int64_t>(out.points.size()) * reps;
  const auto values = parallel_map(n_jobs, threads, [&](std::int64_t job) {
    const auto& p = out.points[static_cast<std::size_t>(job / reps)];
    return evaluator(p.resolved, job % reps);
  });

  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    auto& p = out.points[i];
    p.regrets.assign(values.begin() + static_cast<std::ptrdiff_t>(i) * reps,
                     values.begin() + static_cast<std::ptrdiff_t>(i + 1) * reps);
    p.standard_error = regret_standard_error(p.regrets, p.mean_regret);
    pairs.emplace_back(p.scale, p.mean_per_step());
  }
  out.fit = fit_scaling_exponent(pairs);
  return out;
}

inline CsvWriter sweep_summary_csv(const SweepResult& s) {
  std::vector<std::string> header{"axis",         "value",           "scale",
                                  "variant",      "horizon",         "delta_T",
                                  "replications", "base_seed",       "mean_regret",
                                  "standard_error", "mean_regret_per_step"};
  const auto& tc = detail::tuning_columns();
  header.insert(header.end(), tc.begin(), tc.end());
  CsvWriter w(header);
  for (const auto& p : s.points) {
    const auto& r = p.resolved;
    w.cell(std::string(to_string(s.axis)))
        .cell(p.value)
        .cell(p.scale)
        .cell(std::string(to_string(r.config.algorithm.variant)))
        .cell(r.config.horizon)
        .cell(r.env.episode_count())
        .cell(r.config.replications)
        .cell(r.config.seed)
        .cell(p.mean_regret)
        .cell(p.standard_error)
        .cell(p.mean_per_step());
    detail::tuning_cells(w, r);
    w.end_row();
  }
  return w;
}

inline CsvWriter sweep_fit_csv(const SweepResult& s) {
  CsvWriter w({"axis", "x", "y", "points", "slope", "intercept", "r2"});
  w.cell(std::string(to_string(s.axis)))
      .cell(s.axis == SweepAxis::delta_T ? "delta_T/T" : std::string(to_string(s.axis)))
      .cell("mean_regret/T")
      .cell(static_cast<std::int64_t>(s.points.size()))
      .cell(s.fit.slope)
      .cell(s.fit.intercept)
      .cell(s.fit.r2);
  w.end_row();
  return w;
}

inline void write_sweep(const SweepResult& s, const std::filesystem::path& dir) {
  ensure_directory(dir);
  sweep_summary_csv(s).write(dir / "sweep_summary.csv");
  sweep_fit_csv(s).write(dir / "sweep_fit.csv");
}

// ---- verify ----------------------------------------------------------------

struct VerifyResult {
  std::vector<ConditionReport> reports;  ///< one per configured objective
  bool all_hold() const {
    for (const auto& r : reports)
      if (!r.all_hold()) return false;
    return true;
  }
};

/// Checks the declared constants against every configured objective.
inline VerifyResult verify_experiment(const ExperimentConfig& cfg, int grid_points_per_axis) {
  const Domain dom(detail::to_point(cfg.domain.lower), detail::to_point(cfg.domain.upper));
  std::vector<ObjectiveSpec> objs;
  for (const auto& o : cfg.objectives) objs.push_back(detail::build_objective(dom, o));
  ClassConstants k = objs.front().constants();
  for (const auto& f : objs) k = k.merged_with(f.constants());
  const auto& ov = cfg.constants;
  if (ov.k1) k.k1 = *ov.k1;
  if (ov.k2) k.k2 = *ov.k2;
  if (ov.k3) k.k3 = *ov.k3;
  if (ov.k4) k.k4 = *ov.k4;
  VerifyResult out;
  for (const auto& f : objs) out.reports.push_back(verify_conditions(f, k, dom, grid_points_per_axis));
  return out;
}

inline CsvWriter verify_csv(const VerifyResult& v) {
  CsvWriter w({"objective", "condition", "declared", "tightest", "holds", "points_checked", "failures",
               "first_failure", "lipschitz_radius"});
  for (std::size_t i = 0; i < v.reports.size(); ++i) {
    const auto& rep = v.reports[i];
    for (const ConditionCheck* c : rep.checks()) {
      w.cell(static_cast<std::int64_t>(i))
          .cell(c->name)
          .cell(c->declared)
          .cell(c->tightest)
          .cell(c->holds)
          .cell(c->points_checked)
          .cell(c->failures)
          .cell(c->failures > 0 ? to_string(c->first_failure) : std::string())
          .cell(rep.lipschitz_radius);
      w.end_row();
    }
  }
  return w;
}

// ---- bounds ----------------------------------------------------------------

struct BoundsResult {
  std::vector<BoundReport> reports;
  std::vector<std::pair<std::string, bool>> checks;  ///< internal identities, see evaluate_bounds
  bool all_checks_hold() const {
    for (const auto& [_, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

namespace detail {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// Evaluates every bound that applies to the configured variant from the
/// config parameters alone. Needs K5 declared for the sliding-window bounds.
/// Also checks identities the formulas must satisfy: the closed form at s = 0
/// returns |x0 - theta|^2, one recursion step from the closed form at s gives
/// the closed form at s + 1, and at the real-valued L* the sliding-window
/// terms are 2:1 and total / T equals K3 times the normalized rate.
inline BoundsResult evaluate_bounds(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.calibration.reset();
  if (c.algorithm.variant == PolicyKind::sliding_window && !c.constants.k5)
    throw InvalidArgument("bounds: sliding-window bounds need constants.K5");
  const auto r = resolve_experiment(c);
  BoundsResult out;
  const std::int64_t T = c.horizon;
  const std::int64_t delta = r.env.episode_count();
  const Point x0 = detail::to_point(c.algorithm.x0);
  if (c.algorithm.variant == PolicyKind::fixed_step) {
    const FixedStepBoundInputs in{r.constants, *r.beta, *r.c, r.sigma_tilde2, r.diameter, *r.epsilon};
    const double d0 = (x0 - r.objectives.front().theta()).squaredNorm();
    out.reports.push_back(lemma2_recursion_bound(in, d0));
    out.reports.push_back(closed_form_distance_bound(T, in, d0));
    out.reports.push_back(bound_fixed_step_stationary(in, T, d0));
    out.reports.push_back(bound_fixed_step(in, T, delta));
    if (r.sigma_tilde2 > 0) {
      BoundReport n{BoundName::normalized_regret_kwb,
                    normalized_regret_bound_kwb(r.constants, r.diameter, r.sigma_tilde2, c.algorithm.alpha,
                                                T, r.tuning_delta_T),
                    {{"alpha", c.algorithm.alpha}, {"T", static_cast<double>(T)},
                     {"delta_T", static_cast<double>(r.tuning_delta_T)}}};
      out.reports.push_back(std::move(n));
    }
    const double g = in.gamma(), h = in.h();
    out.checks.emplace_back("closed-form at s=0 equals |x0-theta|^2",
                            detail::rel_close(closed_form_distance(0, g, h, d0), d0, 1e-12));
    out.checks.emplace_back("recursion step maps closed form s to s+1",
                            detail::rel_close(g * closed_form_distance(T, g, h, d0) + h,
                                              closed_form_distance(T + 1, g, h, d0), 1e-9));
  } else if (c.algorithm.variant == PolicyKind::sliding_window) {
    const double L = static_cast<double>(*r.window);
    out.reports.push_back(bound_sliding_window(r.constants, r.diameter, L, T, delta));
    out.reports.push_back(bound_sliding_window_episode(r.constants, r.diameter, L, r.env.episode_length(1)));
    BoundReport n{BoundName::normalized_regret_kwl,
                  normalized_regret_bound_kwl(r.constants, r.diameter, T, delta),
                  {{"K5", *r.constants.k5}, {"K", r.diameter}, {"T", static_cast<double>(T)},
                   {"delta_T", static_cast<double>(delta)}}};
    out.reports.push_back(std::move(n));
    const double ls = l_star_real(*r.constants.k5, r.diameter, T, delta);
    const auto terms = sliding_window_terms(r.constants.k3, *r.constants.k5, r.diameter, std::max(ls, 1.0), T, delta);
    if (ls >= 1.0) {
      out.checks.emplace_back("terms at real L* are 2:1",
                              detail::rel_close(terms.learning, 2.0 * terms.switching, 1e-9));
      out.checks.emplace_back("total at real L* over T equals K3 times the normalized rate",
                              detail::rel_close(terms.total() / static_cast<double>(T),
                                                r.constants.k3 * out.reports.back().value, 1e-9));
    }
  } else {
    throw InvalidArgument("bounds: variant " + std::string(to_string(c.algorithm.variant)) +
                          " has no regret bound");
  }
  for (const auto& rep : out.reports)
    out.checks.emplace_back(std::string(to_string(rep.name)) + " is finite and >= 0",
                            std::isfinite(rep.value) && rep.value >= 0);
  return out;
}

inline CsvWriter bounds_csv(const BoundsResult& b) {
  CsvWriter w({"bound", "value", "inputs"});
  for (const auto& rep : b.reports) {
    std::string inputs;
    for (const auto& [k, v] : rep.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += k + "=" + format_double(v);
    }
    w.cell(std::string(to_string(rep.name))).cell(rep.value).cell(inputs);
    w.end_row();
  }
  return w;
}

}  // namespace kwb
