#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kwbandit/bounds.hpp"
#include "kwbandit/monte_carlo.hpp"

namespace kwb {

/// Monte-Carlo check of E|X_{s+1} - theta|^2 <= gamma E|X_s - theta|^2 + H(beta).
struct Lemma2Report {
  std::int64_t s_probe = 0;
  double dist2_s = 0.0;        ///< estimate of E|X_s - theta|^2
  double dist2_next = 0.0;     ///< estimate of E|X_{s+1} - theta|^2
  double gamma = 0.0;
  double h = 0.0;
  double standard_error = 0.0; ///< of the paired difference dist2_next - gamma dist2_s
  bool holds = false;
};

/// Runs `replications` independent fixed-step trajectories on the stationary
/// objective `f` and probes the squared distance of the actions at steps
/// s_probe and s_probe + 1. Holds when
/// est(s+1) <= gamma est(s) + H + 3 SE.
inline Lemma2Report lemma2_recursion_check(const FixedStepConfig& cfg, const Point& x0,
                                           const ObjectiveSpec& f, const NoiseModel& noise,
                                           std::int64_t s_probe, std::int64_t replications,
                                           std::uint64_t base_seed, unsigned threads = 1) {
  require(s_probe >= 1, "lemma2_recursion_check: s_probe must be >= 1");
  require(replications >= 2, "lemma2_recursion_check: replications must be >= 2");
  const ClassConstants& k = f.constants();
  FixedStepBoundInputs in{k,
                          cfg.beta,
                          cfg.c,
                          noise.sigma_tilde2(f.domain().dim()),
                          f.domain().diameter(),
                          f.mean_value_offset_bound(cfg.c)};
  Lemma2Report rep;
  rep.s_probe = s_probe;
  rep.gamma = in.gamma();
  rep.h = in.h();

  const auto env = EnvironmentSchedule::stationary(s_probe + 1, f);
  const auto spec = PolicySpec::fixed_step(x0, cfg);
  struct Pair {
    double now = 0.0;
    double next = 0.0;
  };
  const auto pairs = parallel_map(replications, threads, [&](std::int64_t r) {
    RandomStream rng = RandomStream::for_replication(base_seed, static_cast<std::uint64_t>(r));
    Pair p;
    simulate(spec, env, noise, rng, [&](const StepRecord& rec) {
      const double d2 = (rec.action - rec.objective.theta()).squaredNorm();
      if (rec.step == s_probe) p.now = d2;
      if (rec.step == s_probe + 1) p.next = d2;
    });
    return p;
  });

  std::vector<double> now, next, diff;
  for (const auto& p : pairs) {
    now.push_back(p.now);
    next.push_back(p.next);
    diff.push_back(p.next - rep.gamma * p.now);
  }
  rep.dist2_s = summarize(now).mean;
  rep.dist2_next = summarize(next).mean;
  rep.standard_error = summarize(diff).standard_error;
  rep.holds = rep.dist2_next <= rep.gamma * rep.dist2_s + rep.h + 3.0 * rep.standard_error;
  return rep;
}

/// Calibration probe: sqrt(L) times the mean of E|X_s - theta|^2 over
/// s in (L, L + blocks L] on a stationary objective.
struct K5Probe {
  std::int64_t window = 0;
  std::size_t objective = 0;
  double mean_dist2 = 0.0;
  double scaled = 0.0;  ///< sqrt(L) * mean_dist2
};

struct K5Calibration {
  double k5 = 0.0;
  std::vector<K5Probe> probes;
};

/// Fits K5 as the largest sqrt(L) E|X_s - theta|^2 over the probe grid of
/// window lengths and every objective in `objectives`. `base` supplies x0, the
/// window policy and, when set, a fixed perturbation; its window length is
/// replaced by each probe length.
inline K5Calibration calibrate_k5(const SlidingWindowConfig& base, std::optional<double> c,
                                  const std::vector<ObjectiveSpec>& objectives,
                                  const NoiseModel& noise, const std::vector<std::int64_t>& windows,
                                  std::int64_t blocks, std::int64_t replications,
                                  std::uint64_t base_seed, unsigned threads = 1) {
  require(!objectives.empty(), "calibrate_k5: no objectives");
  require(!windows.empty(), "calibrate_k5: empty window grid");
  require(blocks >= 1, "calibrate_k5: blocks must be >= 1");
  require(replications >= 2, "calibrate_k5: replications must be >= 2");
  K5Calibration out;
  std::uint64_t stream = 0;
  for (std::int64_t window : windows) {
    for (std::size_t j = 0; j < objectives.size(); ++j) {
      const ObjectiveSpec& f = objectives[j];
      const auto cfg = SlidingWindowConfig::make(f.domain(), window, base.x0, c, base.policy);
      const auto env = EnvironmentSchedule::stationary(window * (blocks + 1), f);
      const auto spec = PolicySpec::sliding_window(cfg);
      const std::uint64_t seed = derive_stream_seed(base_seed, stream++);
      const auto avgs = parallel_map(replications, threads, [&](std::int64_t r) {
        RandomStream rng = RandomStream::for_replication(seed, static_cast<std::uint64_t>(r));
        double sum = 0.0;
        simulate(spec, env, noise, rng, [&](const StepRecord& rec) {
          if (rec.step > window) sum += (rec.action - rec.objective.theta()).squaredNorm();
        });
        return sum / static_cast<double>(window * blocks);
      });
      K5Probe p;
      p.window = window;
      p.objective = j;
      p.mean_dist2 = summarize(avgs).mean;
      p.scaled = std::sqrt(static_cast<double>(window)) * p.mean_dist2;
      out.k5 = std::max(out.k5, p.scaled);
      out.probes.push_back(p);
    }
  }
  if (!(out.k5 > 0)) out.k5 = std::numeric_limits<double>::min();
  return out;
}

/// Named schedule of the adversarial corpus.
struct ScenarioSchedule {
  std::string name;
  EnvironmentSchedule schedule;
};

/// Finite stand-in for the supremum over function sequences: maximizers jump
/// between two points placed `reach` of the way from the box centre towards
/// opposite corners, with the Delta_T - 1 changes packed early, late or evenly.
inline std::vector<ScenarioSchedule> adversarial_corpus(const ObjectiveSpec& shape,
                                                        std::int64_t horizon,
                                                        std::int64_t episodes,
                                                        double reach = 0.8) {
  require(reach > 0 && reach <= 1, "adversarial_corpus: reach must lie in (0, 1]");
  require(episodes >= 1 && episodes <= horizon, "adversarial_corpus: need 1 <= Delta_T <= T");
  const Domain& dom = shape.domain();
  const Point centre = 0.5 * (dom.lower() + dom.upper());
  const Point half = 0.5 * (dom.upper() - dom.lower());
  auto make = [&](const Point& theta) {
    return shape.kind() == ObjectiveKind::quadratic_bowl
               ? ObjectiveSpec::quadratic_bowl(dom, theta, shape.a(), shape.b())
               : ObjectiveSpec::quartic_perturbed_bowl(dom, theta, shape.a(), shape.b(), shape.q());
  };
  const std::vector<ObjectiveSpec> cycle{make(centre + reach * half), make(centre - reach * half)};

  std::vector<ScenarioSchedule> out;
  out.push_back({"even", EnvironmentSchedule::evenly_spaced(horizon, episodes, cycle)});
  if (episodes > 1) {
    std::vector<std::int64_t> early, late;
    std::vector<ObjectiveSpec> objs;
    for (std::int64_t i = 0; i < episodes; ++i) {
      early.push_back(1 + i);
      late.push_back(i == 0 ? 1 : horizon - episodes + 1 + i);
      objs.push_back(cycle[static_cast<std::size_t>(i % 2)]);
    }
    out.push_back({"early", EnvironmentSchedule(horizon, early, objs)});
    out.push_back({"late", EnvironmentSchedule(horizon, late, objs)});
  }
  return out;
}

struct WorstCase {
  std::string scenario;
  MonteCarloEstimate estimate;
};

/// Largest Monte-Carlo mean regret over the corpus.
inline WorstCase worst_case_regret(const PolicySpec& spec,
                                   const std::vector<ScenarioSchedule>& corpus,
                                   const NoiseModel& noise, std::int64_t replications,
                                   std::uint64_t base_seed, unsigned threads = 1) {
  require(!corpus.empty(), "worst_case_regret: empty corpus");
  WorstCase worst;
  bool first = true;
  for (const auto& sc : corpus) {
    const auto est = monte_carlo_regret(spec, sc.schedule, noise, replications, base_seed, threads);
    if (first || est.mean > worst.estimate.mean) worst = {sc.name, est};
    first = false;
  }
  return worst;
}

}  // namespace kwb
