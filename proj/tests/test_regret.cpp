#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kwbandit/analysis.hpp"
#include "kwbandit/scaling.hpp"

using namespace kwb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

Domain line(double lo, double hi) { return Domain(pt({lo}), pt({hi})); }

ObjectiveSpec neg_x2() { return ObjectiveSpec::quadratic_bowl(line(-2, 2), pt({0}), 0.0, 1.0); }

PolicySpec fixed_policy(double beta = 0.1, double c = 0.1, Point x0 = pt({1})) {
  return PolicySpec::fixed_step(std::move(x0), FixedStepConfig::make(beta, c, 1.0, neg_x2().constants()));
}

EnvironmentSchedule two_bowls(std::int64_t T, std::int64_t episodes) {
  const Domain d = line(-1, 1);
  return EnvironmentSchedule::evenly_spaced(
      T, episodes,
      {ObjectiveSpec::quadratic_bowl(d, pt({0.6}), 0, 1), ObjectiveSpec::quadratic_bowl(d, pt({-0.6}), 0, 1)});
}

}  // namespace

TEST_CASE("noiseless fixed-step trace") {
  const auto env = EnvironmentSchedule::stationary(30, neg_x2());
  RandomStream rng(1);
  const auto tr = run_trajectory(fixed_policy(), env, NoiseModel::none(), rng);
  REQUIRE(tr.size() == 30);
  CHECK(tr.actions[0][0] == 1.0);
  CHECK(tr.inst_regret[0] == 1.0);
  CHECK_THAT(tr.actions[1][0], WithinAbs(0.8, 1e-15));
  CHECK_THAT(tr.inst_regret[1], WithinAbs(0.64, 1e-15));
  double sum = 0;
  for (int s = 0; s < 30; ++s) {
    CHECK_THAT(tr.actions[s][0], WithinAbs(std::pow(0.8, s), 1e-14));
    sum += tr.inst_regret[s];
    CHECK(tr.cum_regret[s] == sum);
  }
}

TEST_CASE("start at the maximizer gives zero regret") {
  const auto env = EnvironmentSchedule::stationary(50, neg_x2());
  for (auto spec : {fixed_policy(0.1, 0.1, pt({0})), PolicySpec::vanilla(pt({0}))}) {
    RandomStream rng(1);
    const auto tr = run_trajectory(spec, env, NoiseModel::none(), rng);
    for (double r : tr.inst_regret) CHECK(r == 0.0);
  }
}

TEST_CASE("oracle plays theta_s and has zero regret") {
  const auto env = two_bowls(500, 7);
  RandomStream rng(1);
  const auto tr = run_trajectory(PolicySpec::oracle(pt({0})), env, NoiseModel::gaussian(1.0), rng);
  for (std::size_t s = 0; s < tr.size(); ++s) {
    CHECK(tr.inst_regret[s] == 0.0);
    CHECK(tr.actions[s] == objective_at(env, static_cast<std::int64_t>(s) + 1).theta());
  }
  CHECK(rng.draws() == 0);
}

TEST_CASE("static baseline regret is the gap of x0") {
  const auto env = two_bowls(100, 2);
  RandomStream rng(1);
  const auto tr = run_trajectory(PolicySpec::static_action(pt({0.1})), env, NoiseModel::none(), rng);
  CHECK_THAT(tr.total(), WithinRel(50 * 0.25 + 50 * 0.49, 1e-12));
}

TEST_CASE("trace invariants hold for every variant") {
  const auto env = two_bowls(600, 5);
  const auto noise = NoiseModel::gaussian(0.5);
  const auto k = env.class_constants();
  std::vector<PolicySpec> specs{
      PolicySpec::vanilla(pt({0})),
      PolicySpec::fixed_step(pt({0}), FixedStepConfig::make(0.05, 0.2, 1.0, k)),
      PolicySpec::sliding_window(SlidingWindowConfig::make(env.domain(), 30, pt({0}), 0.2, WindowPolicy::sliding)),
      PolicySpec::sliding_window(SlidingWindowConfig::make(env.domain(), 30, pt({0}), 0.2, WindowPolicy::restart))};
  for (const auto& spec : specs) {
    RandomStream rng(3);
    const auto tr = run_trajectory(spec, env, noise, rng);
    REQUIRE(tr.size() == 600);
    double prev = 0;
    for (std::size_t s = 0; s < tr.size(); ++s) {
      CHECK(tr.inst_regret[s] >= 0.0);
      CHECK(tr.cum_regret[s] >= prev);
      prev = tr.cum_regret[s];
      CHECK(env.domain().contains(tr.actions[s]));
      CHECK(tr.episode[s] == env.episode_at(static_cast<std::int64_t>(s) + 1));
    }
    const auto per_episode = tr.episode_regret();
    double total = 0;
    for (double e : per_episode) total += e;
    CHECK(per_episode.size() == 5);
    CHECK_THAT(total, WithinRel(tr.total(), 1e-12));
    RandomStream rng2(3);
    CHECK(trajectory_regret(spec, env, noise, rng2) == tr.total());
  }
}

TEST_CASE("compensated summation and summarize") {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(v) == 2.0);
  std::vector<double> same(10, 0.1);
  const auto est = summarize(same);
  CHECK(est.mean == 0.1);
  CHECK(est.standard_error == 0.0);
  std::vector<double> w{1, 2, 3, 4};
  const auto e2 = summarize(w, 9);
  CHECK(e2.mean == 2.5);
  CHECK_THAT(e2.standard_error, WithinRel(std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3.0 / 4.0), 1e-15));
  CHECK(e2.base_seed == 9);
  CHECK_THROWS_AS(summarize(std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("monte carlo: noiseless runs have zero error") {
  const auto env = EnvironmentSchedule::stationary(40, neg_x2());
  const auto est = monte_carlo_regret(fixed_policy(), env, NoiseModel::none(), 8, 5);
  RandomStream rng(0);
  CHECK(est.mean == trajectory_regret(fixed_policy(), env, NoiseModel::none(), rng));
  CHECK(est.standard_error == 0.0);
  CHECK(est.replications == 8);
  CHECK_THROWS_AS(monte_carlo_regret(fixed_policy(), env, NoiseModel::none(), 1, 5), InvalidArgument);
}

TEST_CASE("monte carlo: adding replications keeps existing ones") {
  const auto env = two_bowls(300, 3);
  const auto spec = PolicySpec::sliding_window(SlidingWindowConfig::make(env.domain(), 20, pt({0}), 0.25));
  const auto noise = NoiseModel::gaussian(1.0);
  const auto small = replicate_regret(spec, env, noise, 10, 77, 1);
  const auto big = replicate_regret(spec, env, noise, 20, 77, 3);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == big[i]);
  const auto a = monte_carlo_regret(spec, env, noise, 20, 77, 1);
  const auto b = monte_carlo_regret(spec, env, noise, 20, 77, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("monte carlo mean under the fixed-step bound") {
  const auto f = neg_x2();
  const auto env = EnvironmentSchedule::stationary(1000, f);
  const auto cfg = FixedStepConfig::make(0.1, 0.1, 1.0, f.constants());
  const auto est = monte_carlo_regret(PolicySpec::fixed_step(pt({1}), cfg), env, NoiseModel::gaussian(1.0), 1000, 3);
  const FixedStepBoundInputs in{f.constants(), 0.1, 0.1, 4.0, f.domain().diameter(), 0.0};
  CHECK(est.mean <= bound_fixed_step(in, 1000, 1).value);
}

TEST_CASE("parallel_map propagates errors") {
  CHECK_THROWS_AS(parallel_map(50, 4,
                               [](std::int64_t i) {
                                 if (i == 17) throw InvalidArgument("boom");
                                 return i;
                               }),
                  InvalidArgument);
  const auto v = parallel_map(100, 4, [](std::int64_t i) { return i * i; });
  for (std::int64_t i = 0; i < 100; ++i) CHECK(v[static_cast<std::size_t>(i)] == i * i);
}

TEST_CASE("closed_form_distance examples") {
  CHECK(closed_form_distance(0, 0.82, 4.0, 1.7) == 1.7);
  CHECK_THAT(closed_form_distance(100000, 0.82, 4.0, 1.0), WithinRel(4.0 / 0.18, 1e-12));
  CHECK_THAT(closed_form_distance(2, 0.82, 0.0, 1.0), WithinRel(0.6724, 1e-14));
  CHECK_THROWS_AS(closed_form_distance(-1, 0.82, 4.0, 1.0), InvalidArgument);
}

TEST_CASE("closed form iterates the recursion") {
  const double g = 0.7, h = 0.3, d0 = 2.0;
  double x = d0;
  for (int s = 0; s < 50; ++s) {
    CHECK_THAT(closed_form_distance(s, g, h, d0), WithinRel(x, 1e-12));
    x = g * x + h;
  }
}

TEST_CASE("bound_fixed_step examples") {
  // K3 = 1, gamma = 0.82, H = 4, K = 2: beta = 0.1, K1 = K2 = 1, c = 0.1, sigma~^2 = 4
  const FixedStepBoundInputs in{ClassConstants{1, 1, 1, 1}, 0.1, 0.1, 4.0, 2.0, 0.0};
  REQUIRE_THAT(in.gamma(), WithinRel(0.82, 1e-15));
  REQUIRE_THAT(in.h(), WithinRel(4.0, 1e-14));
  CHECK_THAT(bound_fixed_step(in, 100, 1).value, WithinRel(4 * 100 / 0.18 + 4 / 0.18, 1e-12));
  const double per_episode = 4.0 * 1.0 / 0.18;
  CHECK_THAT(bound_fixed_step(in, 100, 2).value - bound_fixed_step(in, 100, 1).value,
             WithinRel(per_episode, 1e-9));
  CHECK_THAT(bound_fixed_step(in, 0, 3).value, WithinRel(3 * per_episode, 1e-12));
  CHECK(bound_fixed_step(in, 100, 1).name == BoundName::fixed_step_nonstationary);
  // stationary form with x0_dist2 = K^2 coincides
  CHECK_THAT(bound_fixed_step_stationary(in, 100, 4.0).value, WithinRel(bound_fixed_step(in, 100, 1).value, 1e-15));
  const FixedStepBoundInputs bad{ClassConstants{1, 1, 1, 1}, 1.5, 0.1, 4.0, 2.0, 0.0};
  CHECK_THROWS_AS(bound_fixed_step(bad, 100, 1), ContractionViolation);
}

TEST_CASE("one-step recursion bound") {
  const FixedStepBoundInputs in{ClassConstants{1, 1, 1, 1}, 0.1, 0.1, 4.0, 2.0, 0.0};
  CHECK_THAT(lemma2_recursion_bound(in, 1.0).value, WithinRel(0.82 + 4.0, 1e-14));
}

TEST_CASE("bound_sliding_window examples") {
  ClassConstants k{1, 1, 1, 1, 2.0};
  CHECK_THAT(bound_sliding_window(k, 1.0, 4, 100, 1).value, WithinRel(104.0, 1e-15));
  CHECK_THAT(bound_sliding_window(k, 1.0, 1, 100, 3).value, WithinRel(2 * 100 + 3, 1e-15));
  k.k5 = 16;
  const double ls = l_star_real(16, 1, 1000, 8);
  const auto t = sliding_window_terms(1.0, 16, 1.0, ls, 1000, 8);
  CHECK_THAT(t.learning / t.switching, WithinRel(2.0, 1e-9));
  ClassConstants none{1, 1, 1, 1};
  CHECK_THROWS_AS(bound_sliding_window(none, 1.0, 4, 100, 1), InvalidArgument);
  CHECK_THROWS_AS(bound_sliding_window(k, 1.0, 0.5, 100, 1), InvalidArgument);
}

TEST_CASE("sliding-window bound is unimodal in L") {
  const ClassConstants k{1, 1, 1.3, 1, 3.0};
  const double ls = l_star_real(3.0, 2.0, 50000, 5);
  double prev = bound_sliding_window(k, 2.0, 1, 50000, 5).value;
  for (double L = 2; L < ls; L += 1) {
    const double v = bound_sliding_window(k, 2.0, L, 50000, 5).value;
    CHECK(v < prev);
    prev = v;
  }
  prev = bound_sliding_window(k, 2.0, std::ceil(ls), 50000, 5).value;
  for (double L = std::ceil(ls) + 1; L < 4 * ls; L += 1) {
    const double v = bound_sliding_window(k, 2.0, L, 50000, 5).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("per-episode sliding-window bound") {
  const ClassConstants k{1, 1, 2.0, 1, 3.0};
  CHECK_THAT(bound_sliding_window_episode(k, 1.5, 16, 100).value,
             WithinRel(2.0 * (3.0 * 84 / 4.0 + 16 * 1.5), 1e-15));
  CHECK_THAT(bound_sliding_window_episode(k, 1.5, 16, 10).value, WithinRel(2.0 * 10 * 1.5, 1e-15));
}

TEST_CASE("normalized KW_L bound") {
  CHECK_THAT(kwl_rate_coefficient(), WithinAbs(1.88988, 1e-5));
  const ClassConstants k{1, 1, 1, 1, 1.0};
  CHECK_THAT(normalized_regret_bound_kwl(k, 1.0, 1000, 1), WithinRel(0.1 * kwl_rate_coefficient(), 1e-14));
  double prev = 0;
  for (std::int64_t d : {1, 2, 5, 10, 100, 1000}) {
    const double v = normalized_regret_bound_kwl(k, 1.0, 100000, d);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(normalized_regret_bound_kwl(k, 1.0, 1000000000, 1) < 2e-3);
}

TEST_CASE("normalized KW_L bound equals the total at the real L* over K3 T") {
  const ClassConstants k{1, 1, 1.0, 1, 5.0};
  const double ls = l_star_real(5.0, 1.5, 80000, 12);
  const double total = bound_sliding_window(k, 1.5, ls, 80000, 12).value;
  CHECK_THAT(total / 80000.0, WithinRel(normalized_regret_bound_kwl(k, 1.5, 80000, 12), 1e-12));
}

TEST_CASE("normalized KW_beta bound scales like (Delta/T)^(1/3) at alpha = 1 for small rates") {
  const ClassConstants k{2, 2, 1, 2};
  const double a = normalized_regret_bound_kwb(k, 4.0, 4.0, 1.0, 1000000000, 1);
  const double b = normalized_regret_bound_kwb(k, 4.0, 4.0, 1.0, 1000000000, 8);
  CHECK_THAT(b / a, WithinRel(2.0, 1e-3));
  CHECK(a > 0);
}

TEST_CASE("bound names round trip") {
  for (BoundName b : kAllBounds) CHECK(parse_bound_name(to_string(b)) == b);
  CHECK_FALSE(parse_bound_name("nope").has_value());
}

TEST_CASE("fit_scaling_exponent examples") {
  std::vector<std::pair<double, double>> p;
  for (double s : {10.0, 100.0, 1000.0}) p.emplace_back(s, std::pow(s, -1.0 / 3.0));
  auto fit = fit_scaling_exponent(p);
  CHECK_THAT(fit.slope, WithinAbs(-1.0 / 3.0, 1e-12));
  CHECK_THAT(fit.r2, WithinAbs(1.0, 1e-12));
  p = {{1, 4}, {2, 4}, {3, 4}};
  CHECK_THAT(fit_scaling_exponent(p).slope, WithinAbs(0.0, 1e-14));
  p.clear();
  for (double s : {2.0, 7.0, 30.0, 400.0}) p.emplace_back(s, 5 * std::sqrt(s));
  CHECK_THAT(fit_scaling_exponent(p).slope, WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(fit_scaling_exponent(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), InvalidArgument);
  CHECK_THROWS_AS(fit_scaling_exponent(std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {3, 1}}),
                  InvalidArgument);
}

TEST_CASE("recursion check on a noiseless bowl") {
  const auto f = neg_x2();
  const auto cfg = FixedStepConfig::make(0.1, 0.1, 1.0, f.constants());
  const auto rep = lemma2_recursion_check(cfg, pt({1}), f, NoiseModel::none(), 5, 4, 1);
  CHECK(rep.holds);
  CHECK_THAT(rep.dist2_next, WithinRel(0.64 * rep.dist2_s, 1e-12));
  CHECK_THAT(rep.gamma, WithinRel(1 - 0.4 + 0.08, 1e-15));
  CHECK(rep.h == 0.0);
  const auto at_theta = lemma2_recursion_check(cfg, pt({0}), f, NoiseModel::none(), 3, 2, 1);
  CHECK(at_theta.holds);
  CHECK(at_theta.dist2_s == 0.0);
  CHECK(at_theta.dist2_next == 0.0);
}

TEST_CASE("recursion check with gaussian noise") {
  const auto f = ObjectiveSpec::quadratic_bowl(Domain::cube(2, -2, 2), pt({0.5, -0.5}), 0, 1);
  const auto cfg = FixedStepConfig::make(0.1, 0.1, 1.0, f.constants());
  for (std::int64_t s : {1, 5, 20}) {
    const auto rep = lemma2_recursion_check(cfg, pt({-1, 1}), f, NoiseModel::gaussian(1.0), s, 2000, 17);
    CHECK(rep.holds);
  }
}

TEST_CASE("K5 calibration probes every window and objective") {
  const auto env = two_bowls(10, 2);
  const auto base = SlidingWindowConfig::make(env.domain(), 8, pt({0}), 0.25);
  const auto cal = calibrate_k5(base, 0.25, env.objectives(), NoiseModel::gaussian(1.0), {8, 32}, 3, 20, 5);
  CHECK(cal.probes.size() == 4);
  double mx = 0;
  for (const auto& p : cal.probes) {
    CHECK_THAT(p.scaled, WithinRel(std::sqrt(double(p.window)) * p.mean_dist2, 1e-15));
    mx = std::max(mx, p.scaled);
  }
  CHECK(cal.k5 == mx);
  const auto again = calibrate_k5(base, 0.25, env.objectives(), NoiseModel::gaussian(1.0), {8, 32}, 3, 20, 5, 3);
  CHECK(again.k5 == cal.k5);
}

TEST_CASE("adversarial corpus and worst case") {
  const auto shape = ObjectiveSpec::quadratic_bowl(line(-1, 1), pt({0}), 0, 1);
  const auto corpus = adversarial_corpus(shape, 1000, 4);
  REQUIRE(corpus.size() == 3);
  for (const auto& sc : corpus) {
    CHECK(sc.schedule.episode_count() == 4);
    CHECK(sc.schedule.horizon() == 1000);
  }
  CHECK(corpus[1].schedule.change_times().back() == 4);
  CHECK(corpus[2].schedule.change_times()[1] == 998);
  const auto spec = PolicySpec::sliding_window(SlidingWindowConfig::make(shape.domain(), 20, pt({0}), 0.25));
  const auto worst = worst_case_regret(spec, corpus, NoiseModel::gaussian(1.0), 10, 3);
  for (const auto& sc : corpus)
    CHECK(monte_carlo_regret(spec, sc.schedule, NoiseModel::gaussian(1.0), 10, 3).mean <= worst.estimate.mean);
}
