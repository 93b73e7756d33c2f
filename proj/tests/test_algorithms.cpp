#include <catch_amalgamated.hpp>

#include <cmath>
#include <deque>
#include <vector>

#include "kwbandit/algorithms.hpp"

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

GradientEstimate est(std::initializer_list<double> y) {
  GradientEstimate g;
  g.y = pt(y);
  g.plus_samples = g.minus_samples = Point::Zero(g.y.size());
  g.c_used = 1.0;
  return g;
}

ObjectiveSpec neg_x2(double lo = -2, double hi = 2) {
  return ObjectiveSpec::quadratic_bowl(line(lo, hi), pt({0}), 0.0, 1.0);
}

}  // namespace

TEST_CASE("estimate_gradient examples") {
  RandomStream rng(1);
  const auto f = neg_x2();
  const auto g = estimate_gradient(f, NoiseModel::none(), pt({1}), 0.1, rng);
  CHECK_THAT(g.y[0], WithinAbs(-2.0, 1e-12));
  CHECK_THAT(g.plus_samples[0], WithinAbs(-1.21, 1e-15));
  CHECK_THAT(g.minus_samples[0], WithinAbs(-0.81, 1e-15));
  CHECK_FALSE(g.boundary_contact);
  for (double c : {0.01, 0.3, 1.5})
    CHECK(estimate_gradient(f, NoiseModel::none(), pt({0}), c, rng).y[0] == 0.0);
  CHECK_THROWS_AS(estimate_gradient(f, NoiseModel::none(), pt({0}), 0.0, rng), InvalidArgument);
}

TEST_CASE("estimate_gradient is exact on bowls in several dimensions") {
  RandomStream rng(3);
  const auto f = ObjectiveSpec::quadratic_bowl(Domain::cube(3, -2, 2), pt({0.3, -0.1, 0.7}), 1.0, 2.5);
  const Point x = pt({-0.5, 1.0, 0.2});
  const auto g = estimate_gradient(f, NoiseModel::none(), x, 0.2, rng);
  CHECK((g.y - analytic_gradient(f, x)).norm() <= 1e-12);
  for (int i = 0; i < 3; ++i)
    CHECK(g.y[i] == (g.plus_samples[i] - g.minus_samples[i]) / (2.0 * g.c_used));
}

TEST_CASE("estimate_gradient clamps at the boundary") {
  RandomStream rng(1);
  const auto f = neg_x2(-0.5, 0.5);
  const auto g = estimate_gradient(f, NoiseModel::none(), pt({0.45}), 0.1, rng);
  CHECK(g.boundary_contact);
  // plus point clamped to 0.5: (-0.25 - (-0.1225)) / 0.2
  CHECK_THAT(g.y[0], WithinRel((-0.25 + 0.1225) / 0.2, 1e-12));
}

TEST_CASE("estimate_gradient is O(c^2) on the quartic") {
  RandomStream rng(1);
  const auto f = ObjectiveSpec::quartic_perturbed_bowl(Domain::cube(2, -1, 1), pt({0.1, -0.2}), 0, 1, 0.8);
  const Point x = pt({0.4, 0.3});
  const Point u = x - f.theta();
  for (double c : {0.2, 0.1, 0.05}) {
    const auto g = estimate_gradient(f, NoiseModel::none(), x, c, rng);
    // per axis the quartic adds exactly -4 q c^2 u_i to the central difference
    const Point expected_error = -4.0 * 0.8 * c * c * u;
    CHECK(((g.y - analytic_gradient(f, x)) - expected_error).norm() <= 1e-12);
  }
}

TEST_CASE("noisy estimates average to the noiseless estimate") {
  const auto f = ObjectiveSpec::quadratic_bowl(Domain::cube(2, -1, 1), pt({0.2, 0.2}), 0, 1);
  const Point x = pt({-0.3, 0.5});
  RandomStream rng(11);
  const double c = 0.1;
  const auto clean = estimate_gradient(f, NoiseModel::none(), x, c, rng);
  const auto noise = NoiseModel::gaussian(1.0);
  const int n = 100000;
  Point sum = Point::Zero(2);
  for (int k = 0; k < n; ++k) sum += estimate_gradient(f, noise, x, c, rng).y;
  // Var(y_i) = 2 sigma^2 / (2c)^2
  const double se = std::sqrt(2.0 / (4 * c * c) / n);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(sum[i] / n - clean.y[i]) <= 3 * se);
  CHECK(rng.draws() == static_cast<std::uint64_t>(n) * 2 * 2 * 2);
}

TEST_CASE("step_vanilla examples") {
  const Domain d = line(-2, 2);
  auto s = AlgorithmState::vanilla(d, pt({1}));
  s = step_vanilla(s, est({-2}));
  CHECK(s.current_x()[0] == -1.0);
  CHECK(s.steps() == 1);
  CHECK(step_vanilla(s, est({0})).current_x()[0] == -1.0);

  auto s4 = AlgorithmState::vanilla(d, pt({0.5}));
  for (int k = 0; k < 3; ++k) s4.advance_vanilla(est({0}));
  CHECK(s4.steps() == 3);
  CHECK(step_vanilla(s4, est({-1})).current_x()[0] == 0.0);
  CHECK_THAT(s4.vanilla_c(), WithinRel(std::pow(4.0, -0.25), 1e-15));
}

TEST_CASE("step_fixed examples") {
  const auto k = neg_x2().constants();
  const auto cfg = FixedStepConfig::make(0.1, 0.1, 1.0, k);
  auto s = AlgorithmState::fixed_step(line(-2, 2), pt({1}));
  s = step_fixed(s, est({-2}), cfg);
  CHECK_THAT(s.current_x()[0], WithinAbs(0.8, 1e-15));

  // noiseless closed loop: X_s = 0.8^s
  const auto f = neg_x2();
  RandomStream rng(1);
  auto t = AlgorithmState::fixed_step(f.domain(), pt({1}));
  for (int k2 = 0; k2 < 2; ++k2) t.advance_fixed(estimate_gradient(f, NoiseModel::none(), t.current_x(), 0.1, rng), cfg);
  CHECK_THAT(t.current_x()[0], WithinAbs(0.64, 1e-15));

  auto b = AlgorithmState::fixed_step(line(-0.5, 0.5), pt({0.5}));
  CHECK(step_fixed(b, est({2}), cfg).current_x()[0] == 0.5);
}

TEST_CASE("fixed-step contraction is exact on a noiseless bowl") {
  const double b = 1.7, beta = 0.05;
  const auto f = ObjectiveSpec::quadratic_bowl(Domain::cube(2, -3, 3), pt({0.4, -0.6}), 0.0, b);
  const auto cfg = FixedStepConfig::make(beta, 0.2, 1.0, f.constants());
  RandomStream rng(1);
  auto s = AlgorithmState::fixed_step(f.domain(), pt({2.0, 1.5}));
  for (int k = 0; k < 40; ++k) {
    const Point before = s.current_x() - f.theta();
    s.advance_fixed(estimate_gradient(f, NoiseModel::none(), s.current_x(), cfg.c, rng), cfg);
    const Point after = s.current_x() - f.theta();
    CHECK((after - (1 - 2 * b * beta) * before).norm() <= 1e-14);
  }
}

TEST_CASE("FixedStepConfig validation") {
  const ClassConstants k{1, 1, 1, 1};
  CHECK_THROWS_AS(FixedStepConfig::make(1.5, 0.1, 1.0, k), ContractionViolation);
  CHECK_THROWS_AS(FixedStepConfig::make(0.0, 0.1, 1.0, k), InvalidArgument);
  CHECK_THROWS_AS(FixedStepConfig::make(0.1, 0.0, 1.0, k), InvalidArgument);
  const auto coupled = FixedStepConfig::coupled(0.3, 0.5, k);
  CHECK_THAT(coupled.beta, WithinRel(std::pow(0.3, 4.0), 1e-15));
  CHECK_THAT(FixedStepConfig::coupled_c(coupled.beta, 0.5), WithinRel(0.3, 1e-14));
  CHECK_THROWS_AS(FixedStepConfig::coupled(0.3, 1.0, k), InvalidArgument);
}

TEST_CASE("sliding_window_action examples") {
  const Domain d = line(-2, 2);
  const auto cfg = SlidingWindowConfig::make(d, 2, pt({1}), 0.1, WindowPolicy::sliding);
  std::deque<GradientEstimate> buf;
  CHECK(sliding_window_action(cfg, d, buf)[0] == 1.0);
  buf = {est({-2}), est({-1})};
  CHECK_THAT(sliding_window_action(cfg, d, buf)[0], WithinAbs(1 - 2 - 1 / std::sqrt(2.0), 1e-15));
  std::deque<GradientEstimate> zeros(5, est({0}));
  CHECK(sliding_window_action(cfg, d, zeros)[0] == 1.0);
}

TEST_CASE("window weights decrease strictly") {
  for (int n = 1; n < 100; ++n) CHECK(window_weight(n + 1) < window_weight(n));
  CHECK(window_weight(1) == 1.0);
}

TEST_CASE("SlidingWindowConfig defaults and validation") {
  const Domain d = line(-1, 1);
  CHECK_THAT(SlidingWindowConfig::make(d, 16, pt({0})).c_fixed, WithinRel(0.5, 1e-15));
  CHECK(SlidingWindowConfig::make(d, 16, pt({0})).policy == WindowPolicy::restart);
  CHECK_THROWS_AS(SlidingWindowConfig::make(d, 0, pt({0})), InvalidArgument);
  CHECK_THROWS_AS(SlidingWindowConfig::make(d, 4, pt({2})), DomainViolation);
}

TEST_CASE("sliding policy evicts the oldest estimate") {
  const Domain d = line(-10, 10);
  const auto cfg = SlidingWindowConfig::make(d, 3, pt({0}), 0.1, WindowPolicy::sliding);
  auto s = AlgorithmState::sliding_window(d, cfg);
  for (double y : {1.0, 2.0, 3.0}) s = sliding_window_advance(s, est({y}), cfg);
  CHECK(s.window_buffer().size() == 3);
  s = sliding_window_advance(s, est({4.0}), cfg);
  CHECK(s.window_buffer().size() == 3);
  CHECK(s.window_buffer().front().y[0] == 2.0);
  CHECK(s.window_buffer().back().y[0] == 4.0);
  CHECK(s.steps() == 4);
  CHECK_THAT(s.current_x()[0], WithinAbs(2.0 + 3.0 / std::sqrt(2.0) + 4.0 / std::sqrt(3.0), 1e-14));
}

TEST_CASE("window of one depends only on the latest estimate") {
  const Domain d = line(-2, 2);
  for (auto policy : {WindowPolicy::sliding, WindowPolicy::restart}) {
    const auto cfg = SlidingWindowConfig::make(d, 1, pt({0.5}), 0.1, policy);
    auto s = AlgorithmState::sliding_window(d, cfg);
    for (double y : {1.0, -0.7, 0.3}) {
      s.advance_window(est({y}), cfg);
      CHECK(s.current_x()[0] == project(d, pt({0.5 + y}))[0]);
    }
  }
}

TEST_CASE("forgetting: old estimates lose influence") {
  const Domain d = line(-100, 100);
  const auto cfg = SlidingWindowConfig::make(d, 4, pt({0}), 0.1, WindowPolicy::sliding);
  auto a = AlgorithmState::sliding_window(d, cfg);
  auto b = AlgorithmState::sliding_window(d, cfg);
  a.advance_window(est({5.0}), cfg);
  b.advance_window(est({-9.0}), cfg);
  for (int k = 0; k < 4; ++k) {
    a.advance_window(est({0.25 * k}), cfg);
    b.advance_window(est({0.25 * k}), cfg);
  }
  CHECK(a.current_x() == b.current_x());
}

TEST_CASE("replaying a stored buffer reproduces the action bit for bit") {
  const auto f = ObjectiveSpec::quadratic_bowl(Domain::cube(2, -1, 1), pt({0.5, -0.5}), 0, 1);
  const auto noise = NoiseModel::gaussian(1.0);
  for (auto policy : {WindowPolicy::sliding, WindowPolicy::restart}) {
    const auto cfg = SlidingWindowConfig::make(f.domain(), 7, pt({0, 0}), 0.25, policy);
    auto s = AlgorithmState::sliding_window(f.domain(), cfg);
    RandomStream rng(5);
    for (int k = 0; k < 50; ++k) {
      s.advance_window(estimate_gradient(f, noise, s.current_x(), cfg.c_fixed, rng), cfg);
      CHECK(s.window_buffer().size() <= 7);
      CHECK(f.domain().contains(s.current_x()));
      CHECK(sliding_window_action(cfg, f.domain(), s.window_buffer()) == s.current_x());
    }
  }
}

TEST_CASE("restart policy starts over after L estimates") {
  const Domain d = line(-10, 10);
  const auto cfg = SlidingWindowConfig::make(d, 2, pt({1}), 0.1, WindowPolicy::restart);
  auto s = AlgorithmState::sliding_window(d, cfg);
  s.advance_window(est({1}), cfg);
  s.advance_window(est({2}), cfg);
  CHECK(s.window_buffer().size() == 2);
  CHECK_THAT(s.current_x()[0], WithinAbs(1 + 1 + 2 / std::sqrt(2.0), 1e-15));
  s.advance_window(est({3}), cfg);
  CHECK(s.window_buffer().size() == 1);
  CHECK(s.current_x()[0] == 4.0);
}

TEST_CASE("updates check the variant") {
  const Domain d = line(-1, 1);
  auto s = AlgorithmState::vanilla(d, pt({0}));
  CHECK_THROWS_AS(s.advance_fixed(est({0}), FixedStepConfig{0.1, 0.1, 1.0}), InvalidArgument);
}

TEST_CASE("gamma examples") {
  CHECK_THAT(gamma(0.1, 1, 1), WithinRel(0.82, 1e-15));
  CHECK_THROWS_AS(gamma(0.0, 1, 1), ContractionViolation);
  CHECK_THAT(gamma(1e-9, 1, 1), WithinAbs(1.0, 1e-8));
  CHECK_THROWS_AS(gamma(1.5, 1, 1), ContractionViolation);
  CHECK_THROWS_AS(gamma(0.1, 0, 1), InvalidArgument);
}

TEST_CASE("h_beta examples") {
  CHECK_THAT(h_beta(0.1, 0.1, 4, 2, 1, 1, 0), WithinRel(4.0, 1e-14));
  CHECK(h_beta(0, 0.1, 4, 2, 1, 1, 0) == 0.0);
  CHECK_THAT(h_beta(0.1, 0.1, 4, 2, 1, 1, 0.005), WithinRel(4.0020005, 1e-14));
  CHECK_THROWS_AS(h_beta(0.1, 0.1, 4, 2, 1, 1, 0.02), Condition4Violation);
}

TEST_CASE("beta_star examples") {
  CHECK(beta_star(2, 4, 1, 1000, 1) == 0.1);
  CHECK(beta_star(2, 4, 1, 1000, 8) == 0.2);
  CHECK(beta_star(2, 4, 1, 500, 500) == lambda_constant(2, 4, 1));
  CHECK_THAT(beta_star(3, 2, 0.5, 4000, 10),
             WithinRel(std::pow(9.0 / 2.0, 1 / 2.5) * std::pow(10.0 / 4000.0, 1 / 2.5), 1e-14));
  CHECK_THROWS_AS(beta_star(2, 4, 1, 100, 0), InvalidArgument);
  CHECK_THROWS_AS(beta_star(2, 4, 1, 100, 101), InvalidArgument);
  CHECK_THROWS_AS(beta_star(2, 0, 1, 100, 1), InvalidArgument);
}

TEST_CASE("l_star examples") {
  CHECK(l_star(2, 1, 8000, 1) == 400);
  CHECK(l_star(16, 1, 1000, 8) == 100);
  CHECK(l_star_real(16, 1, 1000, 8) == 100.0);
  CHECK(l_star(4, 2, 77, 77) == 1);
  CHECK(l_star(0.01, 5, 10, 10) == 1);
  CHECK_THROWS_AS(l_star(0, 1, 10, 1), InvalidArgument);
}

TEST_CASE("calculators are pure") {
  for (int k = 0; k < 3; ++k) {
    CHECK(gamma(0.037, 1.3, 2.1) == gamma(0.037, 1.3, 2.1));
    CHECK(beta_star(1.7, 3.3, 0.7, 12345, 17) == beta_star(1.7, 3.3, 0.7, 12345, 17));
    CHECK(l_star(3.1, 1.2, 99999, 13) == l_star(3.1, 1.2, 99999, 13));
  }
}
