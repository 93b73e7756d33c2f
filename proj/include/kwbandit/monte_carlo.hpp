#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "kwbandit/trajectory.hpp"

namespace kwb {

/// Neumaier-compensated sum, taken in index order.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Evaluates fn(i) for i in [0, n) on `threads` workers and returns the results
/// by index. The output does not depend on the worker count.
template <typename Fn>
auto parallel_map(std::int64_t n, unsigned threads, Fn&& fn) {
  using R = decltype(fn(std::int64_t{0}));
  std::vector<R> out(static_cast<std::size_t>(n));
  const unsigned workers =
      static_cast<unsigned>(std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(n, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::int64_t i = next++; i < n; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t replications = 0;
  std::uint64_t base_seed = 0;
};

/// Mean and standard error (sample stddev / sqrt(n)) of `values`. The values
/// are shifted by the first one before summing, so identical inputs give
/// that value and a zero error exactly.
inline MonteCarloEstimate summarize(std::span<const double> values, std::uint64_t base_seed = 0) {
  require(values.size() >= 2, "summarize: at least 2 values required");
  const double shift = values.front();
  std::vector<double> centered(values.size());
  std::transform(values.begin(), values.end(), centered.begin(),
                 [&](double v) { return v - shift; });
  const auto n = static_cast<double>(values.size());
  const double mean_c = compensated_sum(centered) / n;
  for (double& v : centered) v = (v - mean_c) * (v - mean_c);
  const double var = compensated_sum(centered) / (n - 1.0);
  return {shift + mean_c, std::sqrt(var / n), static_cast<std::int64_t>(values.size()), base_seed};
}

/// R_T of every replication; replication r runs on the stream (base_seed, r).
inline std::vector<double> replicate_regret(const PolicySpec& spec, const EnvironmentSchedule& env,
                                            const NoiseModel& noise, std::int64_t replications,
                                            std::uint64_t base_seed, unsigned threads = 1) {
  require(replications >= 1, "replications must be >= 1");
  return parallel_map(replications, threads, [&](std::int64_t r) {
    RandomStream rng = RandomStream::for_replication(base_seed, static_cast<std::uint64_t>(r));
    return trajectory_regret(spec, env, noise, rng);
  });
}

inline MonteCarloEstimate monte_carlo_regret(const PolicySpec& spec, const EnvironmentSchedule& env,
                                             const NoiseModel& noise, std::int64_t replications,
                                             std::uint64_t base_seed, unsigned threads = 1) {
  require(replications >= 2, "monte_carlo_regret: replications must be >= 2");
  const auto values = replicate_regret(spec, env, noise, replications, base_seed, threads);
  return summarize(values, base_seed);
}

}  // namespace kwb
