// kwsim: run, sweep and check Kiefer-Wolfowitz bandit experiments from a JSON config.
//
// Exit codes: 0 ok, 1 validation error, 2 runtime or I/O error, 3 check failed.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kwbandit/kwbandit.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kRuntime = 2, kCheckFailed = 3 };

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replications;
  std::optional<std::string> out;
  unsigned threads = 0;
  int grid = 16;
  bool check = false;
};

kwb::ExperimentConfig load(const Options& opt) {
  std::ifstream in(opt.config, std::ios::binary);
  if (!in) throw kwb::IoError("cannot read config " + opt.config);
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = kwb::parse_config(buf.str());
  if (!parsed.ok()) {
    std::string msg = "invalid config " + opt.config + ":";
    for (const auto& e : parsed.errors) msg += "\n  " + e;
    throw kwb::InvalidArgument(msg);
  }
  auto cfg = *parsed.config;
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.replications) cfg.replications = *opt.replications;
  if (opt.out) cfg.output = *opt.out;
  std::vector<std::string> errors;
  kwb::validate_config(cfg, errors);
  if (!errors.empty()) throw kwb::InvalidArgument("invalid overrides: " + errors.front());
  return cfg;
}

int cmd_run(const Options& opt) {
  const auto cfg = load(opt);
  const auto resolved = kwb::resolve_experiment(cfg, opt.threads);
  const auto res = kwb::run_experiment(resolved, opt.threads);
  const auto dir = kwb::output_dir(cfg);
  kwb::write_experiment(res, dir);
  std::cout << "mean_regret " << kwb::format_double(res.mean_regret) << " se "
            << kwb::format_double(res.standard_error);
  if (resolved.bound)
    std::cout << " bound " << kwb::to_string(resolved.bound->name) << ' '
              << kwb::format_double(resolved.bound->value);
  std::cout << "\nwrote " << (dir / "trace.csv").string() << ", " << (dir / "summary.csv").string() << '\n';
  return kOk;
}

int cmd_sweep(const Options& opt) {
  const auto cfg = load(opt);
  if (!cfg.sweep) throw kwb::InvalidArgument("sweep: config has no sweep section");
  const auto res = kwb::run_sweep(cfg, opt.threads);
  const auto dir = kwb::output_dir(cfg);
  kwb::write_sweep(res, dir);
  std::cout << "slope " << kwb::format_double(res.fit.slope) << " r2 " << kwb::format_double(res.fit.r2)
            << "\nwrote " << (dir / "sweep_summary.csv").string() << ", "
            << (dir / "sweep_fit.csv").string() << '\n';
  return kOk;
}

int cmd_verify(const Options& opt) {
  const auto cfg = load(opt);
  const auto res = kwb::verify_experiment(cfg, opt.grid);
  const auto dir = kwb::output_dir(cfg);
  kwb::ensure_directory(dir);
  kwb::verify_csv(res).write(dir / "verify.csv");
  for (std::size_t i = 0; i < res.reports.size(); ++i)
    for (const auto* c : res.reports[i].checks())
      std::cout << "objective " << i << ' ' << c->name << ' ' << (c->holds ? "holds" : "FAILS") << '\n';
  return opt.check && !res.all_hold() ? kCheckFailed : kOk;
}

int cmd_bounds(const Options& opt) {
  const auto cfg = load(opt);
  const auto res = kwb::evaluate_bounds(cfg);
  const auto dir = kwb::output_dir(cfg);
  kwb::ensure_directory(dir);
  kwb::bounds_csv(res).write(dir / "bounds.csv");
  for (const auto& r : res.reports)
    std::cout << kwb::to_string(r.name) << ' ' << kwb::format_double(r.value) << '\n';
  if (!opt.check) return kOk;
  for (const auto& [name, ok] : res.checks) std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
  return res.all_checks_hold() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kiefer-Wolfowitz bandit experiments"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required();
    sub->add_option("--seed", opt.seed, "base seed, overrides the config");
    sub->add_option("--replications", opt.replications, "replication count, overrides the config");
    sub->add_option("--out", opt.out, "output directory, overrides the config");
    sub->add_option("--threads", opt.threads, "worker threads (0 = hardware concurrency)");
  };
  auto* run = app.add_subcommand("run", "simulate and write trace.csv and summary.csv");
  auto* sweep = app.add_subcommand("sweep", "run the sweep section and fit the scaling exponent");
  auto* verify = app.add_subcommand("verify", "check the declared class constants on a grid");
  auto* bounds = app.add_subcommand("bounds", "evaluate regret bounds without simulating");
  for (auto* sub : {run, sweep, verify, bounds}) add_common(sub);
  verify->add_option("--grid", opt.grid, "grid points per axis")->check(CLI::Range(2, 1000));
  verify->add_flag("--check", opt.check, "exit 3 when a condition fails");
  bounds->add_flag("--check", opt.check, "exit 3 when a bound identity fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    if (*run) return cmd_run(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*verify) return cmd_verify(opt);
    return cmd_bounds(opt);
  } catch (const kwb::Error& e) {
    std::cerr << "kwsim: " << e.what() << '\n';
    return e.kind() == kwb::ErrorKind::io ? kRuntime : kValidation;
  } catch (const std::exception& e) {
    std::cerr << "kwsim: " << e.what() << '\n';
    return kRuntime;
  }
}
