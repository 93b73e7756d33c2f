#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kwbandit/algorithms.hpp"
#include "kwbandit/trajectory.hpp"

namespace kwb {

// Experiment description. Everything here is plain data; `experiment.hpp`
// turns it into domain objects. The JSON schema is documented in
// configs/README.md and mirrors these structs field for field.

struct DomainConfig {
  std::vector<double> lower;
  std::vector<double> upper;
  bool operator==(const DomainConfig&) const = default;
};

struct ObjectiveConfig {
  ObjectiveKind kind = ObjectiveKind::quadratic_bowl;
  std::vector<double> theta;
  double a = 0.0;
  double b = 1.0;
  double q = 0.0;  ///< quartic-perturbed-bowl only
  bool operator==(const ObjectiveConfig&) const = default;
};

enum class ScheduleType { stationary, change_times, evenly_spaced };

inline std::string_view to_string(ScheduleType t) {
  switch (t) {
    case ScheduleType::stationary: return "stationary";
    case ScheduleType::change_times: return "change-times";
    case ScheduleType::evenly_spaced: return "evenly-spaced";
  }
  return "?";
}

/// Episodes cycle through the objective list: episode i serves
/// objectives[(i - 1) mod n].
struct ScheduleConfig {
  ScheduleType type = ScheduleType::stationary;
  std::vector<std::int64_t> change_times;  ///< change-times only
  std::int64_t episodes = 1;               ///< evenly-spaced only
  bool operator==(const ScheduleConfig&) const = default;
};

struct NoiseConfig {
  NoiseKind kind = NoiseKind::none;
  double sigma2 = 0.0;
  bool operator==(const NoiseConfig&) const = default;
};

/// Declared class constants; unset entries fall back to the analytic
/// constants of the configured objectives.
struct ConstantsConfig {
  std::optional<double> k1, k2, k3, k4, k5;
  std::optional<int> s0;
  bool operator==(const ConstantsConfig&) const = default;
};

struct AlgorithmConfig {
  PolicyKind variant = PolicyKind::fixed_step;
  std::vector<double> x0;
  bool beta_auto = false;
  std::optional<double> beta;
  std::optional<double> c;
  double alpha = 1.0;
  bool window_auto = false;
  std::optional<std::int64_t> window;
  WindowPolicy window_policy = WindowPolicy::restart;
  std::optional<double> epsilon;             ///< overrides the analytic mean-value offset
  std::optional<std::int64_t> delta_T;       ///< declared Delta_T used by auto tuning
  bool operator==(const AlgorithmConfig&) const = default;
};

struct CalibrationConfig {
  std::vector<std::int64_t> windows;
  std::int64_t blocks = 8;
  std::int64_t replications = 100;
  bool operator==(const CalibrationConfig&) const = default;
};

enum class SweepAxis { horizon, delta_T, beta, window };

inline std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::horizon: return "T";
    case SweepAxis::delta_T: return "delta_T";
    case SweepAxis::beta: return "beta";
    case SweepAxis::window: return "L";
  }
  return "?";
}

struct SweepConfig {
  SweepAxis axis = SweepAxis::horizon;
  std::vector<double> values;
  bool operator==(const SweepConfig&) const = default;
};

struct ExperimentConfig {
  DomainConfig domain;
  std::vector<ObjectiveConfig> objectives;
  ScheduleConfig schedule;
  NoiseConfig noise;
  ConstantsConfig constants;
  AlgorithmConfig algorithm;
  std::optional<CalibrationConfig> calibration;
  std::int64_t horizon = 1;
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  std::optional<SweepConfig> sweep;
  bool operator==(const ExperimentConfig&) const = default;

  /// Delta_T implied by the schedule.
  std::int64_t episode_count() const {
    switch (schedule.type) {
      case ScheduleType::stationary: return 1;
      case ScheduleType::change_times: return static_cast<std::int64_t>(schedule.change_times.size());
      case ScheduleType::evenly_spaced: return schedule.episodes;
    }
    return 1;
  }
};

struct ConfigParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value() && errors.empty(); }
};

namespace detail {

using nlohmann::json;

/// Collects every problem found while reading a document.
class ConfigReader {
 public:
  std::vector<std::string> errors;

  void error(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  bool object(const json& j, const std::string& path, std::initializer_list<std::string_view> known) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return false;
    }
    const std::set<std::string_view> allowed(known);
    for (const auto& [key, _] : j.items())
      if (!allowed.contains(key)) error(join(path, key), "unknown key");
    return true;
  }

  static std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      error(path, "expected a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      error(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::int64_t> integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      error(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<std::int64_t>();
  }

  std::optional<std::string> string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      error(path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::vector<double> numbers(const json& j, const std::string& path) {
    std::vector<double> out;
    if (!j.is_array()) {
      error(path, "expected an array of numbers");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
      if (auto v = number(j[i], path + "[" + std::to_string(i) + "]")) out.push_back(*v);
    return out;
  }

  std::vector<std::int64_t> integers(const json& j, const std::string& path) {
    std::vector<std::int64_t> out;
    if (!j.is_array()) {
      error(path, "expected an array of integers");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
      if (auto v = integer(j[i], path + "[" + std::to_string(i) + "]")) out.push_back(*v);
    return out;
  }

  template <typename T, typename Parse>
  std::optional<T> enumeration(const json& j, const std::string& path, Parse parse,
                               std::string_view choices) {
    auto s = string(j, path);
    if (!s) return std::nullopt;
    auto v = parse(*s);
    if (!v) error(path, "unknown value '" + *s + "' (expected one of " + std::string(choices) + ")");
    return v;
  }
};

inline bool inside(const std::vector<double>& x, const DomainConfig& d) {
  if (x.size() != d.lower.size() || d.lower.size() != d.upper.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < d.lower[i] || x[i] > d.upper[i]) return false;
  return true;
}

inline std::optional<SweepAxis> parse_sweep_axis(std::string_view s) {
  if (s == "T") return SweepAxis::horizon;
  if (s == "delta_T") return SweepAxis::delta_T;
  if (s == "beta") return SweepAxis::beta;
  if (s == "L") return SweepAxis::window;
  return std::nullopt;
}

}  // namespace detail

/// Cross-field checks on an already-read config; appends to `errors`.
inline void validate_config(const ExperimentConfig& cfg, std::vector<std::string>& errors) {
  auto err = [&](const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); };
  const auto& dom = cfg.domain;
  const std::size_t d = dom.lower.size();
  if (d == 0) err("domain.lower", "dimension must be >= 1");
  if (dom.upper.size() != d) err("domain.upper", "must have the same length as domain.lower");
  for (std::size_t i = 0; i < std::min(d, dom.upper.size()); ++i)
    if (!(dom.lower[i] < dom.upper[i]))
      err("domain", "lower[" + std::to_string(i) + "] must be < upper[" + std::to_string(i) + "]");

  if (cfg.objectives.empty()) err("objectives", "at least one objective required");
  for (std::size_t k = 0; k < cfg.objectives.size(); ++k) {
    const auto& o = cfg.objectives[k];
    const std::string path = "objectives[" + std::to_string(k) + "]";
    if (!detail::inside(o.theta, dom)) err(path + ".theta", "must lie inside the domain");
    if (!(o.b > 0)) err(path + ".b", "must be > 0");
    if (o.kind == ObjectiveKind::quartic_perturbed_bowl && !(o.q > 0)) err(path + ".q", "must be > 0");
    if (o.kind == ObjectiveKind::quadratic_bowl && o.q != 0) err(path + ".q", "only valid for quartic-perturbed-bowl");
  }

  if (cfg.horizon < 1) err("horizon", "must be >= 1");
  if (cfg.replications < 1) err("replications", "must be >= 1");

  const auto& sch = cfg.schedule;
  const std::size_t n_obj = cfg.objectives.size();
  switch (sch.type) {
    case ScheduleType::stationary: break;
    case ScheduleType::change_times: {
      if (sch.change_times.empty() || sch.change_times.front() != 1)
        err("schedule.change_times", "must start with 1");
      for (std::size_t i = 1; i < sch.change_times.size(); ++i)
        if (sch.change_times[i] <= sch.change_times[i - 1])
          err("schedule.change_times", "must be strictly increasing");
      if (!sch.change_times.empty() && sch.change_times.back() > cfg.horizon)
        err("schedule.change_times", "must lie in [1, horizon]");
      if (sch.change_times.size() > 1 && n_obj < 2)
        err("objectives", "a changing schedule needs at least 2 objectives");
      break;
    }
    case ScheduleType::evenly_spaced:
      if (sch.episodes < 1 || sch.episodes > cfg.horizon)
        err("schedule.episodes", "must lie in [1, horizon]");
      if (sch.episodes > 1 && n_obj < 2) err("objectives", "a changing schedule needs at least 2 objectives");
      break;
  }

  if (cfg.noise.sigma2 < 0) err("noise.sigma2", "must be >= 0");
  if (cfg.noise.kind == NoiseKind::none && cfg.noise.sigma2 != 0)
    err("noise.sigma2", "must be 0 for kind none");

  const auto& k = cfg.constants;
  for (auto [name, v] : {std::pair{"K1", k.k1}, {"K2", k.k2}, {"K3", k.k3}, {"K4", k.k4}, {"K5", k.k5}})
    if (v && !(*v > 0)) err(std::string("constants.") + name, "must be > 0");
  if (k.s0 && *k.s0 < 0) err("constants.s0", "must be >= 0");

  const auto& a = cfg.algorithm;
  if (a.x0.size() != d || !detail::inside(a.x0, dom)) err("algorithm.x0", "must lie inside the domain");
  if (a.c && !(*a.c > 0)) err("algorithm.c", "must be > 0");
  if (!(a.alpha > 0 && a.alpha <= 1)) err("algorithm.alpha", "must lie in (0, 1]");
  if (a.epsilon && !(*a.epsilon >= 0)) err("algorithm.epsilon", "must be >= 0");
  if (a.delta_T && (*a.delta_T < 1 || *a.delta_T > cfg.horizon))
    err("algorithm.delta_T", "must lie in [1, horizon]");

  if (a.variant == PolicyKind::fixed_step) {
    if (!a.beta_auto && !a.beta) err("algorithm.beta", "required for fixed-step (number or \"auto\")");
    if (a.beta && !(*a.beta > 0)) err("algorithm.beta", "must be > 0");
    if (a.beta_auto) {
      if (!a.delta_T)
        err("algorithm.delta_T", "auto beta (beta* from Delta_T/T) requires a declared delta_T");
      if (!(cfg.noise.sigma2 > 0)) err("algorithm.beta", "auto beta requires noise.sigma2 > 0");
    }
    if (!a.c && a.alpha >= 1)
      err("algorithm.c", "required unless alpha < 1 (then c = beta^((1-alpha)/2))");
  }
  if (a.variant == PolicyKind::sliding_window) {
    if (!a.window_auto && !a.window) err("algorithm.window", "required for sliding-window (integer or \"auto\")");
    if (a.window && *a.window < 1) err("algorithm.window", "must be >= 1");
    if (a.window_auto) {
      if (!a.delta_T) err("algorithm.delta_T", "auto window (L* from Delta_T/T) requires a declared delta_T");
      if (!k.k5 && !cfg.calibration)
        err("constants.K5", "auto window requires K5 or a calibration section");
    }
  }
  if (a.variant != PolicyKind::fixed_step && (a.beta || a.beta_auto))
    err("algorithm.beta", "only valid for fixed-step");
  if (a.variant != PolicyKind::sliding_window && (a.window || a.window_auto))
    err("algorithm.window", "only valid for sliding-window");

  if (cfg.calibration) {
    const auto& c = *cfg.calibration;
    if (c.windows.empty()) err("calibration.windows", "must not be empty");
    for (auto w : c.windows)
      if (w < 1) err("calibration.windows", "entries must be >= 1");
    if (c.blocks < 1) err("calibration.blocks", "must be >= 1");
    if (c.replications < 2) err("calibration.replications", "must be >= 2");
  }

  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (s.values.size() < 3) err("sweep.values", "at least 3 values required for exponent fitting");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (!(s.values[i] > 0)) err("sweep.values", "must be positive");
      if (i > 0 && !(s.values[i] > s.values[i - 1])) err("sweep.values", "must be strictly increasing");
    }
    const bool integral = s.axis != SweepAxis::beta;
    for (double v : s.values)
      if (integral && v != std::floor(v)) err("sweep.values", "must be integers for this axis");
    if (s.axis == SweepAxis::horizon && cfg.schedule.type == ScheduleType::change_times)
      err("sweep.axis", "T sweep needs a stationary or evenly-spaced schedule");
    if (s.axis == SweepAxis::delta_T && n_obj < 2)
      err("sweep.axis", "delta_T sweep needs at least 2 objectives");
    if (s.axis == SweepAxis::beta && a.variant != PolicyKind::fixed_step)
      err("sweep.axis", "beta sweep needs the fixed-step variant");
    if (s.axis == SweepAxis::window && a.variant != PolicyKind::sliding_window)
      err("sweep.axis", "L sweep needs the sliding-window variant");
  }
}

/// Parses and validates a config document. Every problem is reported, not
/// just the first; unknown keys are errors.
inline ConfigParseResult parse_config(std::string_view text) {
  using detail::json;
  ConfigParseResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.errors.push_back(std::string("document: ") + e.what());
    return result;
  }
  detail::ConfigReader rd;
  ExperimentConfig cfg;
  if (!rd.object(doc, "", {"domain", "objectives", "schedule", "noise", "constants", "algorithm",
                           "calibration", "horizon", "replications", "seed", "output", "sweep"})) {
    result.errors = rd.errors;
    return result;
  }
  auto required = [&](const char* key) -> const json* {
    if (!doc.contains(key)) {
      rd.error(key, "missing required field");
      return nullptr;
    }
    return &doc[key];
  };

  if (const json* j = required("domain"); j && rd.object(*j, "domain", {"lower", "upper"})) {
    if (j->contains("lower")) cfg.domain.lower = rd.numbers((*j)["lower"], "domain.lower");
    else rd.error("domain.lower", "missing required field");
    if (j->contains("upper")) cfg.domain.upper = rd.numbers((*j)["upper"], "domain.upper");
    else rd.error("domain.upper", "missing required field");
  }

  if (const json* j = required("objectives")) {
    if (!j->is_array()) rd.error("objectives", "expected an array");
    else
      for (std::size_t k = 0; k < j->size(); ++k) {
        const std::string path = "objectives[" + std::to_string(k) + "]";
        const json& o = (*j)[k];
        if (!rd.object(o, path, {"kind", "theta", "a", "b", "q"})) continue;
        ObjectiveConfig oc;
        if (o.contains("kind")) {
          if (auto v = rd.enumeration<ObjectiveKind>(o["kind"], path + ".kind", parse_objective_kind,
                                                     "quadratic-bowl, quartic-perturbed-bowl"))
            oc.kind = *v;
        } else rd.error(path + ".kind", "missing required field");
        if (o.contains("theta")) oc.theta = rd.numbers(o["theta"], path + ".theta");
        else rd.error(path + ".theta", "missing required field");
        if (o.contains("a")) oc.a = rd.number(o["a"], path + ".a").value_or(oc.a);
        if (o.contains("b")) oc.b = rd.number(o["b"], path + ".b").value_or(oc.b);
        if (o.contains("q")) oc.q = rd.number(o["q"], path + ".q").value_or(oc.q);
        cfg.objectives.push_back(std::move(oc));
      }
  }

  if (doc.contains("schedule")) {
    const json& j = doc["schedule"];
    if (rd.object(j, "schedule", {"type", "change_times", "episodes"})) {
      if (j.contains("type")) {
        auto t = rd.string(j["type"], "schedule.type");
        if (t == "stationary") cfg.schedule.type = ScheduleType::stationary;
        else if (t == "change-times") cfg.schedule.type = ScheduleType::change_times;
        else if (t == "evenly-spaced") cfg.schedule.type = ScheduleType::evenly_spaced;
        else if (t) rd.error("schedule.type", "unknown value '" + *t + "' (expected stationary, change-times, evenly-spaced)");
      } else rd.error("schedule.type", "missing required field");
      const bool ct = cfg.schedule.type == ScheduleType::change_times;
      const bool ev = cfg.schedule.type == ScheduleType::evenly_spaced;
      if (j.contains("change_times")) {
        if (!ct) rd.error("schedule.change_times", "only valid for type change-times");
        cfg.schedule.change_times = rd.integers(j["change_times"], "schedule.change_times");
      } else if (ct) rd.error("schedule.change_times", "missing required field");
      if (j.contains("episodes")) {
        if (!ev) rd.error("schedule.episodes", "only valid for type evenly-spaced");
        cfg.schedule.episodes = rd.integer(j["episodes"], "schedule.episodes").value_or(1);
      } else if (ev) rd.error("schedule.episodes", "missing required field");
    }
  }

  if (doc.contains("noise")) {
    const json& j = doc["noise"];
    if (rd.object(j, "noise", {"kind", "sigma2"})) {
      if (j.contains("kind")) {
        if (auto v = rd.enumeration<NoiseKind>(j["kind"], "noise.kind", parse_noise_kind,
                                               "none, gaussian, uniform-bounded"))
          cfg.noise.kind = *v;
      } else rd.error("noise.kind", "missing required field");
      if (j.contains("sigma2")) cfg.noise.sigma2 = rd.number(j["sigma2"], "noise.sigma2").value_or(0.0);
      else if (cfg.noise.kind != NoiseKind::none) rd.error("noise.sigma2", "missing required field");
    }
  }

  if (doc.contains("constants")) {
    const json& j = doc["constants"];
    if (rd.object(j, "constants", {"K1", "K2", "K3", "K4", "K5", "s0"})) {
      auto opt = [&](const char* key, std::optional<double>& dst) {
        if (j.contains(key)) dst = rd.number(j[key], std::string("constants.") + key);
      };
      opt("K1", cfg.constants.k1);
      opt("K2", cfg.constants.k2);
      opt("K3", cfg.constants.k3);
      opt("K4", cfg.constants.k4);
      opt("K5", cfg.constants.k5);
      if (j.contains("s0"))
        if (auto v = rd.integer(j["s0"], "constants.s0")) cfg.constants.s0 = static_cast<int>(*v);
    }
  }

  if (const json* j = required("algorithm");
      j && rd.object(*j, "algorithm", {"variant", "x0", "beta", "c", "alpha", "window",
                                       "window_policy", "epsilon", "delta_T"})) {
    auto& a = cfg.algorithm;
    if (j->contains("variant")) {
      if (auto v = rd.enumeration<PolicyKind>((*j)["variant"], "algorithm.variant", parse_policy_kind,
                                              "vanilla, fixed-step, sliding-window, oracle, static"))
        a.variant = *v;
    } else rd.error("algorithm.variant", "missing required field");
    if (j->contains("x0")) a.x0 = rd.numbers((*j)["x0"], "algorithm.x0");
    else rd.error("algorithm.x0", "missing required field");
    if (j->contains("beta")) {
      const json& b = (*j)["beta"];
      if (b == "auto") a.beta_auto = true;
      else a.beta = rd.number(b, "algorithm.beta");
    }
    if (j->contains("c")) a.c = rd.number((*j)["c"], "algorithm.c");
    if (j->contains("alpha")) a.alpha = rd.number((*j)["alpha"], "algorithm.alpha").value_or(a.alpha);
    if (j->contains("window")) {
      const json& w = (*j)["window"];
      if (w == "auto") a.window_auto = true;
      else a.window = rd.integer(w, "algorithm.window");
    }
    if (j->contains("window_policy"))
      if (auto v = rd.enumeration<WindowPolicy>((*j)["window_policy"], "algorithm.window_policy",
                                                parse_window_policy, "restart, sliding"))
        a.window_policy = *v;
    if (j->contains("epsilon")) a.epsilon = rd.number((*j)["epsilon"], "algorithm.epsilon");
    if (j->contains("delta_T")) a.delta_T = rd.integer((*j)["delta_T"], "algorithm.delta_T");
  }

  if (doc.contains("calibration")) {
    const json& j = doc["calibration"];
    if (rd.object(j, "calibration", {"windows", "blocks", "replications"})) {
      CalibrationConfig c;
      if (j.contains("windows")) c.windows = rd.integers(j["windows"], "calibration.windows");
      else rd.error("calibration.windows", "missing required field");
      if (j.contains("blocks")) c.blocks = rd.integer(j["blocks"], "calibration.blocks").value_or(c.blocks);
      if (j.contains("replications"))
        c.replications = rd.integer(j["replications"], "calibration.replications").value_or(c.replications);
      cfg.calibration = std::move(c);
    }
  }

  if (const json* j = required("horizon")) cfg.horizon = rd.integer(*j, "horizon").value_or(0);
  if (doc.contains("replications"))
    cfg.replications = rd.integer(doc["replications"], "replications").value_or(0);
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0))
      cfg.seed = s.get<std::uint64_t>();
    else rd.error("seed", "expected a non-negative integer");
  }
  if (doc.contains("output")) cfg.output = rd.string(doc["output"], "output");

  if (doc.contains("sweep")) {
    const json& j = doc["sweep"];
    if (rd.object(j, "sweep", {"axis", "values"})) {
      SweepConfig s;
      if (j.contains("axis")) {
        if (auto v = rd.enumeration<SweepAxis>(j["axis"], "sweep.axis", detail::parse_sweep_axis,
                                               "T, delta_T, beta, L"))
          s.axis = *v;
      } else rd.error("sweep.axis", "missing required field");
      if (j.contains("values")) s.values = rd.numbers(j["values"], "sweep.values");
      else rd.error("sweep.values", "missing required field");
      cfg.sweep = std::move(s);
    }
  }

  result.errors = std::move(rd.errors);
  if (result.errors.empty()) validate_config(cfg, result.errors);
  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

/// Canonical JSON form; parse_config(to_json(c).dump()) reproduces `c`.
inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  using nlohmann::json;
  json doc;
  doc["domain"] = {{"lower", cfg.domain.lower}, {"upper", cfg.domain.upper}};
  doc["objectives"] = json::array();
  for (const auto& o : cfg.objectives) {
    json jo = {{"kind", to_string(o.kind)}, {"theta", o.theta}, {"a", o.a}, {"b", o.b}};
    if (o.kind == ObjectiveKind::quartic_perturbed_bowl) jo["q"] = o.q;
    doc["objectives"].push_back(std::move(jo));
  }
  json sch = {{"type", to_string(cfg.schedule.type)}};
  if (cfg.schedule.type == ScheduleType::change_times) sch["change_times"] = cfg.schedule.change_times;
  if (cfg.schedule.type == ScheduleType::evenly_spaced) sch["episodes"] = cfg.schedule.episodes;
  doc["schedule"] = std::move(sch);
  doc["noise"] = {{"kind", to_string(cfg.noise.kind)}, {"sigma2", cfg.noise.sigma2}};
  json k = json::object();
  if (cfg.constants.k1) k["K1"] = *cfg.constants.k1;
  if (cfg.constants.k2) k["K2"] = *cfg.constants.k2;
  if (cfg.constants.k3) k["K3"] = *cfg.constants.k3;
  if (cfg.constants.k4) k["K4"] = *cfg.constants.k4;
  if (cfg.constants.k5) k["K5"] = *cfg.constants.k5;
  if (cfg.constants.s0) k["s0"] = *cfg.constants.s0;
  doc["constants"] = std::move(k);
  const auto& a = cfg.algorithm;
  json ja = {{"variant", to_string(a.variant)}, {"x0", a.x0}, {"alpha", a.alpha},
             {"window_policy", to_string(a.window_policy)}};
  if (a.beta_auto) ja["beta"] = "auto";
  else if (a.beta) ja["beta"] = *a.beta;
  if (a.c) ja["c"] = *a.c;
  if (a.window_auto) ja["window"] = "auto";
  else if (a.window) ja["window"] = *a.window;
  if (a.epsilon) ja["epsilon"] = *a.epsilon;
  if (a.delta_T) ja["delta_T"] = *a.delta_T;
  doc["algorithm"] = std::move(ja);
  if (cfg.calibration)
    doc["calibration"] = {{"windows", cfg.calibration->windows},
                          {"blocks", cfg.calibration->blocks},
                          {"replications", cfg.calibration->replications}};
  doc["horizon"] = cfg.horizon;
  doc["replications"] = cfg.replications;
  doc["seed"] = cfg.seed;
  if (cfg.output) doc["output"] = *cfg.output;
  if (cfg.sweep) doc["sweep"] = {{"axis", to_string(cfg.sweep->axis)}, {"values", cfg.sweep->values}};
  return doc;
}

}  // namespace kwb
