#include "run_config.hpp"

#include <algorithm>
#include <thread>

#include "chainctl/errors.hpp"
#include "chainctl/system_io.hpp"

namespace chainctl::cli {

namespace {

Scenario generic_scenario(const std::string& name, AffineSystem sys) {
  const int n = sys.state_dim();
  RecommendedParams p;
  p.window_lower = Vec::Constant(n, -4.0);
  p.window_upper = Vec::Constant(n, 4.0);
  p.depth = n <= 2 ? 7 : 5;
  p.sphere_depth = n <= 2 ? 6 : 4;
  p.T = 1.0;
  p.eps = 0.05;
  p.delta_ladder = {0.2, 0.1, 0.05};
  p.weight = WeightKind::EquatorHeight;
  return Scenario{name, "system loaded from file", std::move(sys), std::move(p), {}, {}};
}

Scenario load_scenario(const RawOptions& raw) {
  if (raw.scenario.empty() && raw.system_file.empty()) throw ConfigError("one of --scenario or --system-file is required");
  if (raw.system_file.empty()) return scenario_by_name(raw.scenario);

  AffineSystem sys = load_system_file(raw.system_file);
  if (raw.scenario.empty()) return generic_scenario(std::filesystem::path(raw.system_file).stem().string(), std::move(sys));

  Scenario s = scenario_by_name(raw.scenario);
  if (s.system.state_dim() != sys.state_dim()) {
    throw ConfigError("system file dimension does not match scenario '" + s.name + "'");
  }
  s.system = std::move(sys);
  s.equilibria.clear();
  s.oracles.clear();
  return s;
}

void require_positive(double v, const std::string& flag) {
  if (!(v > 0.0)) throw ConfigError(flag + " must be positive");
}

bool uses_sphere_depth(const RunConfig& c) {
  switch (c.pipeline) {
    case Pipeline::Sphere:
    case Pipeline::Hemisphere:
    case Pipeline::Projective:
      return true;
    case Pipeline::StrongLadder:
      return c.ladder_domain != LadderDomain::Window;
    default:
      return false;
  }
}

std::vector<double> as_list(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

Pipeline parse_pipeline(const std::string& name) {
  if (name == "euclidean") return Pipeline::Euclidean;
  if (name == "sphere") return Pipeline::Sphere;
  if (name == "hemisphere") return Pipeline::Hemisphere;
  if (name == "projective") return Pipeline::Projective;
  if (name == "strong-ladder") return Pipeline::StrongLadder;
  if (name == "monodromy") return Pipeline::Monodromy;
  if (name == "conjugacy" || name == "conjugacy-check") return Pipeline::Conjugacy;
  throw ConfigError("unknown pipeline '" + name + "'");
}

std::string pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::Euclidean: return "euclidean";
    case Pipeline::Sphere: return "sphere";
    case Pipeline::Hemisphere: return "hemisphere";
    case Pipeline::Projective: return "projective";
    case Pipeline::StrongLadder: return "strong-ladder";
    case Pipeline::Monodromy: return "monodromy";
    case Pipeline::Conjugacy: return "conjugacy";
  }
  return "unknown";
}

LadderDomain parse_ladder_domain(const std::string& name) {
  if (name == "window" || name == "euclidean") return LadderDomain::Window;
  if (name == "sphere") return LadderDomain::Sphere;
  if (name == "hemisphere") return LadderDomain::Hemisphere;
  throw ConfigError("unknown ladder domain '" + name + "'");
}

std::string ladder_domain_name(LadderDomain d) {
  switch (d) {
    case LadderDomain::Window: return "window";
    case LadderDomain::Sphere: return "sphere";
    case LadderDomain::Hemisphere: return "hemisphere";
  }
  return "unknown";
}

RunConfig resolve(const RawOptions& raw) {
  const Pipeline pipeline = parse_pipeline(raw.pipeline);
  const LadderDomain ladder_domain = parse_ladder_domain(raw.domain);
  RunConfig c(load_scenario(raw));
  c.pipeline = pipeline;
  c.ladder_domain = ladder_domain;
  c.scenario_name = c.scenario.name;
  c.system_file = raw.system_file;
  RecommendedParams& p = c.scenario.params;
  const int n = c.scenario.system.state_dim();
  const int m = c.scenario.system.control_dim();

  if (!raw.window.empty()) {
    if (static_cast<int>(raw.window.size()) != 2 * n) throw ConfigError("--window expects 2n values lo1 hi1 ... lon hin");
    for (int i = 0; i < n; ++i) {
      p.window_lower[i] = raw.window[2 * i];
      p.window_upper[i] = raw.window[2 * i + 1];
      if (!(p.window_lower[i] < p.window_upper[i])) throw ConfigError("--window bounds must satisfy lo < hi");
    }
  }

  const bool window_run = c.pipeline == Pipeline::Euclidean ||
                          (c.pipeline == Pipeline::StrongLadder && c.ladder_domain == LadderDomain::Window);
  c.depth = raw.depth.value_or(uses_sphere_depth(c) ? p.sphere_depth : p.depth);
  if (c.depth < 0) throw ConfigError("--depth must be non-negative");
  c.T = raw.T.value_or(window_run && p.window_T > 0.0 ? p.window_T : p.T);
  c.eps = raw.eps.value_or(p.eps);
  c.delta_ladder = raw.delta_ladder.empty() ? p.delta_ladder : raw.delta_ladder;
  c.weight = raw.weight ? parse_weight(*raw.weight) : p.weight;
  c.controls = raw.controls.value_or(c.pipeline == Pipeline::Euclidean ? p.control_grid : 0);
  c.samples_per_box = raw.samples_per_box;
  c.step = raw.step.value_or(p.step);
  c.out = raw.out;
  c.threads = raw.threads > 0 ? raw.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  c.hemisphere_sign = raw.hemisphere_sign.value_or(p.hemisphere_sign);
  c.closed = raw.closed.value_or(p.closed);
  c.seed = raw.seed;
  c.inflation = raw.inflation;
  c.max_boxes = raw.max_boxes;
  c.tau = raw.tau;
  c.trials = raw.trials;
  c.horizon = raw.horizon;

  require_positive(c.T, "--T");
  require_positive(c.eps, "--eps");
  require_positive(c.step, "--step");
  require_positive(c.tau, "--tau");
  require_positive(c.horizon, "--horizon");
  if (c.controls < 0 || c.controls == 1) throw ConfigError("--controls must be 0 or at least 2");
  if (c.samples_per_box < 0) throw ConfigError("--samples-per-box must be non-negative");
  if (c.inflation < 0.0) throw ConfigError("--inflation must be non-negative");
  if (c.trials <= 0) throw ConfigError("--trials must be positive");
  if (c.max_boxes == 0) throw ConfigError("--max-boxes must be positive");
  if (c.hemisphere_sign != 1 && c.hemisphere_sign != -1) throw ConfigError("--hemisphere-sign must be 1 or -1");
  if (c.pipeline == Pipeline::StrongLadder) {
    if (c.delta_ladder.size() < 2) throw ConfigError("--delta-ladder needs at least two values");
    for (std::size_t i = 0; i < c.delta_ladder.size(); ++i) {
      require_positive(c.delta_ladder[i], "--delta-ladder");
      if (i > 0 && !(c.delta_ladder[i] < c.delta_ladder[i - 1])) {
        throw ConfigError("--delta-ladder must be strictly decreasing");
      }
    }
  }

  if (raw.u.empty()) {
    c.u = Vec::Zero(m);
  } else {
    if (static_cast<int>(raw.u.size()) != m) throw ConfigError("--u expects " + std::to_string(m) + " values");
    c.u = Eigen::Map<const Vec>(raw.u.data(), m);
    if (!c.scenario.system.omega().contains(c.u)) throw ConfigError("--u lies outside the control range");
  }
  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  const RecommendedParams& p = c.scenario.params;
  nlohmann::json j;
  j["scenario"] = c.scenario_name;
  j["system_file"] = c.system_file;
  j["pipeline"] = pipeline_name(c.pipeline);
  if (c.pipeline == Pipeline::StrongLadder) j["domain"] = ladder_domain_name(c.ladder_domain);
  j["window"] = {{"lower", as_list(p.window_lower)}, {"upper", as_list(p.window_upper)}};
  j["depth"] = c.depth;
  j["T"] = c.T;
  j["eps"] = c.eps;
  j["delta_ladder"] = c.delta_ladder;
  j["weight"] = weight_name(c.weight);
  j["controls"] = c.controls;
  j["samples_per_box"] = c.samples_per_box;
  j["step"] = c.step;
  j["threads"] = c.threads;
  j["hemisphere_sign"] = c.hemisphere_sign;
  j["closed"] = c.closed;
  j["seed"] = c.seed;
  j["inflation"] = c.inflation;
  j["max_boxes"] = c.max_boxes;
  j["tau"] = c.tau;
  j["u"] = as_list(c.u);
  j["trials"] = c.trials;
  j["horizon"] = c.horizon;
  return j;
}

}  // namespace chainctl::cli
