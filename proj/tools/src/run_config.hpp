#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chainctl/jump.hpp"
#include "chainctl/scenarios.hpp"

namespace chainctl::cli {

enum class Pipeline { Euclidean, Sphere, Hemisphere, Projective, StrongLadder, Monodromy, Conjugacy };

Pipeline parse_pipeline(const std::string& name);
std::string pipeline_name(Pipeline p);

enum class LadderDomain { Window, Sphere, Hemisphere };

LadderDomain parse_ladder_domain(const std::string& name);
std::string ladder_domain_name(LadderDomain d);

/// Flag values as given on the command line; unset options fall back to the
/// scenario's recommendations in resolve().
struct RawOptions {
  std::string scenario;
  std::string system_file;
  std::string pipeline = "euclidean";
  std::string domain = "window";
  std::optional<int> depth;
  std::optional<double> T;
  std::optional<double> eps;
  std::vector<double> delta_ladder;
  std::optional<std::string> weight;
  std::optional<int> controls;
  int samples_per_box = 0;
  std::optional<double> step;
  std::string out = "chainctl_out";
  int threads = 0;
  std::optional<int> hemisphere_sign;
  std::optional<bool> closed;
  std::uint64_t seed = 0;
  double inflation = 0.0;
  std::size_t max_boxes = 2'000'000;
  std::vector<double> window;
  double tau = 1.0;
  std::vector<double> u;
  int trials = 100;
  double horizon = 5.0;
};

/// Fully resolved run configuration.
struct RunConfig {
  explicit RunConfig(Scenario s) : scenario(std::move(s)) {}

  Scenario scenario;
  std::string scenario_name;
  std::string system_file;
  Pipeline pipeline = Pipeline::Euclidean;
  LadderDomain ladder_domain = LadderDomain::Window;
  int depth = 0;
  double T = 1.0;
  double eps = 0.05;
  std::vector<double> delta_ladder;
  WeightKind weight = WeightKind::Unit;
  /// Control grid points per axis; 0 means vertices of Omega plus the origin.
  int controls = 0;
  int samples_per_box = 0;
  double step = 1e-3;
  std::filesystem::path out;
  int threads = 1;
  int hemisphere_sign = 1;
  bool closed = true;
  std::uint64_t seed = 0;
  double inflation = 0.0;
  std::size_t max_boxes = 2'000'000;
  double tau = 1.0;
  Vec u;
  int trials = 100;
  double horizon = 5.0;
};

/// Loads the scenario or system file and fills every unset option. Throws
/// ConfigError for missing, inconsistent or out-of-range values.
RunConfig resolve(const RawOptions& raw);

/// Every parameter that affects the outputs.
nlohmann::json to_json(const RunConfig& config);

}  // namespace chainctl::cli
