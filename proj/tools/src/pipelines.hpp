#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "run_config.hpp"

namespace chainctl::cli {

struct RunResult {
  nlohmann::json report;
  std::vector<std::string> summary;
  /// Files written into the output directory, relative names.
  std::vector<std::string> files;
  /// Largest sink fraction over the graphs the run built.
  double sink_fraction = 0.0;
};

/// Runs the configured pipeline and writes its exports into config.out,
/// which must exist.
RunResult run_pipeline(const RunConfig& config);

}  // namespace chainctl::cli
