#include "app.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chainctl/errors.hpp"
#include "chainctl/system_io.hpp"
#include "pipelines.hpp"
#include "run_config.hpp"

namespace chainctl::cli {

namespace {

using nlohmann::json;

constexpr double kDivergenceFraction = 0.5;

void diagnose(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
  json d = {{"error", kind}, {"message", message}};
  d.update(extra);
  err << d.dump() << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

int do_run(const RawOptions& raw, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig config = resolve(raw);
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec || !std::filesystem::is_directory(config.out)) {
    throw ConfigError("cannot create output directory " + config.out.string());
  }

  RunResult result = run_pipeline(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_text(config.out / "report.json", result.report.dump(2) + "\n");
  result.files.push_back("report.json");

  std::string summary = "chainctl " CHAINCTL_VERSION_STRING "\n";
  summary += "scenario: " + config.scenario_name + ", pipeline: " + pipeline_name(config.pipeline) + "\n";
  for (const std::string& line : result.summary) summary += line + "\n";
  summary += "wall time: " + std::to_string(wall) + " s\n";
  write_text(config.out / "summary.txt", summary);
  result.files.push_back("summary.txt");
  result.files.push_back("manifest.json");

  const json manifest = {{"tool", "chainctl"},
                         {"version", CHAINCTL_VERSION_STRING},
                         {"config", to_json(config)},
                         {"wall_time_s", wall},
                         {"sink_fraction", result.sink_fraction},
                         {"files", result.files}};
  write_text(config.out / "manifest.json", manifest.dump(2) + "\n");
  out << summary;

  if (result.sink_fraction > kDivergenceFraction) {
    diagnose(err, "divergence", "more than half of the graph edges lead to the out-of-domain sink",
             {{"sink_fraction", result.sink_fraction}});
    return kExitDivergence;
  }
  return kExitOk;
}

int do_export(const std::string& name, const std::string& dir, std::ostream& out) {
  const Scenario s = scenario_by_name(name);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir);
  const std::filesystem::path base = std::filesystem::path(dir) / s.name;
  write_text(base.string() + ".json", system_to_json(s.system).dump(2) + "\n");
  write_text(base.string() + ".params.json", scenario_sidecar(s).dump(2) + "\n");
  out << base.string() << ".json\n" << base.string() << ".params.json\n";
  return kExitOk;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chain control sets of control-affine systems on boxes, spheres and projective space", "chainctl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CHAINCTL_VERSION_STRING);

  RawOptions raw;
  CLI::App* run = app.add_subcommand("run", "Run a pipeline and write its exports");
  run->add_option("--scenario", raw.scenario, "Built-in scenario name");
  run->add_option("--system-file", raw.system_file, "System JSON document");
  run->add_option("--pipeline", raw.pipeline,
                  "euclidean | sphere | hemisphere | projective | strong-ladder | monodromy | conjugacy")
      ->capture_default_str();
  run->add_option("--domain", raw.domain, "Domain of the strong-ladder pipeline: window | sphere | hemisphere")
      ->capture_default_str();
  run->add_option("--depth", raw.depth, "Subdivision depth");
  run->add_option("--T", raw.T, "Time horizon of one graph edge");
  run->add_option("--eps", raw.eps, "Constant jump radius");
  run->add_option("--delta-ladder", raw.delta_ladder, "Decreasing jump scales of the strong-set ladder")->expected(2, 64);
  run->add_option("--weight", raw.weight, "Ladder weight: unit | equator_height | inverse_norm");
  run->add_option("--controls", raw.controls, "Control grid points per axis; 0 uses the vertices of the range plus 0");
  run->add_option("--samples-per-box", raw.samples_per_box, "Samples per box; 0 uses 1 + 2n")->capture_default_str();
  run->add_option("--step", raw.step, "Integration step");
  run->add_option("--out", raw.out, "Output directory")->capture_default_str();
  run->add_option("--threads", raw.threads, "Worker threads; 0 uses all cores")->capture_default_str();
  run->add_option("--hemisphere-sign", raw.hemisphere_sign, "Hemisphere: 1 (north) or -1 (south)");
  run->add_option("--closed", raw.closed, "Hemisphere includes the equator boxes (true | false)");
  run->add_option("--seed", raw.seed, "Seed of the sample offsets and random trials")->capture_default_str();
  run->add_option("--inflation", raw.inflation, "Extra matching radius in source-box diameters")->capture_default_str();
  run->add_option("--max-boxes", raw.max_boxes, "Largest admissible covering")->capture_default_str();
  run->add_option("--window", raw.window, "Window bounds lo1 hi1 ... lon hin");
  run->add_option("--tau", raw.tau, "Monodromy period")->capture_default_str();
  run->add_option("--u", raw.u, "Constant control of the monodromy pipeline");
  run->add_option("--trials", raw.trials, "Random trials of the conjugacy pipeline")->capture_default_str();
  run->add_option("--horizon", raw.horizon, "Largest time of the conjugacy trials")->capture_default_str();

  CLI::App* list = app.add_subcommand("scenarios", "List built-in scenarios");

  std::string export_name;
  std::string export_dir = ".";
  CLI::App* exp = app.add_subcommand("export-scenario", "Write a scenario's system document and parameter sidecar");
  exp->add_option("--scenario", export_name, "Built-in scenario name")->required();
  exp->add_option("--out", export_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    diagnose(err, "config", e.what());
    return kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const std::string& name : scenario_names()) out << name << '\n';
      return kExitOk;
    }
    if (exp->parsed()) return do_export(export_name, export_dir, out);
    return do_run(raw, out, err);
  } catch (const ConfigError& e) {
    diagnose(err, "config", e.what());
    return kExitConfig;
  } catch (const InputError& e) {
    diagnose(err, "config", e.what());
    return kExitConfig;
  } catch (const ConstructionError& e) {
    diagnose(err, "config", e.what());
    return kExitConfig;
  } catch (const BudgetError& e) {
    diagnose(err, "budget", e.what());
    return kExitBudget;
  } catch (const std::exception& e) {
    diagnose(err, "internal", e.what());
    return kExitOther;
  }
}

}  // namespace chainctl::cli
