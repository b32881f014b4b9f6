#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "app.hpp"
#include "chainctl/errors.hpp"
#include "run_config.hpp"

namespace chainctl::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "chainctl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("chainctl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ScalarEuclideanRun) {
  const Outcome r = run({"run", "--scenario", "scalar_hyperbolic", "--out", out("a"), "--threads", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.err.empty());
  EXPECT_NE(r.out.find("scenario: scalar_hyperbolic"), std::string::npos);
  for (const char* f : {"report.json", "summary.txt", "manifest.json", "chain_sets.csv", "graph.json", "set_0.dat"})
    EXPECT_TRUE(fs::exists(dir_ / "a" / f)) << f;
  const json report = read_json(dir_ / "a" / "report.json");
  EXPECT_EQ(report["set_count"], 1);
  EXPECT_EQ(report["approximation"], true);
  EXPECT_EQ(report["pipeline"], "euclidean");
}

TEST_F(CliTest, ManifestRecordsConfiguration) {
  ASSERT_EQ(run({"run", "--scenario", "scalar", "--out", out("m"), "--eps", "0.02", "--depth", "6", "--threads", "2"}).code,
            kExitOk);
  const json m = read_json(dir_ / "m" / "manifest.json");
  EXPECT_EQ(m["tool"], "chainctl");
  EXPECT_FALSE(m["version"].get<std::string>().empty());
  EXPECT_GE(m["wall_time_s"].get<double>(), 0.0);
  const json& c = m["config"];
  EXPECT_EQ(c["scenario"], "scalar_hyperbolic");
  EXPECT_EQ(c["eps"], 0.02);
  EXPECT_EQ(c["depth"], 6);
  EXPECT_EQ(c["threads"], 2);
  EXPECT_EQ(c["T"], 1.0);
  for (const char* key : {"window", "delta_ladder", "weight", "controls", "samples_per_box", "step", "seed", "inflation"})
    EXPECT_TRUE(c.contains(key)) << key;
  for (const auto& f : m["files"]) EXPECT_TRUE(fs::exists(dir_ / "m" / f.get<std::string>())) << f;
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutputs) {
  for (const char* t : {"1", "4"}) {
    ASSERT_EQ(run({"run", "--scenario", "example2", "--depth", "5", "--threads", t, "--out", out(std::string("t") + t)}).code,
              kExitOk);
  }
  EXPECT_EQ(slurp(dir_ / "t1" / "chain_sets.csv"), slurp(dir_ / "t4" / "chain_sets.csv"));
  EXPECT_EQ(slurp(dir_ / "t1" / "graph.json"), slurp(dir_ / "t4" / "graph.json"));
  EXPECT_EQ(slurp(dir_ / "t1" / "report.json"), slurp(dir_ / "t4" / "report.json"));
}

TEST_F(CliTest, MissingSystemFileIsConfigError) {
  const Outcome r = run({"run", "--system-file", out("nope.json"), "--out", out("x")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_EQ(r.err.rfind("{\"error\":\"config\"", 0), 0u) << r.err;
  EXPECT_EQ(json::parse(r.err)["error"], "config");
}

TEST_F(CliTest, BadFlagsAreConfigErrors) {
  EXPECT_EQ(run({"run", "--scenario", "nope"}).code, kExitConfig);
  EXPECT_EQ(run({"run"}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--scenario", "scalar", "--bogus"}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--scenario", "scalar", "--eps", "-1", "--out", out("e")}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--scenario", "scalar", "--window", "1", "0", "--out", out("w")}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--scenario", "scalar", "--pipeline", "monodromy", "--u", "3", "--out", out("u")}).code,
            kExitConfig);
  const Outcome r = run({"run", "--scenario", "scalar", "--pipeline", "strong-ladder", "--delta-ladder", "0.1", "0.2",
                         "--out", out("l")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_EQ(json::parse(r.err)["error"], "config");
}

TEST_F(CliTest, OversizedCoveringIsBudgetError) {
  const Outcome r = run({"run", "--scenario", "scalar", "--depth", "14", "--out", out("b")});
  EXPECT_EQ(r.code, kExitBudget);
  EXPECT_EQ(json::parse(r.err)["error"], "budget");
  EXPECT_EQ(run({"run", "--scenario", "example2", "--max-boxes", "1000", "--out", out("c")}).code, kExitBudget);
}

TEST_F(CliTest, EscapingFlowIsDivergence) {
  {
    std::ofstream f(dir_ / "grow.json");
    f << R"({"n": 1, "matrices": [[1]], "offsets": [[0]], "omega": {"lower": [], "upper": []}})";
  }
  const Outcome r = run({"run", "--system-file", (dir_ / "grow.json").string(), "--window", "-1", "1", "--depth", "5",
                         "--T", "10", "--out", out("d")});
  EXPECT_EQ(r.code, kExitDivergence);
  const json d = json::parse(r.err);
  EXPECT_EQ(d["error"], "divergence");
  EXPECT_GT(d["sink_fraction"].get<double>(), 0.5);
  EXPECT_TRUE(fs::exists(dir_ / "d" / "report.json"));
  EXPECT_GT(read_json(dir_ / "d" / "manifest.json")["sink_fraction"].get<double>(), 0.5);
}

TEST_F(CliTest, MonodromyReport) {
  ASSERT_EQ(run({"run", "--scenario", "linear_3d", "--pipeline", "monodromy", "--tau", "1", "--u", "0", "--out", out("mo")})
                .code,
            kExitOk);
  const json r = read_json(dir_ / "mo" / "report.json");
  EXPECT_EQ(r["has_unit_eigenvalue"], true);
  ASSERT_EQ(r["eigenvalues"].size(), 3u);
  EXPECT_EQ(r["matrix"].size(), 3u);
  EXPECT_TRUE(r.contains("unit_eigvec"));
  EXPECT_FALSE(r.contains("approximation"));
}

TEST_F(CliTest, ConjugacyReport) {
  ASSERT_EQ(run({"run", "--scenario", "example2", "--pipeline", "conjugacy-check", "--trials", "5", "--seed", "3",
                 "--out", out("cj")})
                .code,
            kExitOk);
  const json r = read_json(dir_ / "cj" / "report.json");
  EXPECT_EQ(r["trials"], 5);
  EXPECT_LT(r["max_residual"].get<double>(), 1e-6);
  EXPECT_EQ(r["pipeline"], "conjugacy");
}

TEST_F(CliTest, ProjectiveExample2HasOneCentralSet) {
  ASSERT_EQ(run({"run", "--scenario", "example2", "--pipeline", "projective", "--depth", "5", "--out", out("p")}).code,
            kExitOk);
  const json r = read_json(dir_ / "p" / "report.json");
  EXPECT_EQ(r["central_scc_count"], 1);
  EXPECT_EQ(r["approximation"], true);
}

TEST_F(CliTest, ScenarioListAndExport) {
  const Outcome list = run({"scenarios"});
  EXPECT_EQ(list.code, kExitOk);
  EXPECT_NE(list.out.find("example2"), std::string::npos);

  ASSERT_EQ(run({"export-scenario", "--scenario", "example2", "--out", out("ex")}).code, kExitOk);
  const json params = read_json(dir_ / "ex" / "example2.params.json");
  EXPECT_EQ(params["name"], "example2");
  const Outcome again = run({"run", "--system-file", (dir_ / "ex" / "example2.json").string(), "--scenario", "example2",
                             "--pipeline", "monodromy", "--out", out("ex_run")});
  EXPECT_EQ(again.code, kExitOk) << again.err;
}

TEST(ResolveConfig, ScenarioDefaultsAndOverrides) {
  RawOptions raw;
  raw.scenario = "example2";
  RunConfig c = resolve(raw);
  EXPECT_EQ(c.depth, 8);
  EXPECT_EQ(c.T, 12.0);
  EXPECT_EQ(c.controls, 23);

  raw.pipeline = "sphere";
  c = resolve(raw);
  EXPECT_EQ(c.depth, 7);
  EXPECT_EQ(c.T, 0.5);
  EXPECT_EQ(c.controls, 0);

  raw.T = 2.0;
  raw.depth = 3;
  c = resolve(raw);
  EXPECT_EQ(c.T, 2.0);
  EXPECT_EQ(c.depth, 3);

  raw.pipeline = "bogus";
  EXPECT_THROW(resolve(raw), ConfigError);
}

}  // namespace
}  // namespace chainctl::cli
