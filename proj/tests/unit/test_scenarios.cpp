#include <cmath>

#include <gtest/gtest.h>

#include "chainctl/errors.hpp"
#include "chainctl/integrate.hpp"
#include "chainctl/scenarios.hpp"
#include "chainctl/system_io.hpp"
#include "test_util.hpp"

namespace chainctl {
namespace {

using test::v;

TEST(Example2, Eigenvalues) {
  const auto [a, b] = example2_eigenvalues(-1.0);
  EXPECT_NEAR(std::abs(a - std::complex<double>(-3, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(b - std::complex<double>(0, 0)), 0.0, 1e-12);
  const auto [c, d] = example2_eigenvalues(1.0);
  EXPECT_NEAR(std::abs(c - std::complex<double>(-2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(d - std::complex<double>(-1, 0)), 0.0, 1e-12);
}

TEST(Example2, EigenvaluesMatchLinearPart) {
  const Scenario s = example2_scenario();
  for (double u : {-1.1, -0.5, 0.0, 0.7, 1.1}) {
    const Eigen::VectorXcd ev = s.system.linear_part(v({u})).eigenvalues();
    const auto [a, b] = example2_eigenvalues(u);
    const double err = std::min(std::abs(ev[0] - a) + std::abs(ev[1] - b), std::abs(ev[0] - b) + std::abs(ev[1] - a));
    EXPECT_LT(err, 1e-12) << "u = " << u;
  }
}

TEST(Example2, Equilibria) {
  EXPECT_EQ(example2_equilibrium(0.0, 0.5), v({0.5, 0}));
  EXPECT_THROW(example2_equilibrium(-1.0, 0.5), InputError);
  const Scenario s = example2_scenario();
  for (double u : {-1.1, -0.9, 0.0, 1.1}) {
    const Vec x = example2_equilibrium(u, 0.5);
    EXPECT_LT(affine_field(s.system, x, v({u})).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(Example2, ParameterValidation) {
  EXPECT_THROW(example2_scenario(1.0, 0.5), ConfigError);
  EXPECT_THROW(example2_scenario(1.25, 0.5), ConfigError);
  EXPECT_THROW(example2_scenario(1.1, 1.0), ConfigError);
  EXPECT_THROW(example2_scenario(1.1, 2.0), ConfigError);
  EXPECT_NO_THROW(example2_scenario(1.2, -3.0));
  EXPECT_EQ(example2_scenario(1.2, 0.5).system.omega().upper(), v({1.2}));
}

TEST(Scenarios, EquilibriaDoNotDrift) {
  for (const auto& name : scenario_names()) {
    const Scenario s = scenario_by_name(name);
    EXPECT_LT(equilibrium_drift(s, 10.0, 1e-3), 1e-8) << name;
  }
}

TEST(Scenarios, ShearExactFlow) {
  EXPECT_EQ(shear_flow_exact(2.0, v({1, 1})), v({3, 1}));
  EXPECT_THROW(shear_flow_exact(1.0, v({1})), InputError);
  const Scenario s = shear_flow_scenario();
  const VectorField f = [&s](const Vec& x, const Vec& u) { return affine_field(s.system, x, u); };
  const Vec x = integrate(f, v({-0.4, 1.3}), ControlSignal::zero(0), 0.0, 2.5, 1e-2);
  EXPECT_LT(max_distance(x, shear_flow_exact(2.5, v({-0.4, 1.3}))), 1e-12);
}

TEST(Scenarios, ScalarEquilibriaMatchControl) {
  const Scenario s = scalar_hyperbolic_scenario();
  for (double u : {-1.0, -0.25, 1.0}) EXPECT_EQ(affine_field(s.system, v({u}), v({u})), v({0}));
}

TEST(Scenarios, Linear3dStructure) {
  const Scenario s = linear_3d_scenario();
  EXPECT_EQ(s.system.state_dim(), 3);
  EXPECT_EQ(s.system.control_dim(), 1);
  EXPECT_EQ(affine_field(s.system, v({2, 3, 0.5}), v({-0.5})), v({3, 0, 0}));
}

TEST(Scenarios, NamesAndAliases) {
  const auto names = scenario_names();
  ASSERT_EQ(names.size(), 4u);
  for (const auto& n : names) EXPECT_EQ(scenario_by_name(n).name, n);
  EXPECT_EQ(scenario_by_name("shear_flow").name, "shear");
  EXPECT_EQ(scenario_by_name("scalar").name, "scalar_hyperbolic");
  EXPECT_THROW(scenario_by_name("nope"), ConfigError);
}

TEST(Scenarios, RecommendedParamsAreUsable) {
  for (const auto& name : scenario_names()) {
    const Scenario s = scenario_by_name(name);
    const RecommendedParams& p = s.params;
    EXPECT_EQ(p.window_lower.size(), s.system.state_dim()) << name;
    EXPECT_TRUE((p.window_lower.array() < p.window_upper.array()).all()) << name;
    EXPECT_GT(p.T, 0.0);
    EXPECT_GT(p.eps, 0.0);
    ASSERT_GE(p.delta_ladder.size(), 2u);
    for (std::size_t k = 1; k < p.delta_ladder.size(); ++k) EXPECT_LT(p.delta_ladder[k], p.delta_ladder[k - 1]);
    EXPECT_FALSE(s.oracles.empty());
  }
}

TEST(Scenarios, SidecarContents) {
  const Scenario s = example2_scenario();
  const nlohmann::json j = scenario_sidecar(s);
  EXPECT_EQ(j["name"], "example2");
  EXPECT_EQ(j["window"]["lower"], (std::vector<double>{-4, -4}));
  EXPECT_EQ(j["window"]["upper"], (std::vector<double>{8, 4}));
  EXPECT_EQ(j["T"], 0.5);
  EXPECT_EQ(j["window_T"], 12.0);
  EXPECT_EQ(j["delta_ladder"].size(), 3u);
  EXPECT_EQ(j["oracles"].size(), s.oracles.size());
  EXPECT_EQ(j["equilibria"].size(), s.equilibria.size());
  EXPECT_EQ(scenario_sidecar(scalar_hyperbolic_scenario())["window_T"], 1.0);
}

TEST(Scenarios, SystemsRoundTripThroughJson) {
  for (const auto& name : scenario_names()) {
    const AffineSystem a = scenario_by_name(name).system;
    const AffineSystem b = system_from_json(system_to_json(a));
    ASSERT_EQ(a.matrices().size(), b.matrices().size());
    for (std::size_t k = 0; k < a.matrices().size(); ++k) {
      EXPECT_EQ(a.matrices()[k], b.matrices()[k]);
      EXPECT_EQ(a.offsets()[k], b.offsets()[k]);
    }
    EXPECT_EQ(a.omega().lower(), b.omega().lower());
  }
}

}  // namespace
}  // namespace chainctl
