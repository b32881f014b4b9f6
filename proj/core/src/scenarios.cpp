#include "chainctl/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "chainctl/errors.hpp"
#include "chainctl/integrate.hpp"

namespace chainctl {

namespace {

Mat mat(int n, std::initializer_list<double> rows) {
  Mat m(n, n);
  auto it = rows.begin();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = *it++;
  }
  return m;
}

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

Vec one(double u) { return Vec::Constant(1, u); }

}  // namespace

Scenario shear_flow_scenario() {
  AffineSystem sys({mat(2, {0, 1, 0, 0})}, {Vec::Zero(2)}, ControlRange());
  Scenario s{"shear", "shear flow x' = y, y' = 0 without control", std::move(sys), {}, {}, {}};
  s.params.window_lower = vec({-3, -3});
  s.params.window_upper = vec({3, 3});
  s.params.depth = 6;
  s.params.sphere_depth = 7;
  s.params.T = 1.0;
  s.params.eps = 0.2;
  s.params.delta_ladder = {0.5, 0.1, 0.02};
  s.params.weight = WeightKind::EquatorHeight;
  for (double x : {-2.0, 0.0, 5.0}) s.equilibria.push_back({Vec(0), vec({x, 0.0})});
  s.oracles = {
      {"flow", "phi(t, (x, y)) = (x + t y, y)", 1e-12},
      {"equilibria", "the x-axis consists of equilibria", 1e-12},
      {"strong_chain_recurrent_set", "the x-axis", 0.0},
      {"chain_transitive_plane", "the plane is chain transitive for constant jumps", 0.0},
  };
  return s;
}

Scenario linear_3d_scenario() {
  AffineSystem sys({mat(3, {0, 1, 0, 0, 0, 0, 0, 0, 1}), Mat::Zero(3, 3)}, {Vec::Zero(3), vec({0, 0, 1})},
                   ControlRange::symmetric(1, 1.0));
  Scenario s{"linear_3d", "x' = y, y' = 0, z' = z + u, u in [-1, 1]", std::move(sys), {}, {}, {}};
  s.params.window_lower = vec({-8, -4, -3});
  s.params.window_upper = vec({8, 4, 3});
  s.params.depth = 6;
  s.params.sphere_depth = 4;
  s.params.T = 1.0;
  s.params.eps = 1.0;
  s.params.delta_ladder = {0.08, 0.04, 0.02};
  s.params.weight = WeightKind::InverseNorm;
  for (double u : {-1.0, 0.0, 1.0}) {
    for (double x : {-3.0, 0.0, 2.0}) s.equilibria.push_back({one(u), vec({x, 0.0, -u})});
  }
  s.oracles = {
      {"strong_chain_control_set", "E* = R x {0} x [-1, 1]", 0.0},
      {"chain_control_set", "E = R^2 x [-1, 1]", 0.0},
      {"control_set", "D0 = {(0, 0)} x (-1, 1)", 0.0},
      {"monodromy", "u = 0, tau = 1: eigenvalues {1, 1, e}", 1e-9},
  };
  return s;
}

Scenario example2_scenario(double rho, double d) {
  if (!(rho > 1.0 && rho < 1.25)) throw ConfigError("example2: rho must lie in (1, 5/4)");
  if (!(d < 1.0)) throw ConfigError("example2: d must be below 1");
  AffineSystem sys({mat(2, {0, 1, -1, -3}), mat(2, {0, 0, -1, 0})}, {vec({0, d}), vec({0, 1})},
                   ControlRange::symmetric(1, rho));
  Scenario s{"example2", "planar affine system with two continua of equilibria", std::move(sys), {}, {}, {}};
  s.params.window_lower = vec({-4, -4});
  s.params.window_upper = vec({8, 4});
  s.params.depth = 8;
  s.params.sphere_depth = 7;
  s.params.T = 0.5;
  s.params.window_T = 12.0;
  s.params.control_grid = 23;
  s.params.eps = 0.05;
  s.params.delta_ladder = {0.2, 0.1, 0.05};
  s.params.weight = WeightKind::EquatorHeight;
  for (double u : {-rho, -0.5 * (1.0 + rho), 0.0, 0.5, rho}) {
    s.equilibria.push_back({one(u), example2_equilibrium(u, d)});
  }
  s.oracles = {
      {"equilibria", "((d + u) / (1 + u), 0) for u != -1", 1e-12},
      {"eigenvalues", "-3/2 +- sqrt(5/4 - u)", 1e-12},
      {"C1", "u in [-rho, -1): x >= (d - rho) / (1 - rho)", 0.0},
      {"C2", "u in (-1, rho]: x <= (d + rho) / (1 + rho)", 0.0},
      {"planar_chain_sets", "two disjoint chain control sets", 0.0},
      {"projective_central", "a single central chain control set on P^2", 0.0},
      {"equator_contact", "the central set contains P(1, 0, 0)", 0.0},
  };
  return s;
}

Scenario scalar_hyperbolic_scenario() {
  AffineSystem sys({mat(1, {-1}), Mat::Zero(1, 1)}, {Vec::Zero(1), one(1.0)}, ControlRange::symmetric(1, 1.0));
  Scenario s{"scalar_hyperbolic", "x' = -x + u, u in [-1, 1]", std::move(sys), {}, {}, {}};
  s.params.window_lower = vec({-3});
  s.params.window_upper = vec({3});
  s.params.depth = 8;
  s.params.sphere_depth = 8;
  s.params.T = 1.0;
  s.params.eps = 0.01;
  s.params.delta_ladder = {0.05, 0.02, 0.01};
  s.params.weight = WeightKind::Unit;
  for (double u : {-1.0, -0.5, 0.0, 0.25, 1.0}) s.equilibria.push_back({one(u), one(u)});
  s.oracles = {
      {"equilibria", "x = u for constant u in [-1, 1]", 1e-12},
      {"chain_control_set", "the unique chain control set is [-1, 1]", 0.0},
      {"sphere", "the central set on S^1 stays at height >= 1/sqrt(2)", 0.0},
  };
  return s;
}

std::vector<std::string> scenario_names() { return {"shear", "linear_3d", "example2", "scalar_hyperbolic"}; }

Scenario scenario_by_name(const std::string& name) {
  if (name == "shear" || name == "shear_flow") return shear_flow_scenario();
  if (name == "linear_3d") return linear_3d_scenario();
  if (name == "example2") return example2_scenario();
  if (name == "scalar_hyperbolic" || name == "scalar") return scalar_hyperbolic_scenario();
  throw ConfigError("unknown scenario '" + name + "'");
}

Vec shear_flow_exact(double t, const Vec& xy) {
  if (xy.size() != 2) throw InputError("shear flow: expected a planar point");
  return vec({xy[0] + t * xy[1], xy[1]});
}

Vec example2_equilibrium(double u, double d) {
  if (u == -1.0) throw InputError("example2: no equilibrium for u = -1");
  return vec({(d + u) / (1.0 + u), 0.0});
}

std::pair<std::complex<double>, std::complex<double>> example2_eigenvalues(double u) {
  const std::complex<double> root = std::sqrt(std::complex<double>(1.25 - u, 0.0));
  return {-1.5 - root, -1.5 + root};
}

double equilibrium_drift(const Scenario& s, double t, double step) {
  const AffineSystem& sys = s.system;
  const VectorField field = [&sys](const Vec& x, const Vec& u) { return affine_field(sys, x, u); };
  double worst = 0.0;
  for (const Equilibrium& e : s.equilibria) {
    const Vec end = integrate(field, e.x, ControlSignal::constant(e.u), 0.0, t, step);
    worst = std::max(worst, max_distance(end, e.x));
  }
  return worst;
}

nlohmann::json scenario_sidecar(const Scenario& s) {
  const auto to_list = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  const RecommendedParams& p = s.params;
  nlohmann::json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["window"] = {{"lower", to_list(p.window_lower)}, {"upper", to_list(p.window_upper)}};
  j["depth"] = p.depth;
  j["sphere_depth"] = p.sphere_depth;
  j["T"] = p.T;
  j["window_T"] = p.window_T > 0.0 ? p.window_T : p.T;
  j["control_grid"] = p.control_grid;
  j["eps"] = p.eps;
  j["delta_ladder"] = p.delta_ladder;
  j["weight"] = weight_name(p.weight);
  j["step"] = p.step;
  j["hemisphere_sign"] = p.hemisphere_sign;
  j["closed"] = p.closed;
  nlohmann::json eq = nlohmann::json::array();
  for (const Equilibrium& e : s.equilibria) eq.push_back({{"u", to_list(e.u)}, {"x", to_list(e.x)}});
  j["equilibria"] = eq;
  nlohmann::json oracles = nlohmann::json::array();
  for (const OracleFact& o : s.oracles) {
    oracles.push_back({{"name", o.name}, {"statement", o.statement}, {"tolerance", o.tolerance}});
  }
  j["oracles"] = oracles;
  return j;
}

}  // namespace chainctl
