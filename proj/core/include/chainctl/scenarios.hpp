#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chainctl/jump.hpp"
#include "chainctl/systems.hpp"

namespace chainctl {

/// Engine parameters a scenario is known to work with.
struct RecommendedParams {
  Vec window_lower;
  Vec window_upper;
  int depth = 6;
  int sphere_depth = 6;
  double T = 1.0;
  /// Horizon for the euclidean window pipeline; 0 means T.
  double window_T = 0.0;
  /// Control grid points per axis for the euclidean window pipeline; 0 means
  /// vertices of Omega plus the origin.
  int control_grid = 0;
  double eps = 0.05;
  std::vector<double> delta_ladder;
  WeightKind weight = WeightKind::Unit;
  double step = 1e-3;
  int hemisphere_sign = 1;
  bool closed = true;
};

/// Known equilibrium: constant control u keeps x fixed.
struct Equilibrium {
  Vec u;
  Vec x;
};

struct OracleFact {
  std::string name;
  std::string statement;
  double tolerance = 0.0;
};

struct Scenario {
  std::string name;
  std::string description;
  AffineSystem system;
  RecommendedParams params;
  std::vector<Equilibrium> equilibria;
  std::vector<OracleFact> oracles;
};

/// x' = y, y' = 0; no control.
Scenario shear_flow_scenario();

/// x' = y, y' = 0, z' = z + u with u in [-1, 1].
Scenario linear_3d_scenario();

/// x' = y, y' = -(1 + u) x - 3 y + u + d with u in [-rho, rho].
/// Requires rho in the open interval (1, 5/4) and d < 1; throws ConfigError otherwise.
Scenario example2_scenario(double rho = 1.1, double d = 0.5);

/// x' = -x + u with u in [-1, 1].
Scenario scalar_hyperbolic_scenario();

std::vector<std::string> scenario_names();
/// Throws ConfigError for unknown names.
Scenario scenario_by_name(const std::string& name);

/// Exact shear flow (x + t y, y).
Vec shear_flow_exact(double t, const Vec& xy);

/// Equilibrium ((d + u) / (1 + u), 0); throws InputError for u = -1.
Vec example2_equilibrium(double u, double d);
/// Eigenvalues -3/2 -+ sqrt(5/4 - u) of the linear part, smaller first.
std::pair<std::complex<double>, std::complex<double>> example2_eigenvalues(double u);

/// Largest drift of the scenario's equilibria after integrating for time t.
double equilibrium_drift(const Scenario& s, double t, double step);

/// Sidecar document with the recommended parameters and oracle facts.
nlohmann::json scenario_sidecar(const Scenario& s);

}  // namespace chainctl
