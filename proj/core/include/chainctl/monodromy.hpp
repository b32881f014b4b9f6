#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "chainctl/control.hpp"
#include "chainctl/systems.hpp"

namespace chainctl {

struct MonodromyOptions {
  double step = 1e-3;
  /// |lambda - 1| below this counts as a unit eigenvalue.
  double tol_eig = 1e-6;
  /// |psi(tau, x, u) - x| below this counts as a periodic orbit.
  double tol_per = 1e-6;
};

/// Fundamental solution X_u(tau, 0) of the homogeneous part and its spectrum.
struct MonodromyReport {
  Mat matrix;
  std::vector<std::complex<double>> eigenvalues;
  bool has_unit_eigenvalue = false;
  /// Unit-norm real vector spanning ker(X - I) when a unit eigenvalue exists.
  std::optional<Vec> unit_eigvec;
};

MonodromyReport monodromy(const AffineSystem& sys, const ControlSignal& u, double tau,
                          const MonodromyOptions& options = {});

struct UnboundednessCheck {
  bool is_periodic_orbit = false;
  /// Periodic orbit whose monodromy has eigenvalue 1: the strong chain control
  /// set containing it then contains the affine line x + R * direction.
  bool unbounded_flag = false;
  std::optional<Vec> direction;
};

UnboundednessCheck check_unbounded_strong_set(const AffineSystem& sys, const ControlSignal& u, double tau,
                                              const Vec& x, const MonodromyOptions& options = {});

}  // namespace chainctl
