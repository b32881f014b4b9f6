#pragma once

#include <vector>

#include "chainctl/linalg.hpp"

namespace chainctl {

/// Compact box of admissible control values, a neighborhood of 0 in R^m.
class ControlRange {
 public:
  /// Empty range (m = 0), used for control-free systems.
  ControlRange() = default;
  ControlRange(Vec lower, Vec upper);

  static ControlRange symmetric(int m, double bound);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  bool contains(const Vec& u, double tol = 1e-12) const;

  /// Vertices in lexicographic order (first coordinate slowest, lower before upper).
  std::vector<Vec> vertices() const;

  /// Per-axis grid of `per_axis` evenly spaced values including both bounds,
  /// lexicographic order. 0 is appended when it is not already a grid point.
  std::vector<Vec> grid_with_origin(int per_axis) const;

 private:
  Vec lower_;
  Vec upper_;
};

/// Piecewise-constant, right-continuous control u: R -> R^m.
///
/// `breakpoints` t_0 < ... < t_K delimit K intervals [t_k, t_{k+1}) carrying
/// `values[k]`. Outside [t_0, t_K) the signal equals `default_value`.
class ControlSignal {
 public:
  ControlSignal(std::vector<double> breakpoints, std::vector<Vec> values, Vec default_value);

  static ControlSignal constant(Vec value);
  /// u(t) = 0 in R^m.
  static ControlSignal zero(int m);

  int dim() const { return static_cast<int>(default_.size()); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Vec>& values() const { return values_; }
  const Vec& default_value() const { return default_; }

  Vec operator()(double t) const;

  /// The signal t -> u(t + dt).
  ControlSignal shifted(double dt) const;

  /// Breakpoints lying strictly inside (min(a,b), max(a,b)), ascending.
  std::vector<double> switch_times(double a, double b) const;

  /// True when every value taken by the signal lies in `range`.
  bool within(const ControlRange& range, double tol = 1e-12) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Vec> values_;
  Vec default_;
};

}  // namespace chainctl
