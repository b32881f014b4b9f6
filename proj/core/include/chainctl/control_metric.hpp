#pragma once

#include "chainctl/control.hpp"

namespace chainctl {

/// Scalar test function of the truncated weak* metric.
///
/// For index i >= 1: y_i(t) = t^k / k! on [-L, L] and 0 elsewhere, with
/// L = 2^ceil(i/2) and k = (i - 1) mod 4.
double control_basis(int i, double t);

/// Support half-width L of control_basis(i, .).
double control_basis_support(int i);

/// Truncated weak* distance between two controls:
///   sum_{i=1}^{N} 2^{-i} |I_i| / (1 + |I_i|),  I_i = int_{-H}^{H} <u - v, y_i> dt.
///
/// For m > 1 the vector test functions cycle through the coordinate axes:
/// term i uses axis (i - 1) mod m and scalar function (i - 1) / m + 1.
/// Integrals are evaluated exactly on the piecewise-constant pieces.
double control_distance(const ControlSignal& u, const ControlSignal& v, int num_terms, double horizon);

}  // namespace chainctl
