#pragma once

#include <functional>

#include "chainctl/control.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {

/// Autonomous field f(x, u) evaluated with the control value in force.
using VectorField = std::function<Vec(const Vec& x, const Vec& u)>;

/// Optional hook applied to the state after every completed step.
using StepHook = std::function<void(Vec& x)>;

/// Classical fixed-step RK4 from t0 to t1 (t1 < t0 integrates backwards).
///
/// Every control breakpoint inside the interval is hit exactly: each
/// constant-control segment is split into ceil(length / step) equal steps.
/// Throws DivergenceError carrying the time of the first non-finite state.
Vec integrate(const VectorField& field, const Vec& x0, const ControlSignal& u, double t0, double t1,
              double step, const StepHook& after_step = {});

/// Transition matrix of the RK4 scheme for x' = A x over [0, duration]
/// with ceil(duration / step) equal steps. Applying it to x0 gives exactly
/// what `integrate` computes for that linear field, up to rounding.
Mat rk4_propagator(const Mat& a, double duration, double step);

/// Number of equal substeps used for a segment of the given length.
int substep_count(double length, double step);

}  // namespace chainctl
