#include "chainctl/integrate.hpp"

#include <cmath>
#include <vector>

#include "chainctl/errors.hpp"

namespace chainctl {

int substep_count(double length, double step) {
  if (!(step > 0.0)) throw InputError("integrate: step must be positive");
  const double ratio = std::abs(length) / step;
  // Guard against ratios like 1000.0000000001 produced by rounding.
  const auto n = static_cast<int>(std::ceil(ratio - 1e-9));
  return n < 1 ? 1 : n;
}

Vec integrate(const VectorField& field, const Vec& x0, const ControlSignal& u, double t0, double t1,
              double step, const StepHook& after_step) {
  if (!(step > 0.0)) throw InputError("integrate: step must be positive");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw InputError("integrate: non-finite time bound");
  Vec x = x0;
  if (!x.allFinite()) throw DivergenceError("integrate: non-finite initial state", t0);
  if (t0 == t1) return x;

  std::vector<double> nodes;
  nodes.push_back(t0);
  const std::vector<double> inner = u.switch_times(t0, t1);
  if (t1 > t0) {
    nodes.insert(nodes.end(), inner.begin(), inner.end());
  } else {
    nodes.insert(nodes.end(), inner.rbegin(), inner.rend());
  }
  nodes.push_back(t1);

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double a = nodes[k];
    const double b = nodes[k + 1];
    const Vec value = u(0.5 * (a + b));
    const int steps = substep_count(b - a, step);
    const double h = (b - a) / steps;
    for (int s = 0; s < steps; ++s) {
      const Vec k1 = field(x, value);
      const Vec k2 = field(x + 0.5 * h * k1, value);
      const Vec k3 = field(x + 0.5 * h * k2, value);
      const Vec k4 = field(x + h * k3, value);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (after_step) after_step(x);
      if (!x.allFinite()) {
        throw DivergenceError("integrate: trajectory diverged", a + (s + 1) * h);
      }
    }
  }
  return x;
}

Mat rk4_propagator(const Mat& a, double duration, double step) {
  const int steps = substep_count(duration, step);
  const double h = duration / steps;
  const auto d = a.rows();
  const Mat ha = h * a;
  const Mat ha2 = ha * ha;
  const Mat ha3 = ha2 * ha;
  const Mat ha4 = ha3 * ha;
  const Mat one_step = Mat::Identity(d, d) + ha + ha2 / 2.0 + ha3 / 6.0 + ha4 / 24.0;
  Mat total = Mat::Identity(d, d);
  for (int s = 0; s < steps; ++s) total = one_step * total;
  return total;
}

}  // namespace chainctl
