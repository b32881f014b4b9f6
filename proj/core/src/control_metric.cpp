#include "chainctl/control_metric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

int degree(int i) { return (i - 1) % 4; }

// Antiderivative of t^k / k!.
double primitive(int k, double t) { return std::pow(t, k + 1) / factorial(k + 1); }

}  // namespace

double control_basis_support(int i) {
  if (i < 1) throw InputError("control basis: index starts at 1");
  return std::ldexp(1.0, (i + 1) / 2);
}

double control_basis(int i, double t) {
  const double support = control_basis_support(i);
  if (t < -support || t > support) return 0.0;
  const int k = degree(i);
  return std::pow(t, k) / factorial(k);
}

double control_distance(const ControlSignal& u, const ControlSignal& v, int num_terms, double horizon) {
  if (num_terms < 1) throw InputError("control distance: need at least one term");
  if (!(horizon > 0.0)) throw InputError("control distance: horizon must be positive");
  if (u.dim() != v.dim()) throw ConstructionError("control distance: control dimensions differ");
  const int m = std::max(u.dim(), 1);

  double total = 0.0;
  for (int i = 1; i <= num_terms; ++i) {
    const int axis = (i - 1) % m;
    const int scalar_index = (i - 1) / m + 1;
    const double support = std::min(control_basis_support(scalar_index), horizon);
    const int k = degree(scalar_index);

    std::vector<double> nodes{-support, support};
    for (double t : u.switch_times(-support, support)) nodes.push_back(t);
    for (double t : v.switch_times(-support, support)) nodes.push_back(t);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    double integral = 0.0;
    if (u.dim() > 0) {
      for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double a = nodes[j];
        const double b = nodes[j + 1];
        const double mid = 0.5 * (a + b);
        const double diff = u(mid)[axis] - v(mid)[axis];
        integral += diff * (primitive(k, b) - primitive(k, a));
      }
    }
    const double magnitude = std::abs(integral);
    total += std::ldexp(1.0, -i) * magnitude / (1.0 + magnitude);
  }
  return total;
}

}  // namespace chainctl
