#include "chainctl/monodromy.hpp"

#include <cmath>

#include "chainctl/errors.hpp"
#include "chainctl/integrate.hpp"

namespace chainctl {

namespace {

void orient(Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace

MonodromyReport monodromy(const AffineSystem& sys, const ControlSignal& u, double tau,
                          const MonodromyOptions& options) {
  if (!(tau > 0.0)) throw InputError("monodromy: period must be positive");
  if (u.dim() != sys.control_dim()) throw ConstructionError("monodromy: control dimension mismatch");
  if (!u.within(sys.omega())) throw InputError("monodromy: control leaves the control range");

  const int n = sys.state_dim();
  const VectorField field = [&sys](const Vec& x, const Vec& v) -> Vec { return sys.linear_part(v) * x; };

  MonodromyReport report;
  report.matrix.resize(n, n);
  for (int j = 0; j < n; ++j) {
    report.matrix.col(j) = integrate(field, Vec::Unit(n, j), u, 0.0, tau, options.step);
  }

  const double det = report.matrix.determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    throw DivergenceError("monodromy: fundamental solution lost invertibility", tau);
  }

  Eigen::EigenSolver<Mat> solver(report.matrix, /*computeEigenvectors=*/false);
  const auto values = solver.eigenvalues();
  report.eigenvalues.assign(values.data(), values.data() + values.size());
  for (const auto& lambda : report.eigenvalues) {
    if (std::abs(lambda - 1.0) < options.tol_eig) report.has_unit_eigenvalue = true;
  }
  if (report.has_unit_eigenvalue) {
    const Mat shifted = report.matrix - Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
    Vec v = svd.matrixV().col(n - 1);
    v.normalize();
    orient(v);
    report.unit_eigvec = std::move(v);
  }
  return report;
}

UnboundednessCheck check_unbounded_strong_set(const AffineSystem& sys, const ControlSignal& u, double tau,
                                              const Vec& x, const MonodromyOptions& options) {
  if (!(tau > 0.0)) throw InputError("unboundedness check: period must be positive");
  if (x.size() != sys.state_dim()) throw ConstructionError("unboundedness check: state dimension mismatch");
  const VectorField field = [&sys](const Vec& y, const Vec& v) -> Vec { return affine_field(sys, y, v); };
  const Vec end = integrate(field, x, u, 0.0, tau, options.step);

  UnboundednessCheck out;
  out.is_periodic_orbit = (end - x).norm() < options.tol_per;
  if (!out.is_periodic_orbit) return out;

  MonodromyReport report = monodromy(sys, u, tau, options);
  out.unbounded_flag = report.has_unit_eigenvalue;
  if (out.unbounded_flag) out.direction = std::move(report.unit_eigvec);
  return out;
}

}  // namespace chainctl
