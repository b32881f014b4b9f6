#include "chainctl/dynamics.hpp"

#include <limits>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

void check_control(const ControlRange& omega, const Vec& u, double T, double step) {
  if (u.size() != omega.dim()) throw ConstructionError("dynamics: control dimension mismatch");
  if (!omega.contains(u)) throw InputError("dynamics: control sample outside the control range");
  if (!(T > 0.0)) throw ConfigError("dynamics: T must be positive");
  if (!(step > 0.0)) throw ConfigError("dynamics: step must be positive");
}

Vec nan_vector(Eigen::Index n) { return Vec::Constant(n, std::numeric_limits<double>::quiet_NaN()); }

class AffineMap final : public TimeMap {
 public:
  explicit AffineMap(Mat p) : p_(std::move(p)) {}

  Vec operator()(const Vec& x) const override {
    const Eigen::Index n = x.size();
    Vec y = p_.topLeftCorner(n, n) * x + p_.topRightCorner(n, 1);
    return y.allFinite() ? y : nan_vector(n);
  }

 private:
  Mat p_;
};

class SphereMap final : public TimeMap {
 public:
  explicit SphereMap(Mat p) : p_(std::move(p)) {}

  Vec operator()(const Vec& s) const override {
    Vec y = p_ * s;
    const double norm = y.norm();
    if (!std::isfinite(norm) || !(norm > 0.0)) return nan_vector(s.size());
    return y / norm;
  }

 private:
  Mat p_;
};

class FieldMap final : public TimeMap {
 public:
  FieldMap(const VectorField& field, const StepHook& hook, Vec u, double T, double step)
      : field_(field), hook_(hook), u_(ControlSignal::constant(std::move(u))), T_(T), step_(step) {}

  Vec operator()(const Vec& x) const override {
    try {
      return integrate(field_, x, u_, 0.0, T_, step_, hook_);
    } catch (const DivergenceError&) {
      return nan_vector(x.size());
    }
  }

 private:
  const VectorField& field_;
  const StepHook& hook_;
  ControlSignal u_;
  double T_;
  double step_;
};

}  // namespace

AffineFlow::AffineFlow(AffineSystem sys) : sys_(std::move(sys)) {}

std::unique_ptr<TimeMap> AffineFlow::time_map(const Vec& u, double T, double step) const {
  check_control(sys_.omega(), u, T, step);
  const int n = sys_.state_dim();
  Mat a = Mat::Zero(n + 1, n + 1);
  a.topLeftCorner(n, n) = sys_.linear_part(u);
  a.topRightCorner(n, 1) = sys_.offset(u);
  return std::make_unique<AffineMap>(rk4_propagator(a, T, step));
}

ProjectedBilinearFlow::ProjectedBilinearFlow(BilinearSystem sys) : sys_(std::move(sys)) {}

ProjectedBilinearFlow::ProjectedBilinearFlow(const ExtendedBilinearSystem& ext) : sys_(ext.bilinear()) {}

std::unique_ptr<TimeMap> ProjectedBilinearFlow::time_map(const Vec& u, double T, double step) const {
  check_control(sys_.omega(), u, T, step);
  return std::make_unique<SphereMap>(rk4_propagator(sys_.matrix(u), T, step));
}

FieldFlow::FieldFlow(VectorField field, int state_dim, ControlRange omega, StepHook after_step)
    : field_(std::move(field)), dim_(state_dim), omega_(std::move(omega)), after_step_(std::move(after_step)) {
  if (!field_) throw ConstructionError("field flow: empty vector field");
  if (dim_ < 1) throw ConstructionError("field flow: dimension must be positive");
}

std::unique_ptr<TimeMap> FieldFlow::time_map(const Vec& u, double T, double step) const {
  check_control(omega_, u, T, step);
  return std::make_unique<FieldMap>(field_, after_step_, u, T, step);
}

}  // namespace chainctl
