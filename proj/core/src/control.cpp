#include "chainctl/control.hpp"

#include <algorithm>
#include <cmath>

#include "chainctl/errors.hpp"

namespace chainctl {

ControlRange::ControlRange(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw ConstructionError("control range: lower and upper bounds differ in length");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw ConstructionError("control range: bounds must be finite");
    }
    if (!(lower_[i] < upper_[i])) {
      throw ConstructionError("control range: lower bound must be below upper bound");
    }
    if (lower_[i] > 0.0 || upper_[i] < 0.0) {
      throw ConstructionError("control range: must be a neighborhood of 0");
    }
  }
}

ControlRange ControlRange::symmetric(int m, double bound) {
  return ControlRange(Vec::Constant(m, -bound), Vec::Constant(m, bound));
}

bool ControlRange::contains(const Vec& u, double tol) const {
  if (u.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] >= lower_[i] - tol && u[i] <= upper_[i] + tol)) return false;
  }
  return true;
}

std::vector<Vec> ControlRange::vertices() const {
  const int m = dim();
  std::vector<Vec> out;
  const std::size_t count = std::size_t{1} << m;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vec v(m);
    for (int i = 0; i < m; ++i) {
      const bool upper = (mask >> (m - 1 - i)) & 1u;
      v[i] = upper ? upper_[i] : lower_[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> ControlRange::grid_with_origin(int per_axis) const {
  const int m = dim();
  if (m == 0) return {Vec(0)};
  per_axis = std::max(per_axis, 2);
  std::vector<Vec> out;
  std::vector<int> idx(m, 0);
  bool has_origin = false;
  while (true) {
    Vec v(m);
    for (int i = 0; i < m; ++i) {
      const double t = static_cast<double>(idx[i]) / (per_axis - 1);
      v[i] = (idx[i] == per_axis - 1) ? upper_[i] : lower_[i] + t * (upper_[i] - lower_[i]);
    }
    if (v.cwiseAbs().maxCoeff() < 1e-14) {
      v.setZero();
      has_origin = true;
    }
    out.push_back(std::move(v));
    int k = m - 1;
    while (k >= 0 && ++idx[k] == per_axis) idx[k--] = 0;
    if (k < 0) break;
  }
  if (!has_origin) out.push_back(Vec::Zero(m));
  return out;
}

ControlSignal::ControlSignal(std::vector<double> breakpoints, std::vector<Vec> values, Vec default_value)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), default_(std::move(default_value)) {
  if (breakpoints_.empty() != values_.empty() ||
      (!breakpoints_.empty() && values_.size() + 1 != breakpoints_.size())) {
    throw ConstructionError("control signal: need one value per interval between breakpoints");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!std::isfinite(breakpoints_[k])) throw ConstructionError("control signal: non-finite breakpoint");
    if (k > 0 && !(breakpoints_[k - 1] < breakpoints_[k])) {
      throw ConstructionError("control signal: breakpoints must be strictly increasing");
    }
  }
  for (const Vec& v : values_) {
    if (v.size() != default_.size()) throw ConstructionError("control signal: inconsistent value dimension");
    if (!v.allFinite()) throw ConstructionError("control signal: non-finite value");
  }
  if (!default_.allFinite()) throw ConstructionError("control signal: non-finite default value");
}

ControlSignal ControlSignal::constant(Vec value) { return ControlSignal({}, {}, std::move(value)); }

ControlSignal ControlSignal::zero(int m) { return constant(Vec::Zero(m)); }

Vec ControlSignal::operator()(double t) const {
  if (breakpoints_.empty() || t < breakpoints_.front() || t >= breakpoints_.back()) return default_;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

ControlSignal ControlSignal::shifted(double dt) const {
  std::vector<double> bp(breakpoints_);
  for (double& t : bp) t -= dt;
  return ControlSignal(std::move(bp), values_, default_);
}

std::vector<double> ControlSignal::switch_times(double a, double b) const {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> out;
  for (double t : breakpoints_) {
    if (t > lo && t < hi) out.push_back(t);
  }
  return out;
}

bool ControlSignal::within(const ControlRange& range, double tol) const {
  if (!range.contains(default_, tol)) return false;
  return std::all_of(values_.begin(), values_.end(), [&](const Vec& v) { return range.contains(v, tol); });
}

}  // namespace chainctl
