#pragma once

#include <Eigen/Dense>

namespace chainctl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Max-coordinate distance. This is the metric used on windows and on the
/// sphere throughout the library.
inline double max_distance(const Vec& a, const Vec& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace chainctl
