#pragma once

#include <string>

#include "chainctl/linalg.hpp"

namespace chainctl {

enum class WeightKind {
  Unit,           ///< w = 1
  EquatorHeight,  ///< w(s) = |s_{n+1}| on sphere domains
  InverseNorm,    ///< w(x) = 1 / (1 + |x|_2)
};

WeightKind parse_weight(const std::string& name);
std::string weight_name(WeightKind w);

double evaluate_weight(WeightKind w, const Vec& x);

/// Jump radius allowed at an arrival point: a constant eps or delta * w(x).
class JumpSpec {
 public:
  static JumpSpec constant(double eps);
  static JumpSpec weighted(double delta, WeightKind weight);

  bool is_constant() const { return constant_; }
  /// eps for constant jumps, delta for weighted ones.
  double scale() const { return scale_; }
  WeightKind weight() const { return weight_; }

  double operator()(const Vec& arrival) const;

 private:
  JumpSpec(bool constant, double scale, WeightKind weight);

  bool constant_;
  double scale_;
  WeightKind weight_;
};

}  // namespace chainctl
