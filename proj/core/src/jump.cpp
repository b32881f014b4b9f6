#include "chainctl/jump.hpp"

#include <cmath>

#include "chainctl/errors.hpp"

namespace chainctl {

WeightKind parse_weight(const std::string& name) {
  if (name == "unit") return WeightKind::Unit;
  if (name == "equator_height") return WeightKind::EquatorHeight;
  if (name == "inverse_norm") return WeightKind::InverseNorm;
  throw ConfigError("unknown weight '" + name + "' (expected unit, equator_height or inverse_norm)");
}

std::string weight_name(WeightKind w) {
  switch (w) {
    case WeightKind::Unit:
      return "unit";
    case WeightKind::EquatorHeight:
      return "equator_height";
    case WeightKind::InverseNorm:
      return "inverse_norm";
  }
  return "unknown";
}

double evaluate_weight(WeightKind w, const Vec& x) {
  switch (w) {
    case WeightKind::Unit:
      return 1.0;
    case WeightKind::EquatorHeight:
      return std::abs(x[x.size() - 1]);
    case WeightKind::InverseNorm:
      return 1.0 / (1.0 + x.norm());
  }
  return 1.0;
}

JumpSpec::JumpSpec(bool constant, double scale, WeightKind weight)
    : constant_(constant), scale_(scale), weight_(weight) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConstructionError("jump: scale must be positive and finite");
}

JumpSpec JumpSpec::constant(double eps) { return JumpSpec(true, eps, WeightKind::Unit); }

JumpSpec JumpSpec::weighted(double delta, WeightKind weight) { return JumpSpec(false, delta, weight); }

double JumpSpec::operator()(const Vec& arrival) const {
  return constant_ ? scale_ : scale_ * evaluate_weight(weight_, arrival);
}

}  // namespace chainctl
