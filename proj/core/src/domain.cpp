#include "chainctl/domain.hpp"

#include <cmath>

#include "chainctl/errors.hpp"

namespace chainctl {

DomainSpec DomainSpec::window(Vec lower, Vec upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw ConstructionError("window: bounds must be nonempty and of equal length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw ConstructionError("window: need finite bounds with lower < upper");
    }
  }
  DomainSpec d;
  d.kind_ = DomainKind::EuclideanWindow;
  d.n_ = static_cast<int>(lower.size());
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

DomainSpec DomainSpec::sphere(int n) {
  if (n < 1) throw ConstructionError("sphere: dimension must be at least 1");
  DomainSpec d;
  d.kind_ = DomainKind::Sphere;
  d.n_ = n;
  d.lower_ = Vec::Constant(n + 1, -1.0);
  d.upper_ = Vec::Constant(n + 1, 1.0);
  return d;
}

DomainSpec DomainSpec::hemisphere(int n, int sign, bool closed) {
  if (sign != 1 && sign != -1) throw ConstructionError("hemisphere: sign must be +1 or -1");
  DomainSpec d = sphere(n);
  d.kind_ = DomainKind::Hemisphere;
  d.sign_ = sign;
  d.closed_ = closed;
  return d;
}

DomainSpec DomainSpec::projective(int n) {
  DomainSpec d = sphere(n);
  d.kind_ = DomainKind::Projective;
  return d;
}

std::string DomainSpec::name() const {
  switch (kind_) {
    case DomainKind::EuclideanWindow:
      return "window";
    case DomainKind::Sphere:
      return "sphere";
    case DomainKind::Hemisphere:
      return "hemisphere";
    case DomainKind::Projective:
      return "projective";
  }
  return "unknown";
}

}  // namespace chainctl
