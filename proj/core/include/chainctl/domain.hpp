#pragma once

#include <string>

#include "chainctl/linalg.hpp"

namespace chainctl {

enum class DomainKind { EuclideanWindow, Sphere, Hemisphere, Projective };

/// State space to be covered: an axis-aligned window of R^n, the sphere S^n,
/// a hemisphere of S^n or the projective space P^n (as a quotient of S^n).
class DomainSpec {
 public:
  static DomainSpec window(Vec lower, Vec upper);
  static DomainSpec sphere(int n);
  /// sign = +1 for s_{n+1} >= 0, -1 for s_{n+1} <= 0.
  static DomainSpec hemisphere(int n, int sign, bool closed);
  static DomainSpec projective(int n);

  DomainKind kind() const { return kind_; }
  /// Manifold dimension n.
  int dim() const { return n_; }
  /// Dimension of the coordinates boxes live in: n for windows, n + 1 otherwise.
  int ambient_dim() const { return kind_ == DomainKind::EuclideanWindow ? n_ : n_ + 1; }
  bool spherical() const { return kind_ != DomainKind::EuclideanWindow; }

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  int sign() const { return sign_; }
  bool closed() const { return closed_; }

  std::string name() const;

 private:
  DomainSpec() = default;

  DomainKind kind_ = DomainKind::Sphere;
  int n_ = 0;
  Vec lower_;
  Vec upper_;
  int sign_ = 1;
  bool closed_ = true;
};

}  // namespace chainctl
