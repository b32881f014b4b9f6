#pragma once

#include "chainctl/control.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/systems.hpp"

namespace chainctl {

/// Point of the unit sphere S^n in R^{n+1}; renormalized on construction.
class SpherePoint {
 public:
  /// Throws InputError for zero or non-finite input.
  explicit SpherePoint(Vec coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vec coords_;
};

/// Point of P^n stored through its canonical sphere representative: the first
/// coordinate with magnitude above tol_sign is positive.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const SpherePoint& s, double tol_sign = 1e-12);

  const SpherePoint& representative() const { return rep_; }

 private:
  SpherePoint rep_;
};

/// h(x) = (x, 1) / |(x, 1)|, a homeomorphism of R^n onto the open northern hemisphere.
SpherePoint embed_h(const Vec& x);

/// h_-(x) = -h(x), onto the southern hemisphere.
SpherePoint embed_h_minus(const Vec& x);

/// Inverse chart (s_1, ..., s_n) / s_{n+1}. Throws EquatorError when
/// |s_{n+1}| <= tol_equator.
Vec h_inverse(const SpherePoint& s, double tol_equator = 1e-12);

/// Projection of a bilinear field onto the sphere:
///   [B_0 - s^T B_0 s I] s + sum u_i [B_i - s^T B_i s I] s.
Vec sphere_field(const BilinearSystem& sys, const Vec& s, const Vec& u);
Vec sphere_field(const ExtendedBilinearSystem& ext, const SpherePoint& s, const Vec& u);

/// RK4 on sphere_field, renormalizing after every step.
SpherePoint sphere_integrate(const BilinearSystem& sys, const SpherePoint& s0, const ControlSignal& u, double t0,
                             double t1, double step);
SpherePoint sphere_integrate(const ExtendedBilinearSystem& ext, const SpherePoint& s0, const ControlSignal& u,
                             double t0, double t1, double step);

/// Max-coordinate distance between h(psi(t, x, u)) and the sphere trajectory
/// started at h(x), both integrated independently over [0, t].
double conjugacy_residual(const AffineSystem& sys, const Vec& x, const ControlSignal& u, double t, double step);

SpherePoint antipode(const SpherePoint& s);
ProjectivePoint projective_canonical(const SpherePoint& s, double tol_sign = 1e-12);

/// Last coordinate s_{n+1}: positive on the northern hemisphere, zero on the equator.
double equator_height(const SpherePoint& s);

/// max_i |s_i - s'_i|.
double sphere_distance(const SpherePoint& a, const SpherePoint& b);

/// min(d(p, q), d(p, -q)) on representatives.
double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q);

}  // namespace chainctl
