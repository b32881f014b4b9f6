#include "chainctl/compactification.hpp"

#include <algorithm>
#include <cmath>

#include "chainctl/errors.hpp"
#include "chainctl/integrate.hpp"

namespace chainctl {

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InputError("sphere point: need at least two coordinates");
  if (!coords_.allFinite()) throw InputError("sphere point: non-finite coordinates");
  const double norm = coords_.norm();
  if (!(norm > 0.0)) throw InputError("sphere point: zero vector");
  coords_ /= norm;
}

namespace {

SpherePoint canonical_sign(const SpherePoint& s, double tol_sign) {
  for (Eigen::Index i = 0; i < s.coords().size(); ++i) {
    if (std::abs(s[i]) > tol_sign) return s[i] > 0 ? s : antipode(s);
  }
  return s;
}

Vec lift(const Vec& x) {
  Vec y(x.size() + 1);
  y.head(x.size()) = x;
  y[x.size()] = 1.0;
  return y;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const SpherePoint& s, double tol_sign) : rep_(canonical_sign(s, tol_sign)) {}

SpherePoint embed_h(const Vec& x) {
  if (!x.allFinite()) throw InputError("embed_h: non-finite input");
  return SpherePoint(lift(x));
}

SpherePoint embed_h_minus(const Vec& x) { return antipode(embed_h(x)); }

Vec h_inverse(const SpherePoint& s, double tol_equator) {
  const auto n = s.coords().size() - 1;
  const double last = s[n];
  if (std::abs(last) <= tol_equator) throw EquatorError("h_inverse: point lies on the equator");
  return s.coords().head(n) / last;
}

Vec sphere_field(const BilinearSystem& sys, const Vec& s, const Vec& u) {
  if (s.size() != sys.dim()) throw ConstructionError("sphere field: dimension mismatch");
  if (u.size() != sys.control_dim()) throw ConstructionError("sphere field: control dimension mismatch");
  if (!sys.omega().contains(u)) throw InputError("sphere field: control value outside the control range");
  const Mat a = sys.matrix(u);
  const Vec as = a * s;
  return as - s.dot(as) * s;
}

Vec sphere_field(const ExtendedBilinearSystem& ext, const SpherePoint& s, const Vec& u) {
  return sphere_field(ext.bilinear(), s.coords(), u);
}

SpherePoint sphere_integrate(const BilinearSystem& sys, const SpherePoint& s0, const ControlSignal& u, double t0,
                             double t1, double step) {
  const VectorField field = [&sys](const Vec& s, const Vec& v) { return sphere_field(sys, s, v); };
  const StepHook renormalize = [](Vec& s) {
    const double norm = s.norm();
    if (norm > 0.0 && std::isfinite(norm)) s /= norm;
  };
  return SpherePoint(integrate(field, s0.coords(), u, t0, t1, step, renormalize));
}

SpherePoint sphere_integrate(const ExtendedBilinearSystem& ext, const SpherePoint& s0, const ControlSignal& u,
                             double t0, double t1, double step) {
  return sphere_integrate(ext.bilinear(), s0, u, t0, t1, step);
}

double conjugacy_residual(const AffineSystem& sys, const Vec& x, const ControlSignal& u, double t, double step) {
  const VectorField field = [&sys](const Vec& y, const Vec& v) { return affine_field(sys, y, v); };
  const Vec end = integrate(field, x, u, 0.0, t, step);
  const SpherePoint via_plane = embed_h(end);
  const SpherePoint via_sphere = sphere_integrate(extend(sys), embed_h(x), u, 0.0, t, step);
  return sphere_distance(via_plane, via_sphere);
}

SpherePoint antipode(const SpherePoint& s) { return SpherePoint(-s.coords()); }

ProjectivePoint projective_canonical(const SpherePoint& s, double tol_sign) { return ProjectivePoint(s, tol_sign); }

double equator_height(const SpherePoint& s) { return s[s.coords().size() - 1]; }

double sphere_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ConstructionError("sphere distance: dimension mismatch");
  return max_distance(a.coords(), b.coords());
}

double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const Vec& a = p.representative().coords();
  const Vec& b = q.representative().coords();
  return std::min(max_distance(a, b), max_distance(a, -b));
}

}  // namespace chainctl
