#pragma once

#include <memory>

#include "chainctl/integrate.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/systems.hpp"

namespace chainctl {

/// Time-T map x -> phi(T, x, u) for one constant control value. Calls are
/// const and safe from several threads. A non-finite result marks divergence.
class TimeMap {
 public:
  virtual ~TimeMap() = default;
  virtual Vec operator()(const Vec& x) const = 0;
};

/// Flow family used by graph construction.
class Dynamics {
 public:
  virtual ~Dynamics() = default;

  /// Dimension of the points the flow acts on.
  virtual int state_dim() const = 0;
  virtual const ControlRange& omega() const = 0;
  virtual std::unique_ptr<TimeMap> time_map(const Vec& u, double T, double step) const = 0;
};

/// Affine flow on R^n. Time-T maps are the RK4 transition matrices of the
/// bilinear lift applied to (x, 1), which equals stepwise RK4 on the affine field.
class AffineFlow final : public Dynamics {
 public:
  explicit AffineFlow(AffineSystem sys);

  int state_dim() const override { return sys_.state_dim(); }
  const ControlRange& omega() const override { return sys_.omega(); }
  std::unique_ptr<TimeMap> time_map(const Vec& u, double T, double step) const override;

  const AffineSystem& system() const { return sys_; }

 private:
  AffineSystem sys_;
};

/// Projected flow of a bilinear system on the unit sphere of R^d. The sphere
/// flow is the normalized linear flow, so time-T maps normalize the RK4
/// transition matrix applied to s. Antipodal symmetry and invariance of
/// {s_d = 0} hold exactly.
class ProjectedBilinearFlow final : public Dynamics {
 public:
  explicit ProjectedBilinearFlow(BilinearSystem sys);
  /// Poincare sphere flow of an affine system.
  explicit ProjectedBilinearFlow(const ExtendedBilinearSystem& ext);

  int state_dim() const override { return sys_.dim(); }
  const ControlRange& omega() const override { return sys_.omega(); }
  std::unique_ptr<TimeMap> time_map(const Vec& u, double T, double step) const override;

 private:
  BilinearSystem sys_;
};

/// Arbitrary autonomous field integrated per point with RK4.
class FieldFlow final : public Dynamics {
 public:
  FieldFlow(VectorField field, int state_dim, ControlRange omega, StepHook after_step = {});

  int state_dim() const override { return dim_; }
  const ControlRange& omega() const override { return omega_; }
  std::unique_ptr<TimeMap> time_map(const Vec& u, double T, double step) const override;

 private:
  VectorField field_;
  int dim_;
  ControlRange omega_;
  StepHook after_step_;
};

}  // namespace chainctl
