#pragma once

#include <vector>

#include "chainctl/control.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {

/// Control-affine system on R^n:
///   x' = A_0 x + a_0 + sum_i u_i (A_i x + a_i),  u in omega.
class AffineSystem {
 public:
  AffineSystem(std::vector<Mat> matrices, std::vector<Vec> offsets, ControlRange omega);

  int state_dim() const { return n_; }
  int control_dim() const { return omega_.dim(); }
  const std::vector<Mat>& matrices() const { return matrices_; }
  const std::vector<Vec>& offsets() const { return offsets_; }
  const ControlRange& omega() const { return omega_; }

  /// A_0 + sum u_i A_i (no range check).
  Mat linear_part(const Vec& u) const;
  /// a_0 + sum u_i a_i (no range check).
  Vec offset(const Vec& u) const;

  bool is_homogeneous() const;

 private:
  int n_;
  std::vector<Mat> matrices_;
  std::vector<Vec> offsets_;
  ControlRange omega_;
};

/// Bilinear system x' = [B_0 + sum u_i B_i] x on R^d.
class BilinearSystem {
 public:
  BilinearSystem(std::vector<Mat> matrices, ControlRange omega);

  int dim() const { return d_; }
  int control_dim() const { return omega_.dim(); }
  const std::vector<Mat>& matrices() const { return matrices_; }
  const ControlRange& omega() const { return omega_; }

  Mat matrix(const Vec& u) const;

 private:
  int d_;
  std::vector<Mat> matrices_;
  ControlRange omega_;
};

/// Bilinear lift of an affine system to R^{n+1}: A'_i = [[A_i, a_i], [0, 0]].
/// The hyperplane {x_{n+1} = 1} is invariant and carries the affine flow.
class ExtendedBilinearSystem {
 public:
  /// Throws ConstructionError unless every matrix has a zero last row.
  explicit ExtendedBilinearSystem(BilinearSystem lifted);

  int extended_dim() const { return lifted_.dim(); }
  int base_dim() const { return lifted_.dim() - 1; }
  const std::vector<Mat>& matrices() const { return lifted_.matrices(); }
  const BilinearSystem& bilinear() const { return lifted_; }

 private:
  BilinearSystem lifted_;
};

/// Right-hand side of the affine system. Throws InputError if u is outside omega,
/// ConstructionError on dimension mismatch.
Vec affine_field(const AffineSystem& sys, const Vec& x, const Vec& u);

/// Right-hand side of a bilinear system, same checks as affine_field.
Vec bilinear_field(const BilinearSystem& sys, const Vec& x, const Vec& u);

ExtendedBilinearSystem extend(const AffineSystem& sys);

/// Same matrices with all offsets set to zero.
AffineSystem homogeneous_part(const AffineSystem& sys);

/// The homogeneous part as a bilinear system on R^n.
BilinearSystem homogeneous_bilinear(const AffineSystem& sys);

}  // namespace chainctl
