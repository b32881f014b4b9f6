#include "chainctl/systems.hpp"

#include <string>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

void check_matrices(const std::vector<Mat>& matrices, int m, const char* who) {
  if (matrices.size() != static_cast<std::size_t>(m) + 1) {
    throw ConstructionError(std::string(who) + ": need m+1 matrices for an m-dimensional control range");
  }
  const auto n = matrices.front().rows();
  for (const Mat& a : matrices) {
    if (a.rows() != n || a.cols() != n) throw ConstructionError(std::string(who) + ": matrices must be square of equal size");
    if (!a.allFinite()) throw ConstructionError(std::string(who) + ": non-finite matrix entry");
  }
}

void check_call(int state_dim, int control_dim, const Vec& x, const Vec& u, const ControlRange& omega) {
  if (x.size() != state_dim) throw ConstructionError("field: state dimension mismatch");
  if (u.size() != control_dim) throw ConstructionError("field: control dimension mismatch");
  if (!omega.contains(u)) throw InputError("field: control value outside the control range");
}

}  // namespace

AffineSystem::AffineSystem(std::vector<Mat> matrices, std::vector<Vec> offsets, ControlRange omega)
    : n_(0), matrices_(std::move(matrices)), offsets_(std::move(offsets)), omega_(std::move(omega)) {
  check_matrices(matrices_, omega_.dim(), "affine system");
  n_ = static_cast<int>(matrices_.front().rows());
  if (offsets_.size() != matrices_.size()) throw ConstructionError("affine system: need one offset per matrix");
  for (const Vec& a : offsets_) {
    if (a.size() != n_) throw ConstructionError("affine system: offset length differs from state dimension");
    if (!a.allFinite()) throw ConstructionError("affine system: non-finite offset entry");
  }
}

Mat AffineSystem::linear_part(const Vec& u) const {
  Mat a = matrices_[0];
  for (int i = 0; i < control_dim(); ++i) a += u[i] * matrices_[i + 1];
  return a;
}

Vec AffineSystem::offset(const Vec& u) const {
  Vec a = offsets_[0];
  for (int i = 0; i < control_dim(); ++i) a += u[i] * offsets_[i + 1];
  return a;
}

bool AffineSystem::is_homogeneous() const {
  for (const Vec& a : offsets_) {
    if (!a.isZero(0.0)) return false;
  }
  return true;
}

BilinearSystem::BilinearSystem(std::vector<Mat> matrices, ControlRange omega)
    : d_(0), matrices_(std::move(matrices)), omega_(std::move(omega)) {
  check_matrices(matrices_, omega_.dim(), "bilinear system");
  d_ = static_cast<int>(matrices_.front().rows());
}

Mat BilinearSystem::matrix(const Vec& u) const {
  Mat a = matrices_[0];
  for (int i = 0; i < control_dim(); ++i) a += u[i] * matrices_[i + 1];
  return a;
}

ExtendedBilinearSystem::ExtendedBilinearSystem(BilinearSystem lifted) : lifted_(std::move(lifted)) {
  if (lifted_.dim() < 2) throw ConstructionError("extended system: dimension must be at least 2");
  for (const Mat& a : lifted_.matrices()) {
    if (!a.row(a.rows() - 1).isZero(0.0)) {
      throw ConstructionError("extended system: last row of every matrix must vanish");
    }
  }
}

Vec affine_field(const AffineSystem& sys, const Vec& x, const Vec& u) {
  check_call(sys.state_dim(), sys.control_dim(), x, u, sys.omega());
  Vec f = sys.matrices()[0] * x + sys.offsets()[0];
  for (int i = 0; i < sys.control_dim(); ++i) {
    f += u[i] * (sys.matrices()[i + 1] * x + sys.offsets()[i + 1]);
  }
  return f;
}

Vec bilinear_field(const BilinearSystem& sys, const Vec& x, const Vec& u) {
  check_call(sys.dim(), sys.control_dim(), x, u, sys.omega());
  Vec f = sys.matrices()[0] * x;
  for (int i = 0; i < sys.control_dim(); ++i) f += u[i] * (sys.matrices()[i + 1] * x);
  return f;
}

ExtendedBilinearSystem extend(const AffineSystem& sys) {
  const int n = sys.state_dim();
  std::vector<Mat> lifted;
  lifted.reserve(sys.matrices().size());
  for (std::size_t i = 0; i < sys.matrices().size(); ++i) {
    Mat a = Mat::Zero(n + 1, n + 1);
    a.topLeftCorner(n, n) = sys.matrices()[i];
    a.topRightCorner(n, 1) = sys.offsets()[i];
    lifted.push_back(std::move(a));
  }
  return ExtendedBilinearSystem(BilinearSystem(std::move(lifted), sys.omega()));
}

AffineSystem homogeneous_part(const AffineSystem& sys) {
  std::vector<Vec> zeros(sys.offsets().size(), Vec::Zero(sys.state_dim()));
  return AffineSystem(sys.matrices(), std::move(zeros), sys.omega());
}

BilinearSystem homogeneous_bilinear(const AffineSystem& sys) { return BilinearSystem(sys.matrices(), sys.omega()); }

}  // namespace chainctl
