#include "chainctl/covering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

constexpr double kSampleScale = 0.8;
constexpr double kEquatorTol = 1e-12;
constexpr std::array<int, 8> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Other axes of a face, in increasing order.
std::vector<int> face_axes(int axis, int ambient) {
  std::vector<int> out;
  for (int k = 0; k < ambient; ++k) {
    if (k != axis) out.push_back(k);
  }
  return out;
}

Vec project_face_point(int axis, const std::vector<int>& others, const std::vector<double>& c) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(others.size() + 1));
  v[axis] = 1.0;
  for (std::size_t j = 0; j < others.size(); ++j) v[others[j]] = c[j];
  return v / v.norm();
}

}  // namespace

int default_depth_max(int n) {
  if (n <= 2) return 12;
  if (n == 3) return 8;
  return 6;
}

BoxCovering::BoxCovering(const DomainSpec& domain, int depth, const CoveringLimits& limits)
    : domain_(domain), depth_(depth), cells_(0), dim_(domain.ambient_dim()) {
  const int n = domain_.dim();
  const int depth_max = limits.depth_max >= 0 ? limits.depth_max : default_depth_max(n);
  if (depth < 0) throw ConfigError("covering: depth must be nonnegative");
  if (depth > depth_max) {
    throw BudgetError("covering: depth " + std::to_string(depth) + " exceeds the limit " + std::to_string(depth_max));
  }
  cells_ = 1 << depth;
  const double per_face = std::pow(static_cast<double>(cells_), n);
  const double max_boxes = static_cast<double>(limits.max_boxes);

  if (domain_.kind() == DomainKind::EuclideanWindow) {
    if (per_face > max_boxes) {
      throw BudgetError("covering: " + std::to_string(static_cast<long long>(per_face)) +
                        " boxes exceed the budget of " + std::to_string(limits.max_boxes));
    }
    count_ = static_cast<std::size_t>(per_face);
    const Vec width = (domain_.upper() - domain_.lower()) / cells_;
    max_width_ = width.maxCoeff();
    center_.resize(count_ * dim_);
    lo_.resize(count_ * dim_);
    hi_.resize(count_ * dim_);
    for (std::size_t b = 0; b < count_; ++b) {
      std::size_t rem = b;
      for (int k = dim_ - 1; k >= 0; --k) {
        const auto i = static_cast<double>(rem % cells_);
        rem /= cells_;
        const double lo = domain_.lower()[k] + i * width[k];
        const double hi = (i + 1 == cells_) ? domain_.upper()[k] : domain_.lower()[k] + (i + 1) * width[k];
        lo_[b * dim_ + k] = lo;
        hi_[b * dim_ + k] = hi;
        center_[b * dim_ + k] = 0.5 * (lo + hi);
      }
    }
    return;
  }

  const double sphere_boxes = 2.0 * (n + 1) * per_face;
  const double expected = domain_.kind() == DomainKind::Sphere ? sphere_boxes : 0.5 * sphere_boxes;
  if (expected > max_boxes || sphere_boxes > 4.0e9) {
    throw BudgetError("covering: " + std::to_string(static_cast<long long>(expected)) +
                      " boxes exceed the budget of " + std::to_string(limits.max_boxes));
  }
  face_cells_ = static_cast<std::size_t>(per_face);
  sphere_count_ = static_cast<std::size_t>(sphere_boxes);
  local_.assign(sphere_count_, kNoBox);

  const auto keep = [&](const SphereGeometry& g) {
    switch (domain_.kind()) {
      case DomainKind::Hemisphere: {
        const double h = domain_.sign() * g.center[dim_ - 1];
        if (domain_.closed()) return h >= 0.0;
        const bool touches = g.lo[dim_ - 1] <= kEquatorTol && g.hi[dim_ - 1] >= -kEquatorTol;
        return h > 0.0 && !touches;
      }
      default:
        return true;
    }
  };

  for (std::uint64_t sid = 0; sid < sphere_count_; ++sid) {
    const std::uint64_t face_id = sid / face_cells_;
    if (domain_.kind() == DomainKind::Projective && face_id % 2 == 1) continue;
    SphereGeometry g = sphere_geometry(sid);
    if (!keep(g)) continue;
    local_[sid] = static_cast<BoxId>(count_++);
    sids_.push_back(sid);
    for (int k = 0; k < dim_; ++k) {
      center_.push_back(g.center[k]);
      lo_.push_back(g.lo[k]);
      hi_.push_back(g.hi[k]);
      max_width_ = std::max(max_width_, g.hi[k] - g.lo[k]);
    }
  }
  if (count_ > limits.max_boxes) throw BudgetError("covering: box budget exceeded");
  if (domain_.kind() == DomainKind::Projective) {
    for (std::uint64_t sid = 0; sid < sphere_count_; ++sid) {
      if (local_[sid] == kNoBox) {
        const std::uint64_t face_id = sid / face_cells_;
        local_[sid] = local_[(face_id - 1) * face_cells_ + sid % face_cells_];
      }
    }
  }
}

BoxCovering::SphereGeometry BoxCovering::sphere_geometry(std::uint64_t sid) const {
  const int n = domain_.dim();
  const auto face_id = static_cast<int>(sid / face_cells_);
  std::uint64_t rem = sid % face_cells_;
  const int axis = face_id / 2;
  const bool negative = face_id % 2 == 1;
  const std::vector<int> others = face_axes(axis, dim_);

  std::vector<double> clo(n), chi(n), cmid(n);
  for (int j = n - 1; j >= 0; --j) {
    const auto i = static_cast<double>(rem % cells_);
    rem /= cells_;
    clo[j] = -1.0 + 2.0 * i / cells_;
    chi[j] = -1.0 + 2.0 * (i + 1) / cells_;
    cmid[j] = 0.5 * (clo[j] + chi[j]);
  }

  SphereGeometry g;
  g.center = project_face_point(axis, others, cmid);
  g.lo = Vec::Constant(dim_, std::numeric_limits<double>::infinity());
  g.hi = Vec::Constant(dim_, -std::numeric_limits<double>::infinity());

  // Every coordinate of the projected point is monotone in each face
  // coordinate or depends on it through c^2, so the extremes over the cell
  // are attained where each face coordinate is at an endpoint or at zero.
  std::vector<double> c(n);
  const std::uint64_t combos = ipow(3, n);
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::uint64_t r = code;
    bool valid = true;
    for (int j = 0; j < n; ++j) {
      const int pick = static_cast<int>(r % 3);
      r /= 3;
      if (pick == 0) {
        c[j] = clo[j];
      } else if (pick == 1) {
        c[j] = chi[j];
      } else if (clo[j] < 0.0 && chi[j] > 0.0) {
        c[j] = 0.0;
      } else {
        valid = false;
      }
    }
    if (!valid) continue;
    const Vec p = project_face_point(axis, others, c);
    g.lo = g.lo.cwiseMin(p);
    g.hi = g.hi.cwiseMax(p);
  }
  if (negative) {
    g.center = -g.center;
    Vec lo = -g.hi;
    g.hi = -g.lo;
    g.lo = std::move(lo);
  }
  return g;
}

void BoxCovering::check_box(BoxId b) const {
  if (b >= count_) throw InputError("covering: unknown box id " + std::to_string(b));
}

Vec BoxCovering::center(BoxId b) const {
  check_box(b);
  return Eigen::Map<const Vec>(center_.data() + static_cast<std::size_t>(b) * dim_, dim_);
}

Vec BoxCovering::lower(BoxId b) const {
  check_box(b);
  return Eigen::Map<const Vec>(lo_.data() + static_cast<std::size_t>(b) * dim_, dim_);
}

Vec BoxCovering::upper(BoxId b) const {
  check_box(b);
  return Eigen::Map<const Vec>(hi_.data() + static_cast<std::size_t>(b) * dim_, dim_);
}

Vec BoxCovering::radius(BoxId b) const { return 0.5 * (upper(b) - lower(b)); }

double BoxCovering::diameter(BoxId b) const { return (upper(b) - lower(b)).maxCoeff(); }

double BoxCovering::aabb_distance(BoxId b, const Vec& p) const {
  const double* lo = lo_.data() + static_cast<std::size_t>(b) * dim_;
  const double* hi = hi_.data() + static_cast<std::size_t>(b) * dim_;
  double d = 0.0;
  for (int k = 0; k < dim_; ++k) d = std::max({d, lo[k] - p[k], p[k] - hi[k]});
  return d;
}

double BoxCovering::distance(BoxId b, const Vec& p) const {
  check_box(b);
  if (p.size() != dim_) throw InputError("covering: point dimension mismatch");
  const double d = aabb_distance(b, p);
  if (domain_.kind() != DomainKind::Projective) return d;
  return std::min(d, aabb_distance(b, -p));
}

std::uint64_t BoxCovering::sphere_locate(const Vec& p) const {
  int axis = 0;
  for (int k = 1; k < dim_; ++k) {
    if (std::abs(p[k]) > std::abs(p[axis])) axis = k;
  }
  const double t = p[axis];
  if (t < 0.0) {
    const std::uint64_t sid = sphere_locate(-p);
    const std::uint64_t face_id = sid / face_cells_;
    return (face_id ^ 1u) * face_cells_ + sid % face_cells_;
  }
  std::uint64_t idx = 0;
  for (int k = 0; k < dim_; ++k) {
    if (k == axis) continue;
    const double c = p[k] / t;
    auto i = static_cast<long long>(std::floor((c + 1.0) * 0.5 * cells_));
    i = std::clamp<long long>(i, 0, cells_ - 1);
    idx = idx * cells_ + static_cast<std::uint64_t>(i);
  }
  return static_cast<std::uint64_t>(2 * axis) * face_cells_ + idx;
}

BoxId BoxCovering::locate(const Vec& p) const {
  if (p.size() != dim_) throw InputError("covering: point dimension mismatch");
  if (!p.allFinite()) return kNoBox;
  if (domain_.kind() == DomainKind::EuclideanWindow) {
    std::size_t idx = 0;
    for (int k = 0; k < dim_; ++k) {
      const double lo = domain_.lower()[k];
      const double hi = domain_.upper()[k];
      if (p[k] < lo || p[k] > hi) return kNoBox;
      auto i = static_cast<long long>(std::floor((p[k] - lo) / (hi - lo) * cells_));
      i = std::clamp<long long>(i, 0, cells_ - 1);
      idx = idx * cells_ + static_cast<std::size_t>(i);
    }
    return static_cast<BoxId>(idx);
  }
  if (!(p.cwiseAbs().maxCoeff() > 0.0)) return kNoBox;
  const BoxId direct = local_[sphere_locate(p)];
  if (direct != kNoBox) return direct;
  // Hemisphere boundary: accept any kept box whose bounding box holds p.
  std::vector<BoxId> near;
  boxes_within(p, max_width_ * 1e-9, near);
  for (BoxId b : near) {
    if (aabb_distance(b, p) <= 0.0) return b;
  }
  return kNoBox;
}

void BoxCovering::window_candidates(const Vec& p, double r, std::vector<BoxId>& out) const {
  std::vector<long long> first(dim_), last(dim_);
  for (int k = 0; k < dim_; ++k) {
    const double lo = domain_.lower()[k];
    const double w = (domain_.upper()[k] - lo) / cells_;
    const double a = std::floor((p[k] - r - lo) / w) - 1.0;
    const double b = std::ceil((p[k] + r - lo) / w) + 1.0;
    first[k] = static_cast<long long>(std::max(a, 0.0));
    last[k] = static_cast<long long>(std::min(b, static_cast<double>(cells_ - 1)));
    if (first[k] > last[k]) return;
  }
  std::vector<long long> idx(first);
  while (true) {
    std::size_t id = 0;
    for (int k = 0; k < dim_; ++k) id = id * cells_ + static_cast<std::size_t>(idx[k]);
    out.push_back(static_cast<BoxId>(id));
    int k = dim_ - 1;
    while (k >= 0 && ++idx[k] > last[k]) {
      idx[k] = first[k];
      --k;
    }
    if (k < 0) break;
  }
}

void BoxCovering::sphere_candidates(const Vec& p, double r, std::vector<std::uint64_t>& out) const {
  const int n = domain_.dim();
  const double reach = r + max_width_;
  const double t_min = 1.0 / std::sqrt(static_cast<double>(n + 1));
  std::vector<long long> first(n), last(n);
  for (int face_id = 0; face_id < 2 * dim_; ++face_id) {
    const int axis = face_id / 2;
    const double sigma = face_id % 2 == 0 ? 1.0 : -1.0;
    const double qa_lo = sigma > 0 ? p[axis] - reach : -(p[axis] + reach);
    const double qa_hi = sigma > 0 ? p[axis] + reach : -(p[axis] - reach);
    // On the sphere t^2 = 1 - sum of the other squared coordinates.
    double sum_min = 0.0;
    double sum_max = 0.0;
    for (int k = 0; k < dim_; ++k) {
      if (k == axis) continue;
      const double slo = std::max(p[k] - reach, -1.0);
      const double shi = std::min(p[k] + reach, 1.0);
      const double m = (slo <= 0.0 && shi >= 0.0) ? 0.0 : std::min(std::abs(slo), std::abs(shi));
      const double big = std::max(std::abs(slo), std::abs(shi));
      sum_min += m * m;
      sum_max += big * big;
    }
    const double tlo = std::max({qa_lo, t_min, std::sqrt(std::max(0.0, 1.0 - sum_max))});
    const double thi = std::min({qa_hi, 1.0, std::sqrt(std::max(0.0, 1.0 - sum_min))});
    if (tlo > thi) continue;
    bool empty = false;
    int j = 0;
    for (int k = 0; k < dim_ && !empty; ++k) {
      if (k == axis) continue;
      // Face coordinates are s_k / s_axis, so negative faces see -s_k over t.
      const double qlo = std::max(p[k] - reach, -1.0);
      const double qhi = std::min(p[k] + reach, 1.0);
      if (qlo > qhi) {
        empty = true;
        break;
      }
      const double slo = sigma > 0 ? qlo : -qhi;
      const double shi = sigma > 0 ? qhi : -qlo;
      const double cmin = std::min(slo / tlo, slo / thi);
      const double cmax = std::max(shi / tlo, shi / thi);
      const double a = std::floor((cmin + 1.0) * 0.5 * cells_);
      const double b = std::floor((cmax + 1.0) * 0.5 * cells_);
      first[j] = static_cast<long long>(std::clamp(a, 0.0, static_cast<double>(cells_ - 1)));
      last[j] = static_cast<long long>(std::clamp(b, 0.0, static_cast<double>(cells_ - 1)));
      if (cmax < -1.0 || cmin > 1.0) empty = true;
      ++j;
    }
    if (empty) continue;
    std::vector<long long> idx(first);
    const std::uint64_t base = static_cast<std::uint64_t>(face_id) * face_cells_;
    while (true) {
      std::uint64_t c = 0;
      for (int q = 0; q < n; ++q) c = c * cells_ + static_cast<std::uint64_t>(idx[q]);
      out.push_back(base + c);
      int q = n - 1;
      while (q >= 0 && ++idx[q] > last[q]) {
        idx[q] = first[q];
        --q;
      }
      if (q < 0) break;
    }
  }
}

void BoxCovering::collect_within(const Vec& p, double r, std::vector<BoxId>& out,
                                 std::vector<std::uint64_t>& scratch) const {
  if (p.size() != dim_) throw InputError("covering: point dimension mismatch");
  if (!p.allFinite() || !(r > 0.0)) return;
  if (domain_.kind() == DomainKind::EuclideanWindow) {
    const std::size_t start = out.size();
    window_candidates(p, r, out);
    std::size_t keep = start;
    for (std::size_t k = start; k < out.size(); ++k) {
      if (aabb_distance(out[k], p) < r) out[keep++] = out[k];
    }
    out.resize(keep);
    return;
  }
  scratch.clear();
  sphere_candidates(p, r, scratch);
  const bool projective = domain_.kind() == DomainKind::Projective;
  if (projective) sphere_candidates(-p, r, scratch);
  for (std::uint64_t sid : scratch) {
    const BoxId b = local_[sid];
    if (b == kNoBox) continue;
    const double d = projective ? std::min(aabb_distance(b, p), aabb_distance(b, -p)) : aabb_distance(b, p);
    if (d < r) out.push_back(b);
  }
}

void BoxCovering::boxes_within(const Vec& p, double r, std::vector<BoxId>& out) const {
  const std::size_t start = out.size();
  std::vector<std::uint64_t> scratch;
  collect_within(p, r, out, scratch);
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
  out.erase(std::unique(out.begin() + static_cast<std::ptrdiff_t>(start), out.end()), out.end());
}

std::vector<Vec> BoxCovering::samples(BoxId b, int count, std::uint64_t seed) const {
  check_box(b);
  if (count < 1) throw ConfigError("covering: need at least one sample per box");
  const int n = domain_.dim();
  if (n > static_cast<int>(kPrimes.size())) throw ConfigError("covering: dimension too large for Halton samples");

  std::vector<Vec> offsets;
  offsets.reserve(static_cast<std::size_t>(count));
  offsets.push_back(Vec::Zero(n));
  for (std::uint64_t j = 1; static_cast<int>(offsets.size()) < count; ++j) {
    Vec o(n);
    for (int k = 0; k < n; ++k) {
      // Halton point shifted by 1/2 (mod 1) so the first offsets reach the box edges.
      const double h = std::fmod(radical_inverse(seed + j, kPrimes[k]) + 0.5, 1.0);
      o[k] = kSampleScale * (2.0 * h - 1.0);
    }
    offsets.push_back(o);
    if (static_cast<int>(offsets.size()) < count) offsets.push_back(-o);
  }

  std::vector<Vec> out;
  out.reserve(offsets.size());
  if (domain_.kind() == DomainKind::EuclideanWindow) {
    const Vec c = center(b);
    const Vec r = radius(b);
    for (const Vec& o : offsets) out.push_back(c + o.cwiseProduct(r));
    return out;
  }

  const std::uint64_t sid = sids_[b];
  const auto face_id = static_cast<int>(sid / face_cells_);
  const int axis = face_id / 2;
  const bool negative = face_id % 2 == 1;
  const std::vector<int> others = face_axes(axis, dim_);
  std::uint64_t rem = sid % face_cells_;
  std::vector<double> cmid(n);
  for (int j = n - 1; j >= 0; --j) {
    const auto i = static_cast<double>(rem % cells_);
    rem /= cells_;
    cmid[j] = -1.0 + (2.0 * i + 1.0) / cells_;
  }
  const double half = 1.0 / cells_;
  std::vector<double> c(n);
  for (const Vec& o : offsets) {
    for (int j = 0; j < n; ++j) c[j] = cmid[j] + o[j] * half;
    Vec s = project_face_point(axis, others, c);
    if (negative) s = -s;
    out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t BoxCovering::sphere_id(BoxId b) const {
  check_box(b);
  if (!domain_.spherical()) throw InputError("covering: sphere ids exist only on sphere-type domains");
  return sids_[b];
}

BoxId BoxCovering::from_sphere_id(std::uint64_t sid) const {
  if (!domain_.spherical()) throw InputError("covering: sphere ids exist only on sphere-type domains");
  if (sid >= sphere_count_) return kNoBox;
  return local_[sid];
}

int BoxCovering::face(BoxId b) const { return static_cast<int>(sphere_id(b) / face_cells_); }

std::vector<int> BoxCovering::cell(BoxId b) const {
  if (!domain_.spherical()) {
    check_box(b);
    std::vector<int> out(dim_);
    std::size_t rem = b;
    for (int k = dim_ - 1; k >= 0; --k) {
      out[k] = static_cast<int>(rem % cells_);
      rem /= cells_;
    }
    return out;
  }
  std::uint64_t rem = sphere_id(b) % face_cells_;
  const int n = domain_.dim();
  std::vector<int> out(n);
  for (int j = n - 1; j >= 0; --j) {
    out[j] = static_cast<int>(rem % cells_);
    rem /= cells_;
  }
  return out;
}

BoxId BoxCovering::antipode(BoxId b) const {
  const std::uint64_t sid = sphere_id(b);
  const std::uint64_t face_id = sid / face_cells_;
  return local_[(face_id ^ 1u) * face_cells_ + sid % face_cells_];
}

bool BoxCovering::touches_equator(BoxId b) const {
  check_box(b);
  if (!domain_.spherical()) return false;
  const std::size_t at = static_cast<std::size_t>(b) * dim_ + dim_ - 1;
  return lo_[at] <= kEquatorTol && hi_[at] >= -kEquatorTol;
}

double BoxCovering::height(BoxId b) const {
  check_box(b);
  return center_[static_cast<std::size_t>(b) * dim_ + dim_ - 1];
}

}  // namespace chainctl
