#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "chainctl/domain.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {

using BoxId = std::uint32_t;
inline constexpr BoxId kNoBox = std::numeric_limits<BoxId>::max();

struct CoveringLimits {
  std::size_t max_boxes = 2'000'000;
  /// Negative selects the default: 12 for n <= 2, 8 for n = 3, 6 above.
  int depth_max = -1;
};

int default_depth_max(int n);

/// Fixed-depth box covering of a domain.
///
/// Windows are split into 2^depth cells per axis. Sphere-type domains use the
/// cube-sphere construction: each of the 2(n+1) faces of [-1,1]^{n+1} carries
/// a 2^depth grid whose cells are radially projected onto S^n. Face f has
/// axis f / 2 and sign + for even f. Sphere box ids are f * N^n + cell index.
///
/// Every box stores a center (for sphere domains the projected cell center)
/// and its axis-aligned bounding box. Distances between points and boxes are
/// max-metric distances to that bounding box.
class BoxCovering {
 public:
  BoxCovering(const DomainSpec& domain, int depth, const CoveringLimits& limits = {});

  const DomainSpec& domain() const { return domain_; }
  int depth() const { return depth_; }
  int cells_per_axis() const { return cells_; }
  std::size_t size() const { return count_; }
  /// Coordinate dimension of centers and bounding boxes.
  int dim() const { return dim_; }

  Vec center(BoxId b) const;
  /// Half-widths of the bounding box.
  Vec radius(BoxId b) const;
  Vec lower(BoxId b) const;
  Vec upper(BoxId b) const;
  /// Max-metric diameter of the bounding box.
  double diameter(BoxId b) const;
  double max_diameter() const { return max_width_; }

  /// Max-metric distance from p to the bounding box of b. For projective
  /// coverings the smaller of the distances from p and -p.
  double distance(BoxId b, const Vec& p) const;

  /// Box containing p, or kNoBox when p lies outside the covered domain.
  BoxId locate(const Vec& p) const;

  /// Appends, in ascending order, every box at distance < r from p.
  void boxes_within(const Vec& p, double r, std::vector<BoxId>& out) const;

  /// Same set as boxes_within, appended unsorted and possibly with repeats
  /// (projective coverings). `scratch` is reused between calls.
  void collect_within(const Vec& p, double r, std::vector<BoxId>& out, std::vector<std::uint64_t>& scratch) const;

  /// Sample points of b: the center followed by +/- pairs of Halton offsets
  /// (shifted by 1/2 mod 1) at 0.8 of the half-width. `seed` shifts the Halton index. On sphere
  /// domains samples of antipodal boxes are exact negations of each other.
  std::vector<Vec> samples(BoxId b, int count, std::uint64_t seed = 0) const;

  // Sphere-type coverings.
  std::size_t sphere_size() const { return sphere_count_; }
  std::uint64_t sphere_id(BoxId b) const;
  /// Local id of a sphere box, kNoBox when the covering does not contain it.
  BoxId from_sphere_id(std::uint64_t sid) const;
  int face(BoxId b) const;
  std::vector<int> cell(BoxId b) const;
  /// Antipodal box; kNoBox when it lies outside a hemisphere covering. On a
  /// projective covering every box is its own antipode.
  BoxId antipode(BoxId b) const;
  bool touches_equator(BoxId b) const;
  /// Last coordinate of the center.
  double height(BoxId b) const;

 private:
  struct SphereGeometry {
    Vec center;
    Vec lo;
    Vec hi;
  };

  SphereGeometry sphere_geometry(std::uint64_t sid) const;
  std::uint64_t sphere_locate(const Vec& p) const;
  void sphere_candidates(const Vec& p, double r, std::vector<std::uint64_t>& out) const;
  void window_candidates(const Vec& p, double r, std::vector<BoxId>& out) const;
  double aabb_distance(BoxId b, const Vec& p) const;
  void check_box(BoxId b) const;

  DomainSpec domain_;
  int depth_;
  int cells_;
  int dim_;
  std::size_t count_ = 0;
  std::size_t sphere_count_ = 0;
  std::size_t face_cells_ = 0;
  double max_width_ = 0.0;
  std::vector<double> center_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<std::uint64_t> sids_;
  std::vector<BoxId> local_;
};

}  // namespace chainctl
