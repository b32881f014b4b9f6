#include "chainctl/sphere_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

void require_spherical(const BoxCovering& cov, const char* what) {
  if (!cov.domain().spherical()) throw InputError(std::string(what) + ": sphere-type covering required");
}

double box_equator_gap(const BoxCovering& cov, BoxId b) {
  const double lo = cov.lower(b)[cov.dim() - 1];
  const double hi = cov.upper(b)[cov.dim() - 1];
  if (lo <= 0.0 && hi >= 0.0) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

}  // namespace

AntipodalClass antipodal_classification(const TransitionGraph& sphere_graph, const ChainSetResult& set,
                                        const std::vector<ChainSetResult>& all_sets,
                                        std::optional<std::size_t>* partner) {
  const BoxCovering& cov = sphere_graph.covering();
  require_spherical(cov, "antipodal classification");
  if (partner) partner->reset();
  if (set.boxes.empty()) throw InputError("antipodal classification: empty set");
  const BoxId b = set.boxes.front();
  const BoxId a = cov.antipode(b);
  if (a == kNoBox) throw InputError("antipodal classification: covering is not antipodally closed");
  // By antipodal symmetry of the graph, b -> -b implies -b -> b.
  if (set.contains(a) || reachable_mask(sphere_graph.graph(), {b})[a]) return AntipodalClass::One;
  if (partner) {
    for (std::size_t k = 0; k < all_sets.size(); ++k) {
      if (all_sets[k].contains(a)) {
        *partner = k;
        break;
      }
    }
  }
  return AntipodalClass::Two;
}

void classify_antipodal(const TransitionGraph& sphere_graph, std::vector<ChainSetResult>& sets) {
  for (auto& set : sets) {
    std::optional<std::size_t> partner;
    set.antipodal = antipodal_classification(sphere_graph, set, sets, &partner);
    set.antipodal_partner = partner;
  }
}

std::vector<BoxId> project_boxes(const BoxCovering& sphere, const BoxCovering& projective,
                                 const std::vector<BoxId>& boxes) {
  std::vector<BoxId> out;
  out.reserve(boxes.size());
  for (BoxId b : boxes) out.push_back(projective.from_sphere_id(sphere.sphere_id(b)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TransitionGraph projective_quotient(const TransitionGraph& sphere_graph) {
  const BoxCovering& cov = sphere_graph.covering();
  if (cov.domain().kind() != DomainKind::Sphere) throw InputError("projective quotient: full sphere graph required");
  auto proj = std::make_shared<const BoxCovering>(DomainSpec::projective(cov.domain().dim()), cov.depth());
  std::vector<std::vector<BoxId>> adj(proj->size());
  std::vector<bool> escapes(proj->size(), false);
  const Digraph& g = sphere_graph.graph();
  for (BoxId b = 0; b < cov.size(); ++b) {
    const BoxId p = proj->from_sphere_id(cov.sphere_id(b));
    for (BoxId w : g.successors(b)) adj[p].push_back(proj->from_sphere_id(cov.sphere_id(w)));
    if (sphere_graph.escapes(b)) escapes[p] = true;
  }
  return TransitionGraph(proj, Digraph::from_adjacency(adj), std::move(escapes), sphere_graph.controls(),
                         sphere_graph.jump(), sphere_graph.options());
}

std::vector<EquatorContainment> equator_containment(const TransitionGraph& sphere_graph,
                                                    const std::vector<ChainSetResult>& central,
                                                    const BoxCovering& homogeneous_covering,
                                                    const std::vector<ChainSetResult>& homogeneous_sets) {
  const BoxCovering& cov = sphere_graph.covering();
  require_spherical(cov, "equator containment");
  require_spherical(homogeneous_covering, "equator containment");
  if (homogeneous_covering.dim() + 1 != cov.dim()) throw ConstructionError("equator containment: dimension mismatch");
  const double slack = cov.max_diameter();

  std::vector<EquatorContainment> out;
  for (std::size_t c = 0; c < central.size(); ++c) {
    const ChainSetResult& set = central[c];
    if (!set.touches_equator) continue;
    // Boxes within one diameter of the central set.
    std::vector<bool> near(cov.size(), false);
    std::vector<BoxId> hits;
    for (BoxId b : set.boxes) {
      hits.clear();
      cov.boxes_within(cov.center(b), 0.5 * cov.diameter(b) + slack, hits);
      for (BoxId h : hits) near[h] = true;
    }
    EquatorContainment report;
    report.central_index = c;
    for (std::size_t h = 0; h < homogeneous_sets.size(); ++h) {
      std::size_t inside = 0;
      const auto& hom = homogeneous_sets[h].boxes;
      for (BoxId hb : hom) {
        Vec s = Vec::Zero(cov.dim());
        s.head(homogeneous_covering.dim()) = homogeneous_covering.center(hb);
        const BoxId target = cov.locate(s);
        if (target != kNoBox && near[target]) ++inside;
      }
      if (inside == hom.size() && !hom.empty()) {
        report.contained.push_back(h);
      } else if (inside > 0) {
        report.violations.push_back(h);
      }
    }
    out.push_back(std::move(report));
  }
  return out;
}

HemisphereRestriction hemisphere_restriction(const TransitionGraph& sphere_graph, int sign, bool closed) {
  const BoxCovering& cov = sphere_graph.covering();
  require_spherical(cov, "hemisphere restriction");
  if (sign != 1 && sign != -1) throw InputError("hemisphere restriction: sign must be +1 or -1");
  std::vector<bool> keep(cov.size(), false);
  for (BoxId b = 0; b < cov.size(); ++b) {
    const double h = sign * cov.height(b);
    keep[b] = closed ? h >= 0.0 : (h > 0.0 && !cov.touches_equator(b));
  }
  HemisphereRestriction out;
  out.graph = sphere_graph.graph().induced(keep, &out.kept);
  SccPartition scc = strongly_connected_components(out.graph);
  for (auto& members : scc.members) {
    if (!is_nontrivial(out.graph, members)) continue;
    ChainSetResult r;
    for (BoxId m : members) r.boxes.push_back(out.kept[m]);
    tag_geometry(r, cov);
    out.sets.push_back(std::move(r));
  }
  return out;
}

bool contained_in_equator_band(const BoxCovering& covering, const ChainSetResult& set, double slack) {
  require_spherical(covering, "equator band");
  return std::all_of(set.boxes.begin(), set.boxes.end(),
                     [&](BoxId b) { return box_equator_gap(covering, b) <= slack; });
}

double min_equator_height(const BoxCovering& covering, const ChainSetResult& set) {
  require_spherical(covering, "equator height");
  double m = std::numeric_limits<double>::infinity();
  for (BoxId b : set.boxes) m = std::min(m, box_equator_gap(covering, b));
  return m;
}

}  // namespace chainctl
