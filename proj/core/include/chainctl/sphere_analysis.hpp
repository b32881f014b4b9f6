#pragma once

#include <optional>
#include <vector>

#include "chainctl/chain_sets.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl {

/// One-vs-two test of a chain set on a sphere graph: the set is antipodally
/// symmetric ("one") iff a box of it reaches its antipodal box. Otherwise the
/// partner is the set containing the negated boxes. Throws InputError on a
/// covering that is not antipodally closed.
AntipodalClass antipodal_classification(const TransitionGraph& sphere_graph, const ChainSetResult& set,
                                        const std::vector<ChainSetResult>& all_sets,
                                        std::optional<std::size_t>* partner = nullptr);

/// Runs antipodal_classification on every set and stores class and partner.
void classify_antipodal(const TransitionGraph& sphere_graph, std::vector<ChainSetResult>& sets);

/// Graph on the projective covering of the same depth: nodes are antipodal
/// pairs, (p, q) is an edge iff some sphere edge joins representatives.
TransitionGraph projective_quotient(const TransitionGraph& sphere_graph);

/// Projective image of a set of sphere boxes.
std::vector<BoxId> project_boxes(const BoxCovering& sphere, const BoxCovering& projective,
                                 const std::vector<BoxId>& boxes);

struct EquatorContainment {
  std::size_t central_index = 0;
  /// Homogeneous sets all of whose embedded boxes lie within one box
  /// diameter of the central set.
  std::vector<std::size_t> contained;
  /// Homogeneous sets the central set meets only partially.
  std::vector<std::size_t> violations;
};

/// For each central set touching the equator of S^n, tests which chain sets
/// of the homogeneous part (computed on S^{n-1}) it contains after embedding
/// s -> (s, 0).
std::vector<EquatorContainment> equator_containment(const TransitionGraph& sphere_graph,
                                                    const std::vector<ChainSetResult>& central,
                                                    const BoxCovering& homogeneous_covering,
                                                    const std::vector<ChainSetResult>& homogeneous_sets);

struct HemisphereRestriction {
  /// Sphere-graph ids of the kept boxes, ascending; node k of `graph` is kept[k].
  std::vector<BoxId> kept;
  Digraph graph;
  /// Chain sets of the induced graph, in sphere-graph box ids.
  std::vector<ChainSetResult> sets;
};

/// Induced subgraph on sign * height >= 0 (closed) or on boxes with
/// sign * height > 0 that do not touch the equator (open).
HemisphereRestriction hemisphere_restriction(const TransitionGraph& sphere_graph, int sign, bool closed);

/// Every box of the set comes within `slack` of the equator.
bool contained_in_equator_band(const BoxCovering& covering, const ChainSetResult& set, double slack = 0.0);

/// Smallest |s_{n+1}| over the bounding boxes of the set.
double min_equator_height(const BoxCovering& covering, const ChainSetResult& set);

}  // namespace chainctl
