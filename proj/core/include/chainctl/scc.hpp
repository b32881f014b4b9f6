#pragma once

#include <cstdint>
#include <vector>

#include "chainctl/transition_graph.hpp"

namespace chainctl {

struct SccPartition {
  /// Component index of every node.
  std::vector<std::uint32_t> component;
  /// Members of each component, sorted; components ordered by smallest member.
  std::vector<std::vector<BoxId>> members;
};

/// Tarjan's algorithm without recursion.
SccPartition strongly_connected_components(const Digraph& g);

/// A component is nontrivial when it has an internal edge: more than one
/// node, or a self-loop.
bool is_nontrivial(const Digraph& g, const std::vector<BoxId>& members);

/// Nodes reachable from `from` (including `from`), sorted. Throws InputError
/// for an unknown node.
std::vector<BoxId> reachable_set(const Digraph& g, BoxId from);

/// Forward closure of a node set as a mask.
std::vector<bool> reachable_mask(const Digraph& g, const std::vector<BoxId>& from);

}  // namespace chainctl
