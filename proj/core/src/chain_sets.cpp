#include "chainctl/chain_sets.hpp"

#include <algorithm>

#include "chainctl/errors.hpp"

namespace chainctl {

std::string to_string(ChainClass c) {
  return c == ChainClass::Chain ? "chain" : "strong_chain_approx";
}

std::string to_string(AntipodalClass c) {
  switch (c) {
    case AntipodalClass::One:
      return "one";
    case AntipodalClass::Two:
      return "two";
    case AntipodalClass::NotApplicable:
      break;
  }
  return "n/a";
}

bool ChainSetResult::contains(BoxId b) const { return std::binary_search(boxes.begin(), boxes.end(), b); }

void tag_geometry(ChainSetResult& set, const BoxCovering& covering) {
  set.touches_equator = false;
  set.hemisphere_sign = 0;
  if (!covering.domain().spherical() || set.boxes.empty()) return;
  bool all_pos = true;
  bool all_neg = true;
  for (BoxId b : set.boxes) {
    set.touches_equator = set.touches_equator || covering.touches_equator(b);
    const double h = covering.height(b);
    all_pos = all_pos && h > 0.0;
    all_neg = all_neg && h < 0.0;
  }
  set.hemisphere_sign = all_pos ? 1 : (all_neg ? -1 : 0);
}

std::vector<ChainSetResult> chain_sets_of(const Digraph& g, const BoxCovering& covering) {
  if (g.node_count() != covering.size()) throw ConstructionError("chain sets: graph does not match covering");
  SccPartition scc = strongly_connected_components(g);
  std::vector<ChainSetResult> out;
  for (auto& members : scc.members) {
    if (!is_nontrivial(g, members)) continue;
    ChainSetResult r;
    r.boxes = std::move(members);
    tag_geometry(r, covering);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ChainSetResult> chain_control_sets(const TransitionGraph& graph) {
  return chain_sets_of(graph.graph(), graph.covering());
}

std::vector<BoxId> chain_reachable_set(const TransitionGraph& graph, BoxId from_box) {
  if (from_box >= graph.node_count()) throw InputError("chain reachable set: unknown box id");
  return reachable_set(graph.graph(), from_box);
}

}  // namespace chainctl
