#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainctl/scc.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl {

enum class ChainClass { Chain, StrongChainApprox };
enum class AntipodalClass { NotApplicable, One, Two };

std::string to_string(ChainClass c);
std::string to_string(AntipodalClass c);

/// How a strong chain set was tracked through a delta ladder.
struct LadderRecord {
  std::vector<double> deltas;
  /// Size of the matched component at each ladder level.
  std::vector<std::size_t> sizes;
  /// Last two levels agree up to one box diameter.
  bool stabilized = false;
  /// For components that die: the first finer level without a match.
  std::optional<std::size_t> died_at;
};

/// Approximate chain control set: a nontrivial SCC of a transition graph.
/// All sets are sampled approximations at the resolution of their graph.
struct ChainSetResult {
  std::vector<BoxId> boxes;
  ChainClass classification = ChainClass::Chain;
  bool touches_equator = false;
  /// +1 or -1 when every box center lies strictly on one side of the equator.
  int hemisphere_sign = 0;
  AntipodalClass antipodal = AntipodalClass::NotApplicable;
  std::optional<std::size_t> antipodal_partner;
  std::optional<LadderRecord> ladder;

  bool contains(BoxId b) const;
};

/// Nontrivial SCCs of the graph, ordered by smallest box id, with geometry flags.
std::vector<ChainSetResult> chain_control_sets(const TransitionGraph& graph);

/// Same on an explicit digraph whose nodes are boxes of `covering`.
std::vector<ChainSetResult> chain_sets_of(const Digraph& g, const BoxCovering& covering);

/// Fills touches_equator and hemisphere_sign from box geometry.
void tag_geometry(ChainSetResult& set, const BoxCovering& covering);

/// Forward chain-reachable boxes from `from_box`.
std::vector<BoxId> chain_reachable_set(const TransitionGraph& graph, BoxId from_box);

}  // namespace chainctl
