#pragma once

#include <memory>
#include <vector>

#include "chainctl/chain_sets.hpp"
#include "chainctl/dynamics.hpp"
#include "chainctl/jump.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl {

struct LadderLevel {
  double delta = 0.0;
  std::size_t edge_count = 0;
  std::vector<std::vector<BoxId>> components;
};

struct LadderResult {
  std::vector<LadderLevel> levels;
  /// Components of the finest level, each intersected with its matches on
  /// all coarser levels.
  std::vector<ChainSetResult> survivors;
  /// Coarser components with no finer component matched into them.
  std::vector<ChainSetResult> non_strong;
};

/// Fraction of `finer` that must lie in a coarser component for a match.
inline constexpr double kLadderOverlap = 0.5;

/// Builds one graph per delta with jump weighted(delta, weight) and tracks the
/// nontrivial SCCs from the smallest delta upward. `deltas` must be strictly
/// decreasing with at least two entries.
LadderResult strong_chain_ladder(std::shared_ptr<const BoxCovering> covering, const Dynamics& dynamics,
                                 WeightKind weight, const std::vector<double>& deltas,
                                 const std::vector<Vec>& controls, const GraphOptions& options = {});

/// Ladder matching on precomputed components, coarse level first.
LadderResult match_ladder(const BoxCovering& covering, std::vector<LadderLevel> levels);

}  // namespace chainctl
