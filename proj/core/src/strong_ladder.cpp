#include "chainctl/strong_ladder.hpp"

#include <algorithm>
#include <iterator>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

std::size_t overlap(const std::vector<BoxId>& a, const std::vector<BoxId>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<BoxId> intersect(const std::vector<BoxId>& a, const std::vector<BoxId>& b) {
  std::vector<BoxId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Every box of `outer` lies within one box diameter of `inner`.
bool within_one_diameter(const BoxCovering& cov, const std::vector<BoxId>& inner, const std::vector<BoxId>& outer) {
  std::vector<bool> near(cov.size(), false);
  std::vector<BoxId> hits;
  const double reach = cov.max_diameter();
  for (BoxId b : inner) {
    hits.clear();
    const Vec c = cov.center(b);
    cov.boxes_within(c, 0.5 * cov.diameter(b) + reach, hits);
    for (BoxId h : hits) near[h] = true;
  }
  return std::all_of(outer.begin(), outer.end(), [&](BoxId b) { return near[b]; });
}

std::optional<std::size_t> best_match(const std::vector<BoxId>& finer, const std::vector<std::vector<BoxId>>& coarse) {
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    if (static_cast<double>(overlap(finer, coarse[k])) > kLadderOverlap * static_cast<double>(finer.size())) {
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace

LadderResult match_ladder(const BoxCovering& covering, std::vector<LadderLevel> levels) {
  LadderResult out;
  const std::size_t L = levels.size();
  std::vector<double> deltas;
  for (const auto& level : levels) deltas.push_back(level.delta);

  // matched[l][k]: some component of level l + 1 was matched into component k of level l.
  std::vector<std::vector<bool>> matched(L);
  for (std::size_t l = 0; l < L; ++l) matched[l].assign(levels[l].components.size(), false);

  if (L > 0) {
    for (const auto& comp : levels[L - 1].components) {
      LadderRecord rec;
      rec.deltas = deltas;
      rec.sizes.assign(L, 0);
      rec.sizes[L - 1] = comp.size();
      std::vector<BoxId> survivor = comp;
      std::vector<BoxId> current = comp;
      std::vector<BoxId> previous;
      bool lineage = true;
      for (std::size_t l = L - 1; l-- > 0;) {
        const auto k = best_match(current, levels[l].components);
        if (!k) {
          lineage = false;
          break;
        }
        matched[l][*k] = true;
        rec.sizes[l] = levels[l].components[*k].size();
        if (l == L - 2) previous = levels[l].components[*k];
        survivor = intersect(survivor, levels[l].components[*k]);
        current = levels[l].components[*k];
      }
      if (L >= 2 && lineage) rec.stabilized = within_one_diameter(covering, comp, previous);
      if (survivor.empty()) continue;
      ChainSetResult r;
      r.boxes = std::move(survivor);
      r.classification = ChainClass::StrongChainApprox;
      r.ladder = std::move(rec);
      tag_geometry(r, covering);
      out.survivors.push_back(std::move(r));
    }
  }

  for (std::size_t l = 0; l + 1 < L; ++l) {
    for (std::size_t k = 0; k < levels[l].components.size(); ++k) {
      if (matched[l][k]) continue;
      ChainSetResult r;
      r.boxes = levels[l].components[k];
      LadderRecord rec;
      rec.deltas = deltas;
      rec.sizes.assign(L, 0);
      rec.sizes[l] = r.boxes.size();
      rec.died_at = l + 1;
      r.ladder = std::move(rec);
      tag_geometry(r, covering);
      out.non_strong.push_back(std::move(r));
    }
  }
  out.levels = std::move(levels);
  return out;
}

LadderResult strong_chain_ladder(std::shared_ptr<const BoxCovering> covering, const Dynamics& dynamics,
                                 WeightKind weight, const std::vector<double>& deltas,
                                 const std::vector<Vec>& controls, const GraphOptions& options) {
  if (deltas.size() < 2) throw ConfigError("strong ladder: need at least two delta values");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0)) throw ConfigError("strong ladder: deltas must be positive");
    if (k > 0 && !(deltas[k] < deltas[k - 1])) throw ConfigError("strong ladder: deltas must be strictly decreasing");
  }
  std::vector<LadderLevel> levels;
  for (double delta : deltas) {
    const TransitionGraph g = build_transition_graph(covering, dynamics, controls, JumpSpec::weighted(delta, weight), options);
    LadderLevel level;
    level.delta = delta;
    level.edge_count = g.edge_count();
    for (auto& set : chain_control_sets(g)) level.components.push_back(std::move(set.boxes));
    levels.push_back(std::move(level));
  }
  return match_ladder(*covering, std::move(levels));
}

}  // namespace chainctl
