#include "chainctl/transition_graph.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "chainctl/errors.hpp"

namespace chainctl {

Digraph::Digraph(std::vector<std::uint64_t> offsets, std::vector<BoxId> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != targets_.size()) {
    throw ConstructionError("digraph: inconsistent offsets");
  }
  const std::size_t n = offsets_.size() - 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw ConstructionError("digraph: offsets must be nondecreasing");
    for (std::uint64_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      if (targets_[e] >= n) throw ConstructionError("digraph: edge target out of range");
      if (e > offsets_[v] && !(targets_[e - 1] < targets_[e])) {
        throw ConstructionError("digraph: successor lists must be sorted and unique");
      }
    }
  }
}

Digraph Digraph::from_adjacency(const std::vector<std::vector<BoxId>>& adjacency) {
  std::vector<std::uint64_t> offsets{0};
  std::vector<BoxId> targets;
  for (const auto& succ : adjacency) {
    std::vector<BoxId> s(succ);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    targets.insert(targets.end(), s.begin(), s.end());
    offsets.push_back(targets.size());
  }
  return Digraph(std::move(offsets), std::move(targets));
}

std::span<const BoxId> Digraph::successors(BoxId v) const {
  if (v >= node_count()) throw InputError("digraph: unknown node");
  return {targets_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

bool Digraph::has_edge(BoxId from, BoxId to) const {
  const auto s = successors(from);
  return std::binary_search(s.begin(), s.end(), to);
}

Digraph Digraph::induced(const std::vector<bool>& keep, std::vector<BoxId>* old_ids) const {
  if (keep.size() != node_count()) throw ConstructionError("digraph: mask size mismatch");
  std::vector<BoxId> renum(node_count(), kNoBox);
  std::vector<BoxId> ids;
  for (std::size_t v = 0; v < node_count(); ++v) {
    if (keep[v]) {
      renum[v] = static_cast<BoxId>(ids.size());
      ids.push_back(static_cast<BoxId>(v));
    }
  }
  std::vector<std::uint64_t> offsets{0};
  std::vector<BoxId> targets;
  for (BoxId v : ids) {
    for (BoxId w : successors(v)) {
      if (renum[w] != kNoBox) targets.push_back(renum[w]);
    }
    offsets.push_back(targets.size());
  }
  if (old_ids) *old_ids = std::move(ids);
  return Digraph(std::move(offsets), std::move(targets));
}

Digraph Digraph::reversed() const {
  const std::size_t n = node_count();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (BoxId t : targets_) ++offsets[t + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<BoxId> targets(targets_.size());
  std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint64_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      targets[fill[targets_[e]]++] = static_cast<BoxId>(v);
    }
  }
  return Digraph(std::move(offsets), std::move(targets));
}

std::vector<Vec> default_control_samples(const ControlRange& omega) {
  std::vector<Vec> out = omega.vertices();
  const Vec zero = Vec::Zero(omega.dim());
  const bool has_zero = std::any_of(out.begin(), out.end(), [&](const Vec& v) { return v == zero; });
  if (!has_zero) out.push_back(zero);
  return out;
}

TransitionGraph::TransitionGraph(std::shared_ptr<const BoxCovering> covering, Digraph graph,
                                 std::vector<bool> escapes, std::vector<Vec> controls,
                                 std::optional<JumpSpec> jump, GraphOptions options)
    : covering_(std::move(covering)),
      graph_(std::move(graph)),
      escapes_(std::move(escapes)),
      controls_(std::move(controls)),
      jump_(jump),
      options_(options) {
  if (!covering_) throw ConstructionError("transition graph: missing covering");
  if (graph_.node_count() != covering_->size() || escapes_.size() != covering_->size()) {
    throw ConstructionError("transition graph: node count does not match the covering");
  }
}

std::size_t TransitionGraph::sink_edge_count() const {
  return static_cast<std::size_t>(std::count(escapes_.begin(), escapes_.end(), true));
}

double TransitionGraph::sink_fraction() const {
  const double sink = static_cast<double>(sink_edge_count());
  const double total = sink + static_cast<double>(edge_count());
  return total > 0.0 ? sink / total : 0.0;
}

namespace {

int resolve_samples(const BoxCovering& cov, const GraphOptions& options) {
  return options.samples_per_box > 0 ? options.samples_per_box : 1 + 2 * cov.domain().dim();
}

void validate(const BoxCovering& cov, const Dynamics& dynamics, const std::vector<Vec>& controls,
              const GraphOptions& options) {
  if (dynamics.state_dim() != cov.dim()) throw ConstructionError("transition graph: dynamics/covering dimension mismatch");
  if (controls.empty()) throw ConfigError("transition graph: need at least one control sample");
  if (!(options.T > 0.0)) throw ConfigError("transition graph: T must be positive");
  if (!(options.step > 0.0)) throw ConfigError("transition graph: step must be positive");
  if (options.inflation < 0.0) throw ConfigError("transition graph: inflation must be nonnegative");
  for (const Vec& u : controls) {
    if (!dynamics.omega().contains(u)) throw ConfigError("transition graph: control sample outside the control range");
  }
}

struct Scratch {
  std::vector<BoxId> hits;
  std::vector<std::uint64_t> candidates;
};

// Targets of one arrival point; returns false when the arrival goes to the sink.
bool arrival_targets(const BoxCovering& cov, const JumpSpec& jump, double extra, const Vec& y,
                     std::vector<BoxId>& out, Scratch& scratch) {
  if (!y.allFinite()) return false;
  cov.collect_within(y, jump(y) + extra, out, scratch.candidates);
  const BoxId home = cov.locate(y);
  if (home == kNoBox) return false;
  out.push_back(home);
  return true;
}

struct Chunk {
  std::vector<std::uint64_t> counts;
  std::vector<BoxId> targets;
  std::vector<bool> escapes;
};

}  // namespace

TransitionGraph build_transition_graph(std::shared_ptr<const BoxCovering> covering, const Dynamics& dynamics,
                                       const std::vector<Vec>& controls, const JumpSpec& jump,
                                       const GraphOptions& options) {
  if (!covering) throw ConstructionError("transition graph: missing covering");
  const BoxCovering& cov = *covering;
  validate(cov, dynamics, controls, options);
  const int samples = resolve_samples(cov, options);

  std::vector<std::unique_ptr<TimeMap>> maps;
  maps.reserve(controls.size());
  for (const Vec& u : controls) maps.push_back(dynamics.time_map(u, options.T, options.step));

  const std::size_t n = cov.size();
  constexpr std::size_t kChunk = 512;
  const std::size_t chunk_count = (n + kChunk - 1) / kChunk;
  std::vector<Chunk> chunks(chunk_count);

  const auto work = [&](std::size_t c, std::vector<BoxId>& stamp) {
    Chunk& out = chunks[c];
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    Scratch scratch;
    std::vector<BoxId> local;
    for (std::size_t b = begin; b < end; ++b) {
      const auto box = static_cast<BoxId>(b);
      const double extra = options.inflation * cov.diameter(box);
      local.clear();
      bool escaped = false;
      for (const Vec& x : cov.samples(box, samples, options.seed)) {
        for (const auto& map : maps) {
          scratch.hits.clear();
          if (!arrival_targets(cov, jump, extra, (*map)(x), scratch.hits, scratch)) escaped = true;
          for (BoxId h : scratch.hits) {
            if (stamp[h] != box) {
              stamp[h] = box;
              local.push_back(h);
            }
          }
        }
      }
      std::sort(local.begin(), local.end());
      out.counts.push_back(local.size());
      out.targets.insert(out.targets.end(), local.begin(), local.end());
      out.escapes.push_back(escaped);
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1 || chunk_count <= 1) {
    std::vector<BoxId> stamp(n, kNoBox);
    for (std::size_t c = 0; c < chunk_count; ++c) work(c, stamp);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          std::vector<BoxId> stamp(n, kNoBox);
          for (std::size_t c = next++; c < chunk_count; c = next++) work(c, stamp);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
          next = chunk_count;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t total = 0;
  for (const Chunk& c : chunks) total += c.targets.size();
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(n + 1);
  std::vector<BoxId> targets;
  targets.reserve(total);
  std::vector<bool> escapes;
  escapes.reserve(n);
  for (Chunk& c : chunks) {
    for (std::uint64_t k : c.counts) offsets.push_back(offsets.back() + k);
    targets.insert(targets.end(), c.targets.begin(), c.targets.end());
    escapes.insert(escapes.end(), c.escapes.begin(), c.escapes.end());
    c = Chunk{};
  }
  return TransitionGraph(std::move(covering), Digraph(std::move(offsets), std::move(targets)), std::move(escapes),
                         controls, jump, options);
}

std::optional<EdgeWitness> find_edge_witness(const TransitionGraph& graph, const Dynamics& dynamics, BoxId src,
                                             BoxId dst) {
  const BoxCovering& cov = graph.covering();
  if (src >= cov.size() || dst >= cov.size()) throw InputError("edge witness: unknown box id");
  if (!graph.jump()) return std::nullopt;
  const GraphOptions& options = graph.options();
  const int samples = resolve_samples(cov, options);
  const double extra = options.inflation * cov.diameter(src);
  const auto xs = cov.samples(src, samples, options.seed);
  std::vector<BoxId> local;
  Scratch scratch;
  for (std::size_t c = 0; c < graph.controls().size(); ++c) {
    const auto map = dynamics.time_map(graph.controls()[c], options.T, options.step);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      local.clear();
      const Vec y = (*map)(xs[i]);
      arrival_targets(cov, *graph.jump(), extra, y, local, scratch);
      if (std::find(local.begin(), local.end(), dst) != local.end()) {
        return EdgeWitness{static_cast<int>(i), static_cast<int>(c), xs[i], y};
      }
    }
  }
  return std::nullopt;
}

}  // namespace chainctl
