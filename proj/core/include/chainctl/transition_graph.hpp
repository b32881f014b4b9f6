#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "chainctl/covering.hpp"
#include "chainctl/dynamics.hpp"
#include "chainctl/jump.hpp"

namespace chainctl {

/// Immutable directed graph in compressed row form. Successor lists are
/// sorted and free of duplicates.
class Digraph {
 public:
  Digraph() : offsets_{0} {}
  Digraph(std::vector<std::uint64_t> offsets, std::vector<BoxId> targets);
  static Digraph from_adjacency(const std::vector<std::vector<BoxId>>& adjacency);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size(); }
  std::span<const BoxId> successors(BoxId v) const;
  bool has_edge(BoxId from, BoxId to) const;

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<BoxId>& targets() const { return targets_; }

  Digraph induced(const std::vector<bool>& keep, std::vector<BoxId>* old_ids = nullptr) const;
  Digraph reversed() const;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<BoxId> targets_;
};

struct GraphOptions {
  double T = 1.0;
  double step = 1e-3;
  /// 0 selects the default 1 + 2n.
  int samples_per_box = 0;
  std::uint64_t seed = 0;
  /// Extra matching radius in multiples of the source box diameter.
  double inflation = 0.0;
  int threads = 1;
};

/// Vertices of the control range plus 0.
std::vector<Vec> default_control_samples(const ControlRange& omega);

/// Symbolic image of a covering: edge b -> b' when some sample of b, moved by
/// the time-T map of some sampled control, lands within jump(arrival) plus
/// inflation of b', or inside b'. Arrivals that diverge or leave the covered
/// domain add an edge to the out-of-domain sink instead.
class TransitionGraph {
 public:
  TransitionGraph(std::shared_ptr<const BoxCovering> covering, Digraph graph, std::vector<bool> escapes,
                  std::vector<Vec> controls, std::optional<JumpSpec> jump, GraphOptions options);

  const BoxCovering& covering() const { return *covering_; }
  std::shared_ptr<const BoxCovering> covering_ptr() const { return covering_; }
  const Digraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  /// True when b has an edge to the out-of-domain sink.
  bool escapes(BoxId b) const { return escapes_[b]; }
  const std::vector<bool>& escape_flags() const { return escapes_; }
  std::size_t sink_edge_count() const;
  /// Sink edges over all edges, sink edges included.
  double sink_fraction() const;

  const std::vector<Vec>& controls() const { return controls_; }
  const std::optional<JumpSpec>& jump() const { return jump_; }
  const GraphOptions& options() const { return options_; }

 private:
  std::shared_ptr<const BoxCovering> covering_;
  Digraph graph_;
  std::vector<bool> escapes_;
  std::vector<Vec> controls_;
  std::optional<JumpSpec> jump_;
  GraphOptions options_;
};

TransitionGraph build_transition_graph(std::shared_ptr<const BoxCovering> covering, const Dynamics& dynamics,
                                       const std::vector<Vec>& controls, const JumpSpec& jump,
                                       const GraphOptions& options = {});

/// A sample point and control that produce the edge src -> dst.
struct EdgeWitness {
  int sample_index = 0;
  int control_index = 0;
  Vec sample;
  Vec arrival;
};

std::optional<EdgeWitness> find_edge_witness(const TransitionGraph& graph, const Dynamics& dynamics, BoxId src,
                                             BoxId dst);

}  // namespace chainctl
