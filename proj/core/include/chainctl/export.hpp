#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "chainctl/chain_sets.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl {

/// {"nodes": [{"id", "center", "radius", "face"?}], "edges": [[src, dst], ...], "sink_edges": [id, ...]}
/// Streamed, so large graphs do not need an in-memory JSON tree.
void write_graph_json(std::ostream& os, const TransitionGraph& graph);

/// One row per box: box_id, c1..cd, set_id, classification, touches_equator,
/// hemisphere_sign, antipodal.
void write_chain_sets_csv(std::ostream& os, const BoxCovering& covering, const std::vector<ChainSetResult>& sets);

/// Writes set_<k>.dat with box centers, and for sphere-type coverings also
/// set_<k>_chart.dat with h^{-1} of the centers off the equator. Returns the
/// files written.
std::vector<std::filesystem::path> write_plot_files(const std::filesystem::path& dir, const BoxCovering& covering,
                                                    const std::vector<ChainSetResult>& sets,
                                                    const std::string& prefix = "set");

}  // namespace chainctl
