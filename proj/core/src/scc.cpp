#include "chainctl/scc.hpp"

#include <algorithm>
#include <limits>

#include "chainctl/errors.hpp"

namespace chainctl {

SccPartition strongly_connected_components(const Digraph& g) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.node_count();
  const auto& offsets = g.offsets();
  const auto& targets = g.targets();

  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<BoxId> stack;
  struct Frame {
    BoxId v;
    std::uint64_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;
  std::uint32_t comp_count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({static_cast<BoxId>(root), offsets[root]});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<BoxId>(root));
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const BoxId v = f.v;
      if (f.edge < offsets[v + 1]) {
        const BoxId w = targets[f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, offsets[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        BoxId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != v);
        ++comp_count;
      }
      call.pop_back();
      if (!call.empty()) {
        const BoxId parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  // Renumber by smallest member; nodes are visited in increasing order.
  std::vector<std::uint32_t> renum(comp_count, kUnset);
  std::uint32_t next = 0;
  SccPartition out;
  out.component.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint32_t& r = renum[comp[v]];
    if (r == kUnset) {
      r = next++;
      out.members.emplace_back();
    }
    out.component[v] = r;
    out.members[r].push_back(static_cast<BoxId>(v));
  }
  return out;
}

bool is_nontrivial(const Digraph& g, const std::vector<BoxId>& members) {
  if (members.size() > 1) return true;
  if (members.empty()) return false;
  return g.has_edge(members.front(), members.front());
}

std::vector<bool> reachable_mask(const Digraph& g, const std::vector<BoxId>& from) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<BoxId> todo;
  for (BoxId v : from) {
    if (v >= g.node_count()) throw InputError("reachability: unknown node");
    if (!seen[v]) {
      seen[v] = true;
      todo.push_back(v);
    }
  }
  while (!todo.empty()) {
    const BoxId v = todo.back();
    todo.pop_back();
    for (BoxId w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<BoxId> reachable_set(const Digraph& g, BoxId from) {
  const std::vector<bool> seen = reachable_mask(g, {from});
  std::vector<BoxId> out;
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (seen[v]) out.push_back(static_cast<BoxId>(v));
  }
  return out;
}

}  // namespace chainctl
