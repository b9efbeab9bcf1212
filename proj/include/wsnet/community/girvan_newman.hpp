#pragma once

#include <vector>

#include "wsnet/community/common.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/modularity.hpp"

namespace wsnet {

struct DendrogramCut {
  std::size_t removals = 0;  // edges removed when this cut was recorded
  std::size_t communities = 0;
  double modularity = 0.0;
};

struct GirvanNewmanResult {
  Partition partition;
  std::vector<Edge> removed;        // in removal order, node ids of the input view
  std::vector<DendrogramCut> cuts;  // one per change in component count, starting with the input
};

namespace detail {

inline std::vector<std::size_t> component_membership(const UndirectedView& u) {
  std::vector<std::size_t> comm(u.size());
  auto comps = connected_components(u);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (NodeId v : comps[c]) comm[v] = c;
  return comm;
}

}  // namespace detail

/// Divisive edge-betweenness clustering: repeatedly remove the edge of
/// highest betweenness (recomputed after every removal; ties go to the
/// smallest (u, v) id pair) and return the component partition of maximal
/// modularity on the original graph. Earlier cuts win modularity ties.
inline GirvanNewmanResult girvan_newman_with_dendrogram(const UndirectedView& u, const DetectParams& dp) {
  dp.validate();
  detail::require_connected(u, "girvan_newman");
  GirvanNewmanResult result;
  std::vector<Edge> remaining(u.edges().begin(), u.edges().end());
  const bool has_edges = !remaining.empty();
  auto score = [&](const std::vector<std::size_t>& comm) { return has_edges ? modularity(u, comm) : 0.0; };

  std::vector<std::size_t> best = detail::component_membership(u);
  double best_q = score(best);
  result.cuts.push_back({0, 1, best_q});
  std::size_t components = 1;

  const std::size_t limit = dp.gn_max_removals.value_or(remaining.size());
  while (!remaining.empty() && result.removed.size() < limit) {
    const auto current = UndirectedView::from_edges(u.size(), remaining);
    const auto eb = edge_betweenness(current);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < eb.size(); ++i)
      if (eb[i] > eb[pick] * (1.0 + 1e-9) + 1e-12) pick = i;
    // current.edges() is sorted identically to `remaining`.
    result.removed.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

    const auto after = UndirectedView::from_edges(u.size(), remaining);
    auto comm = detail::component_membership(after);
    const std::size_t k = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
    if (k == components) continue;
    components = k;
    const double q = score(comm);
    result.cuts.push_back({result.removed.size(), k, q});
    if (q > best_q + 1e-12) {
      best_q = q;
      best = std::move(comm);
    }
  }
  result.partition = detail::to_partition(u, best);
  return result;
}

inline Partition girvan_newman(const UndirectedView& u, const DetectParams& dp) {
  return girvan_newman_with_dendrogram(u, dp).partition;
}

}  // namespace wsnet
