#pragma once

#include <span>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/partition.hpp"

namespace wsnet {

/// Newman-Girvan modularity sum_c [ e_c/m - (d_c/2m)^2 ] for a membership
/// vector indexed like the nodes of `u`.
inline double modularity(const UndirectedView& u, std::span<const CommunityId> membership) {
  if (membership.size() != u.size()) throw ValidationError("modularity: membership does not cover the graph");
  const double m = static_cast<double>(u.edge_count());
  if (u.edge_count() == 0) throw UndefinedValueError("modularity: graph has no edges");
  std::size_t k = 0;
  for (auto c : membership) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), degree(k, 0.0);
  for (auto [a, b] : u.edges())
    if (membership[a] == membership[b]) internal[membership[a]] += 1.0;
  for (NodeId v = 0; v < u.size(); ++v) degree[membership[v]] += static_cast<double>(u.degree(v));
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double share = degree[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

inline double modularity(const UndirectedView& u, const Partition& p) {
  const auto aligned = p.aligned_to(u.labels());
  return modularity(u, aligned);
}

}  // namespace wsnet
