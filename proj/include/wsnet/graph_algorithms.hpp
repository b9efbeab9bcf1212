#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/random.hpp"

namespace wsnet {

using Component = std::vector<NodeId>;

namespace detail {

// Iterative DFS labelling. Components come out ordered by their
// smallest node id, members sorted.
template <class NeighborFn>
std::vector<Component> components_by(std::size_t n, NeighborFn&& for_each_neighbor) {
  std::vector<Component> out;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    Component comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for_each_neighbor(v, [&](NodeId w) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

inline std::vector<std::size_t> bfs_distances(const UndirectedView& u, NodeId source) {
  std::vector<std::size_t> dist(u.size(), kUnreached);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : u.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Components ignoring edge direction.
inline std::vector<Component> weakly_connected_components(const DirectedGraph& g) {
  return detail::components_by(g.size(), [&](NodeId v, auto&& visit) {
    for (NodeId w : g.successors(v)) visit(w);
    for (NodeId w : g.predecessors(v)) visit(w);
  });
}

inline std::vector<Component> connected_components(const UndirectedView& u) {
  return detail::components_by(u.size(), [&](NodeId v, auto&& visit) {
    for (NodeId w : u.neighbors(v)) visit(w);
  });
}

/// Index of the largest component; ties go to the component holding the
/// lexicographically smallest label.
template <class LabelFn>
std::size_t largest_component_index(const std::vector<Component>& comps, LabelFn&& label_of) {
  std::size_t best = 0;
  auto min_label = [&](const Component& c) {
    auto it = std::min_element(c.begin(), c.end(),
                               [&](NodeId a, NodeId b) { return label_of(a) < label_of(b); });
    return label_of(*it);
  };
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size() ||
        (comps[i].size() == comps[best].size() && min_label(comps[i]) < min_label(comps[best])))
      best = i;
  }
  return best;
}

/// Induced subgraph on the largest weakly connected component.
inline DirectedGraph giant_component(const DirectedGraph& g) {
  if (g.empty()) throw EmptyInputError("giant_component: graph has no nodes");
  auto comps = weakly_connected_components(g);
  auto best = largest_component_index(comps, [&](NodeId v) -> const std::string& { return g.label(v); });
  return g.induced(comps[best]);
}

inline bool is_connected(const UndirectedView& u) {
  return u.size() > 0 && connected_components(u).size() == 1;
}

/// Mean shortest-path length over all unordered node pairs (BFS from every node).
inline double average_distance(const UndirectedView& u) {
  const std::size_t n = u.size();
  if (n < 2) throw UndefinedValueError("average_distance: fewer than two nodes");
  std::uint64_t total = 0;
  for (NodeId s = 0; s < n; ++s) {
    auto dist = detail::bfs_distances(u, s);
    for (NodeId t = s + 1; t < n; ++t) {
      if (dist[t] == detail::kUnreached)
        throw UndefinedValueError("average_distance: graph is disconnected (infinite distance)");
      total += dist[t];
    }
  }
  return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

/// Uniform random simple undirected graph with exactly n nodes and m edges.
inline UndirectedView random_gnm(std::size_t n, std::size_t m, Rng& rng) {
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > max_edges) throw ValidationError("G(n,m): m exceeds the number of node pairs");
  std::set<Edge> chosen;
  if (m * 2 > max_edges) {
    // Dense case: enumerate pairs and take a random subset.
    std::vector<Edge> all;
    all.reserve(max_edges);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) all.emplace_back(a, b);
    shuffle(std::span<Edge>(all), rng);
    chosen.insert(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    while (chosen.size() < m) {
      NodeId a = uniform_index(rng, n);
      NodeId b = uniform_index(rng, n);
      if (a == b) continue;
      chosen.emplace(std::min(a, b), std::max(a, b));
    }
  }
  std::vector<Edge> edges(chosen.begin(), chosen.end());
  return UndirectedView::from_edges(n, edges);
}

inline UndirectedView largest_connected_subgraph(const UndirectedView& u) {
  auto comps = connected_components(u);
  auto best = largest_component_index(comps, [&](NodeId v) -> const std::string& { return u.label(v); });
  return u.induced(comps[best]);
}

/// Mean over `runs` seeded G(n,m) graphs of the average distance of each
/// graph's giant component.
inline double er_baseline_distance(std::size_t n, std::size_t m, std::size_t runs, std::uint64_t seed) {
  if (n < 2 || m < 1 || runs < 1) throw ValidationError("er_baseline_distance: need n >= 2, m >= 1, runs >= 1");
  if (static_cast<std::uint64_t>(m) > static_cast<std::uint64_t>(n) * (n - 1) / 2)
    throw ValidationError("er_baseline_distance: m exceeds the maximum simple-graph edge count");
  double sum = 0.0;
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng = make_rng(derive_seed(seed, r));
    auto giant = largest_connected_subgraph(random_gnm(n, m, rng));
    sum += average_distance(giant);
  }
  return sum / static_cast<double>(runs);
}

/// 3 x triangles / connected triples (paths of length two).
inline double transitivity(const UndirectedView& u) {
  std::uint64_t triples = 0;
  std::uint64_t closed = 0;  // each triangle seen once per centre vertex
  for (NodeId v = 0; v < u.size(); ++v) {
    const auto nb = u.neighbors(v);
    const std::uint64_t d = nb.size();
    triples += d * (d - 1) / 2;  // d = 0 wraps to 0 * max, still 0
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (u.has_edge(nb[i], nb[j])) ++closed;
  }
  if (triples == 0) throw UndefinedValueError("transitivity: graph has no path of length two");
  return static_cast<double>(closed) / static_cast<double>(triples);
}

/// Pearson correlation of endpoint degrees, each edge counted in both orientations.
inline double degree_assortativity(const UndirectedView& u) {
  if (u.edge_count() == 0) throw UndefinedValueError("degree_assortativity: graph has no edges");
  // Exact integer moments so that zero variance is detected exactly.
  __int128 sx = 0, sxx = 0, sxy = 0;
  for (auto [a, b] : u.edges()) {
    const __int128 da = u.degree(a), db = u.degree(b);
    sx += da + db;
    sxx += da * da + db * db;
    sxy += 2 * da * db;
  }
  const __int128 count = 2 * static_cast<__int128>(u.edge_count());
  const __int128 var_num = count * sxx - sx * sx;
  if (var_num == 0) throw UndefinedValueError("degree_assortativity: zero degree variance over edge endpoints");
  const __int128 cov_num = count * sxy - sx * sx;
  return static_cast<double>(static_cast<long double>(cov_num) / static_cast<long double>(var_num));
}

/// Brandes edge betweenness summed over unordered node pairs. Result is
/// aligned with u.edges().
inline std::vector<double> edge_betweenness(const UndirectedView& u) {
  const std::size_t n = u.size();
  std::vector<double> score(u.edge_count(), 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::size_t> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), detail::kUnreached);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : u.neighbors(v)) {
        if (dist[w] == detail::kUnreached) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : u.neighbors(w)) {
        if (dist[v] + 1 != dist[w]) continue;
        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        score[*u.edge_index(v, w)] += c;
        delta[v] += c;
      }
    }
  }
  for (double& x : score) x /= 2.0;
  return score;
}

}  // namespace wsnet
