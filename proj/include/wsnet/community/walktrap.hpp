#pragma once

// Walktrap: agglomerative clustering on random-walk distances. Every vertex
// carries a unit self-loop for the walk.

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "wsnet/community/common.hpp"
#include "wsnet/modularity.hpp"

namespace wsnet {

struct WalktrapMerge {
  std::size_t a = 0, b = 0;  // merged community ids; the result gets the next id
  double delta_sigma = 0.0;
  double modularity = 0.0;   // after the merge
};

struct WalktrapResult {
  Partition partition;
  std::vector<WalktrapMerge> merges;
  double initial_modularity = 0.0;  // singletons
  std::size_t best_cut = 0;         // number of merges applied in `partition`
};

inline WalktrapResult walktrap_with_dendrogram(const UndirectedView& u, const DetectParams& dp) {
  dp.validate();
  detail::require_connected(u, "walktrap");
  const std::size_t n = u.size();
  const double m = static_cast<double>(u.edge_count());
  WalktrapResult result;
  if (u.edge_count() == 0) {
    result.partition = Partition::singletons(u.labels());
    return result;
  }

  // Rows of P^t scaled by D^-1/2, so that r^2 is a plain squared distance.
  std::vector<double> walk_degree(n);
  for (NodeId v = 0; v < n; ++v) walk_degree[v] = static_cast<double>(u.degree(v)) + 1.0;
  std::vector<std::vector<double>> prob(2 * n);
  std::vector<double> next(n);
  for (NodeId i = 0; i < n; ++i) {
    std::vector<double> x(n, 0.0);
    x[i] = 1.0;
    for (std::size_t step = 0; step < dp.walktrap_t; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (NodeId v = 0; v < n; ++v) {
        if (x[v] == 0.0) continue;
        const double share = x[v] / walk_degree[v];
        next[v] += share;
        for (NodeId w : u.neighbors(v)) next[w] += share;
      }
      x.swap(next);
    }
    for (NodeId k = 0; k < n; ++k) x[k] /= std::sqrt(walk_degree[k]);
    prob[i] = std::move(x);
  }

  std::vector<double> size(2 * n, 0.0), internal(2 * n, 0.0), degree(2 * n, 0.0);
  std::vector<std::map<std::size_t, double>> links(2 * n);  // community -> edges between
  for (NodeId v = 0; v < n; ++v) {
    size[v] = 1.0;
    degree[v] = static_cast<double>(u.degree(v));
    for (NodeId w : u.neighbors(v)) links[v][w] += 1.0;
  }

  auto delta_sigma = [&](std::size_t a, std::size_t b) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = prob[a][k] - prob[b][k];
      r2 += d * d;
    }
    return size[a] * size[b] / (size[a] + size[b]) * r2 / static_cast<double>(n);
  };

  using Candidate = std::tuple<double, std::size_t, std::size_t>;
  std::set<Candidate> queue;
  std::map<std::pair<std::size_t, std::size_t>, double> pending;
  auto push = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const double ds = delta_sigma(a, b);
    queue.emplace(ds, a, b);
    pending[{a, b}] = ds;
  };
  auto drop = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    auto it = pending.find({a, b});
    if (it == pending.end()) return;
    queue.erase({it->second, a, b});
    pending.erase(it);
  };
  for (auto [a, b] : u.edges()) push(a, b);

  double q = 0.0;
  for (NodeId v = 0; v < n; ++v) q -= (degree[v] / (2.0 * m)) * (degree[v] / (2.0 * m));
  result.initial_modularity = q;
  double best_q = q;

  std::size_t next_id = n;
  while (!queue.empty()) {
    auto [ds, a, b] = *queue.begin();
    const std::size_t c = next_id++;
    const double between = links[a].count(b) ? links[a][b] : 0.0;
    for (auto [nb, w] : links[a]) drop(a, nb);
    for (auto [nb, w] : links[b]) drop(b, nb);

    size[c] = size[a] + size[b];
    internal[c] = internal[a] + internal[b] + between;
    degree[c] = degree[a] + degree[b];
    prob[c].assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) prob[c][k] = (size[a] * prob[a][k] + size[b] * prob[b][k]) / size[c];
    for (auto src : {a, b}) {
      for (auto [nb, w] : links[src]) {
        if (nb == a || nb == b) continue;
        links[c][nb] += w;
        links[nb].erase(src);
        links[nb][c] += w;
      }
      links[src].clear();
      prob[src].clear();
      prob[src].shrink_to_fit();
    }
    for (auto [nb, w] : links[c]) push(c, nb);

    q += between / m - 2.0 * (degree[a] / (2.0 * m)) * (degree[b] / (2.0 * m));
    result.merges.push_back({a, b, ds, q});
    if (q > best_q + 1e-12) {
      best_q = q;
      result.best_cut = result.merges.size();
    }
  }

  // Replay the first best_cut merges.
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < result.best_cut; ++i) {
    parent[result.merges[i].a] = n + i;
    parent[result.merges[i].b] = n + i;
  }
  std::vector<std::size_t> membership(n);
  for (NodeId v = 0; v < n; ++v) {
    std::size_t r = v;
    while (parent[r] != r) r = parent[r];
    membership[v] = r;
  }
  result.partition = detail::to_partition(u, membership);
  return result;
}

/// Walktrap with walk length dp.walktrap_t, cut at maximal modularity.
inline Partition walktrap(const UndirectedView& u, const DetectParams& dp) {
  return walktrap_with_dendrogram(u, dp).partition;
}

}  // namespace wsnet
