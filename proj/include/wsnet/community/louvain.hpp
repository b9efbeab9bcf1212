#pragma once

// Louvain two-phase modularity optimization (local moving, then
// aggregation), resolution 1.

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "wsnet/community/common.hpp"
#include "wsnet/modularity.hpp"
#include "wsnet/random.hpp"

namespace wsnet {

struct LouvainResult {
  Partition partition;
  /// Modularity after each local-moving sweep, across all levels.
  std::vector<double> sweep_modularity;
  std::size_t levels = 0;
};

namespace detail {

struct WeightedGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // no self entries
  std::vector<double> self;    // internal edge weight, counted once
  std::vector<double> degree;  // total degree including 2 * self
  double total_weight = 0.0;   // m

  std::size_t size() const { return adj.size(); }
};

inline WeightedGraph weighted_from(const UndirectedView& u) {
  WeightedGraph g;
  g.adj.resize(u.size());
  g.self.assign(u.size(), 0.0);
  g.degree.assign(u.size(), 0.0);
  for (NodeId v = 0; v < u.size(); ++v) {
    for (NodeId w : u.neighbors(v)) g.adj[v].emplace_back(w, 1.0);
    g.degree[v] = static_cast<double>(u.degree(v));
  }
  g.total_weight = static_cast<double>(u.edge_count());
  return g;
}

inline WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::size_t>& comm, std::size_t k) {
  WeightedGraph h;
  h.adj.resize(k);
  h.self.assign(k, 0.0);
  h.degree.assign(k, 0.0);
  h.total_weight = g.total_weight;
  std::vector<std::map<std::size_t, double>> links(k);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto cv = comm[v];
    h.self[cv] += g.self[v];
    h.degree[cv] += g.degree[v];
    for (auto [w, wt] : g.adj[v]) {
      const auto cw = comm[w];
      if (cv == cw) {
        if (v < w) h.self[cv] += wt;
      } else {
        links[cv][cw] += wt;
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    for (auto [d, wt] : links[c]) h.adj[c].emplace_back(d, wt);
  return h;
}

class LouvainLevel {
 public:
  explicit LouvainLevel(const WeightedGraph& g) : g_(g), comm_(g.size()), in_(g.size()), tot_(g.size()) {
    std::iota(comm_.begin(), comm_.end(), std::size_t{0});
    for (std::size_t v = 0; v < g.size(); ++v) {
      in_[v] = 2.0 * g.self[v];
      tot_[v] = g.degree[v];
    }
  }

  double quality() const {
    const double m2 = 2.0 * g_.total_weight;
    double q = 0.0;
    for (std::size_t c = 0; c < in_.size(); ++c) {
      if (tot_[c] == 0.0 && in_[c] == 0.0) continue;
      q += in_[c] / m2 - (tot_[c] / m2) * (tot_[c] / m2);
    }
    return q;
  }

  /// One sweep over all nodes in `order`. Returns the number of moves.
  std::size_t sweep(const std::vector<std::size_t>& order) {
    const double m2 = 2.0 * g_.total_weight;
    std::size_t moves = 0;
    std::vector<double> link_to(g_.size(), 0.0);
    std::vector<std::size_t> touched;
    for (std::size_t v : order) {
      const std::size_t own = comm_[v];
      touched.clear();
      for (auto [w, wt] : g_.adj[v]) {
        const auto c = comm_[w];
        if (link_to[c] == 0.0) touched.push_back(c);
        link_to[c] += wt;
      }
      // Take v out of its community.
      in_[own] -= 2.0 * link_to[own] + 2.0 * g_.self[v];
      tot_[own] -= g_.degree[v];

      const double kv = g_.degree[v];
      auto gain = [&](std::size_t c) { return link_to[c] - tot_[c] * kv / m2; };
      std::size_t best = own;
      double best_gain = gain(own);
      std::size_t alt = own;
      double alt_gain = -std::numeric_limits<double>::infinity();
      for (auto c : touched) {
        if (c == own) continue;
        const double gc = gain(c);
        if (gc > alt_gain + kEps || (std::abs(gc - alt_gain) <= kEps && c < alt)) {
          alt = c;
          alt_gain = gc;
        }
      }
      // Staying wins ties.
      if (alt != own && alt_gain > best_gain + kEps) {
        best = alt;
        best_gain = alt_gain;
      }
      in_[best] += 2.0 * link_to[best] + 2.0 * g_.self[v];
      tot_[best] += kv;
      if (best != own) {
        comm_[v] = best;
        ++moves;
      }
      for (auto c : touched) link_to[c] = 0.0;
    }
    return moves;
  }

  /// Renumbers communities densely in order of first appearance.
  std::size_t densify(std::vector<std::size_t>& out) const {
    std::vector<std::size_t> remap(g_.size(), kNone);
    std::size_t k = 0;
    out.resize(g_.size());
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (remap[comm_[v]] == kNone) remap[comm_[v]] = k++;
      out[v] = remap[comm_[v]];
    }
    return k;
  }

 private:
  static constexpr double kEps = 1e-12;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const WeightedGraph& g_;
  std::vector<std::size_t> comm_;
  std::vector<double> in_;   // 2 x internal weight per community
  std::vector<double> tot_;  // total degree per community
};

}  // namespace detail

/// Louvain with the per-sweep modularity trace. Node visit order is
/// reshuffled from the seeded generator before every sweep.
inline LouvainResult louvain_with_trace(const UndirectedView& u, const DetectParams& dp) {
  dp.validate();
  detail::require_connected(u, "louvain");
  if (u.edge_count() == 0) throw UndefinedValueError("louvain: graph has no edges");
  Rng rng = make_rng(dp.seed);
  LouvainResult result;

  std::vector<std::size_t> node_comm(u.size());
  std::iota(node_comm.begin(), node_comm.end(), std::size_t{0});
  detail::WeightedGraph g = detail::weighted_from(u);
  result.sweep_modularity.push_back(modularity(u, node_comm));

  while (true) {
    detail::LouvainLevel level(g);
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t level_moves = 0;
    while (true) {
      shuffle(std::span<std::size_t>(order), rng);
      const std::size_t moves = level.sweep(order);
      level_moves += moves;
      if (moves == 0) break;
      result.sweep_modularity.push_back(level.quality());
    }
    ++result.levels;
    if (level_moves == 0) break;
    std::vector<std::size_t> comm;
    const std::size_t k = level.densify(comm);
    for (auto& c : node_comm) c = comm[c];
    g = detail::aggregate(g, comm, k);
  }
  result.partition = detail::to_partition(u, node_comm);
  return result;
}

inline Partition louvain(const UndirectedView& u, const DetectParams& dp) {
  return louvain_with_trace(u, dp).partition;
}

}  // namespace wsnet
