#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsnet/error.hpp"

namespace wsnet {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple directed graph with stable string labels. Node ids follow
/// insertion order; no self-loops, no parallel edges.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Registers `label` if absent; returns its id either way.
  NodeId add_node(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, labels_.size());
    if (inserted) {
      labels_.push_back(label);
      out_.emplace_back();
      in_.emplace_back();
    }
    return it->second;
  }

  /// Inserts u->v. Returns false when the edge already exists.
  bool add_edge(NodeId u, NodeId v) {
    if (u >= size() || v >= size()) throw ValidationError("edge endpoint is not a registered node");
    if (u == v) throw ValidationError("self-loop on '" + labels_[u] + "' not allowed");
    if (!edges_.emplace(u, v).second) return false;
    out_[u].push_back(v);
    in_[v].push_back(u);
    return true;
  }

  /// Registers missing endpoints, then inserts u->v.
  bool add_edge(const std::string& u, const std::string& v) {
    if (u == v) throw ValidationError("self-loop on '" + u + "' not allowed");
    const NodeId a = add_node(u);
    return add_edge(a, add_node(v));
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::span<const std::string> labels() const { return labels_; }

  std::optional<NodeId> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId require(const std::string& label) const {
    auto id = find(label);
    if (!id) throw ValidationError("unknown node '" + label + "'");
    return *id;
  }

  bool has_edge(NodeId u, NodeId v) const { return edges_.contains({u, v}); }

  std::span<const NodeId> successors(NodeId v) const { return out_.at(v); }
  std::span<const NodeId> predecessors(NodeId v) const { return in_.at(v); }
  std::size_t out_degree(NodeId v) const { return out_.at(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_.at(v).size(); }

  /// Edges sorted by (source id, target id).
  const std::set<Edge>& edges() const { return edges_; }

  /// Subgraph induced by `nodes`, keeping their relative id order.
  DirectedGraph induced(std::span<const NodeId> nodes) const {
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    DirectedGraph g;
    std::vector<std::optional<NodeId>> remap(size());
    for (NodeId v : sorted) remap[v] = g.add_node(labels_[v]);
    for (auto [u, v] : edges_)
      if (remap[u] && remap[v]) g.add_edge(*remap[u], *remap[v]);
    return g;
  }

  /// Label-level equality: same node sequence and same labelled edge set.
  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::set<Edge> edges_;
};

/// Symmetrized simple undirected graph over the same node ids as its source.
/// Adjacency lists are sorted; edges are stored once with u < v.
class UndirectedView {
 public:
  UndirectedView() = default;

  explicit UndirectedView(const DirectedGraph& g)
      : labels_(g.labels().begin(), g.labels().end()), adj_(g.size()) {
    std::set<Edge> undirected;
    for (auto [u, v] : g.edges()) undirected.emplace(std::min(u, v), std::max(u, v));
    assign_edges(undirected);
  }

  /// Graph on nodes "0".."n-1" (or the supplied labels) from an edge list.
  static UndirectedView from_edges(std::size_t n, std::span<const Edge> edges,
                                   std::vector<std::string> labels = {}) {
    UndirectedView u;
    if (labels.empty()) {
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw ValidationError("label count does not match node count");
    u.labels_ = std::move(labels);
    u.adj_.assign(n, {});
    std::set<Edge> undirected;
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
      if (a == b) throw ValidationError("self-loop not allowed");
      undirected.emplace(std::min(a, b), std::max(a, b));
    }
    u.assign_edges(undirected);
    return u;
  }

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  std::span<const Edge> edges() const { return edges_; }
  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::span<const std::string> labels() const { return labels_; }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Index of edge {u,v} in edges(), or nullopt.
  std::optional<std::size_t> edge_index(NodeId u, NodeId v) const {
    Edge key{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  /// Subgraph induced by `nodes`; new ids follow the order of `nodes`.
  UndirectedView induced(std::span<const NodeId> nodes) const {
    std::vector<std::optional<NodeId>> remap(size());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      remap[nodes[i]] = i;
      labels.push_back(labels_[nodes[i]]);
    }
    std::vector<Edge> kept;
    for (auto [u, v] : edges_)
      if (remap[u] && remap[v]) kept.emplace_back(*remap[u], *remap[v]);
    return from_edges(nodes.size(), kept, std::move(labels));
  }

 private:
  void assign_edges(const std::set<Edge>& undirected) {
    edges_.assign(undirected.begin(), undirected.end());
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace wsnet
