#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/text.hpp"

namespace wsnet {

using CommunityId = std::size_t;

/// Total assignment of node labels to communities 0..k-1, every id used.
/// Labels are held in the order of the graph the partition was computed on.
class Partition {
 public:
  Partition() = default;

  /// Densifies arbitrary raw ids in order of first appearance.
  template <class RawId>
  static Partition from_membership(std::vector<std::string> labels, const std::vector<RawId>& raw) {
    if (labels.size() != raw.size()) throw ValidationError("partition: label/membership size mismatch");
    Partition p;
    std::map<RawId, CommunityId> dense;
    p.membership_.reserve(raw.size());
    for (const auto& r : raw) {
      auto [it, inserted] = dense.try_emplace(r, dense.size());
      p.membership_.push_back(it->second);
    }
    p.count_ = dense.size();
    p.labels_ = std::move(labels);
    for (std::size_t i = 0; i < p.labels_.size(); ++i)
      if (!p.index_.emplace(p.labels_[i], i).second)
        throw ValidationError("partition: node '" + p.labels_[i] + "' assigned twice");
    return p;
  }

  template <class RawId>
  static Partition from_membership(std::span<const std::string> labels, const std::vector<RawId>& raw) {
    return from_membership(std::vector<std::string>(labels.begin(), labels.end()), raw);
  }

  static Partition single_community(std::span<const std::string> labels) {
    return from_membership(labels, std::vector<int>(labels.size(), 0));
  }

  static Partition singletons(std::span<const std::string> labels) {
    std::vector<std::size_t> raw(labels.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = i;
    return from_membership(labels, raw);
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t community_count() const { return count_; }
  std::span<const std::string> labels() const { return labels_; }
  std::span<const CommunityId> membership() const { return membership_; }
  CommunityId community_of(std::size_t i) const { return membership_.at(i); }

  std::optional<CommunityId> community_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return membership_[it->second];
  }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s(count_, 0);
    for (auto c : membership_) ++s[c];
    return s;
  }

  /// Member indices per community, ascending.
  std::vector<std::vector<std::size_t>> members() const {
    std::vector<std::vector<std::size_t>> m(count_);
    for (std::size_t i = 0; i < membership_.size(); ++i) m[membership_[i]].push_back(i);
    return m;
  }

  /// Membership re-expressed in the node order of `labels` (same node set required).
  std::vector<CommunityId> aligned_to(std::span<const std::string> labels) const {
    if (labels.size() != labels_.size()) throw ValidationError("partition covers a different node set");
    std::vector<CommunityId> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
      auto c = community_of(l);
      if (!c) throw ValidationError("partition does not cover node '" + l + "'");
      out.push_back(*c);
    }
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.labels_ == b.labels_ && a.membership_ == b.membership_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<CommunityId> membership_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t count_ = 0;
};

/// The partition seen on a subset of its nodes, in the subset's order.
inline Partition restrict_partition(const Partition& p, std::span<const std::string> labels) {
  std::vector<CommunityId> raw;
  raw.reserve(labels.size());
  for (const auto& l : labels) {
    auto c = p.community_of(l);
    if (!c) throw ValidationError("partition does not cover node '" + l + "'");
    raw.push_back(*c);
  }
  return Partition::from_membership(labels, raw);
}

/// Writes "node,community" CSV with a header row.
inline void write_partition_csv(std::ostream& os, const Partition& p) {
  os << "node,community\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << csv_field(p.labels()[i]) << ',' << p.community_of(i) << '\n';
}

/// Reads a "node,community" CSV (header optional) and validates it against
/// the node set of `graph_labels`: every node exactly once, no strangers.
/// Community ids are densified in the node order of `graph_labels`.
inline Partition read_partition_csv(std::istream& is, std::span<const std::string> graph_labels) {
  std::unordered_map<std::string, std::string> assigned;
  std::vector<std::string> duplicates;
  std::vector<std::string> unknown;
  std::unordered_map<std::string, bool> known;
  for (const auto& l : graph_labels) known.emplace(l, true);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2)
      throw ParseError("partition CSV line " + std::to_string(line_no) + ": expected 2 fields");
    if (line_no == 1 && !is_integer(fields[1])) continue;  // header
    if (!is_integer(fields[1]))
      throw ParseError("partition CSV line " + std::to_string(line_no) + ": community id is not an integer");
    if (!known.contains(fields[0])) {
      unknown.push_back(fields[0]);
      continue;
    }
    if (!assigned.emplace(fields[0], fields[1]).second) duplicates.push_back(fields[0]);
  }
  std::vector<std::string> missing;
  for (const auto& l : graph_labels)
    if (!assigned.contains(l)) missing.push_back(l);
  if (!unknown.empty() || !missing.empty() || !duplicates.empty()) {
    std::ostringstream msg;
    msg << "partition file does not match the graph;";
    if (!missing.empty()) msg << " missing: " << join(missing, ", ") << ';';
    if (!unknown.empty()) msg << " unknown: " << join(unknown, ", ") << ';';
    if (!duplicates.empty()) msg << " duplicated: " << join(duplicates, ", ") << ';';
    throw ValidationError(msg.str());
  }
  std::vector<long long> raw;
  raw.reserve(graph_labels.size());
  for (const auto& l : graph_labels) raw.push_back(std::stoll(assigned.at(l)));
  return Partition::from_membership(graph_labels, raw);
}

inline Partition import_partition(const std::string& path, std::span<const std::string> graph_labels) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open partition file '" + path + "'");
  return read_partition_csv(in, graph_labels);
}

}  // namespace wsnet
