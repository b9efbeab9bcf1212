#pragma once

// Parameter and operation interaction networks of a service collection.

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/service_model.hpp"

namespace wsnet {

enum class OperationRule {
  full,    // i -> j when O_i covers every input of j
  partial  // i -> j when O_i covers at least one input of j
};

enum class NetworkKind { parameter, operation };

struct BuildOptions {
  MatcherSpec matcher;
  OperationRule operation_rule = OperationRule::full;
};

/// Side information from a build: parameters the matcher could not use.
struct BuildReport {
  std::size_t excluded_parameters = 0;
  std::vector<std::string> warnings;
};

inline std::string_view to_string(OperationRule r) { return r == OperationRule::full ? "full" : "partial"; }
inline std::string_view to_string(NetworkKind k) { return k == NetworkKind::parameter ? "parameter" : "operation"; }

namespace detail {

inline void require_operations(const Collection& c) {
  if (c.operation_count() == 0) throw EmptyInputError("collection has no operations");
}

inline void note_excluded(BuildReport& report, const Operation& op, const Parameter& p, std::string_view side) {
  ++report.excluded_parameters;
  report.warnings.push_back("operation '" + op.id + "': " + std::string(side) + " parameter '" + p.name +
                            "' has no concept; excluded from semantic matching");
}

}  // namespace detail

/// Nodes are matcher equivalence classes in order of first appearance
/// (inputs before outputs within an operation); each operation links each
/// of its inputs to each of its outputs. Self-loops are dropped.
inline DirectedGraph build_parameter_network(const Collection& c, const BuildOptions& o, BuildReport* report = nullptr) {
  detail::require_operations(c);
  BuildReport local;
  DirectedGraph g;
  for (const auto& service : c.services) {
    for (const auto& op : service.operations) {
      std::vector<NodeId> in, out;
      for (const auto& p : op.inputs) {
        if (o.matcher.can_match(p)) in.push_back(g.add_node(canonical_key(p, o.matcher)));
        else detail::note_excluded(local, op, p, "input");
      }
      for (const auto& p : op.outputs) {
        if (o.matcher.can_match(p)) out.push_back(g.add_node(canonical_key(p, o.matcher)));
        else detail::note_excluded(local, op, p, "output");
      }
      for (NodeId a : in)
        for (NodeId b : out)
          if (a != b) g.add_edge(a, b);
    }
  }
  if (g.empty() && o.matcher.mode == MatchMode::semantic_exact)
    throw AnnotationMissingError("semantic build: no parameter in the collection carries a concept");
  if (report) *report = std::move(local);
  return g;
}

/// Nodes are operation ids in collection order. Parameters the matcher
/// cannot compare never match, so they block full-rule links into their
/// operation. Operations without inputs receive no full-rule links.
inline DirectedGraph build_operation_network(const Collection& c, const BuildOptions& o, BuildReport* report = nullptr) {
  detail::require_operations(c);
  BuildReport local;
  struct Keys {
    std::set<std::string> inputs;
    std::set<std::string> outputs;
    bool inputs_complete = true;  // every input is matchable
    bool has_inputs = false;
  };
  DirectedGraph g;
  std::vector<Keys> keys;
  for (const auto& service : c.services) {
    for (const auto& op : service.operations) {
      if (g.find(op.id)) throw ValidationError("duplicate operation id '" + op.id + "'");
      g.add_node(op.id);
      Keys k;
      k.has_inputs = !op.inputs.empty();
      for (const auto& p : op.inputs) {
        if (o.matcher.can_match(p)) {
          k.inputs.insert(canonical_key(p, o.matcher));
        } else {
          k.inputs_complete = false;
          detail::note_excluded(local, op, p, "input");
        }
      }
      for (const auto& p : op.outputs) {
        if (o.matcher.can_match(p)) k.outputs.insert(canonical_key(p, o.matcher));
        else detail::note_excluded(local, op, p, "output");
      }
      keys.push_back(std::move(k));
    }
  }
  if (o.matcher.mode == MatchMode::semantic_exact &&
      std::all_of(keys.begin(), keys.end(), [](const Keys& k) { return k.inputs.empty() && k.outputs.empty(); }))
    throw AnnotationMissingError("semantic build: no parameter in the collection carries a concept");

  for (NodeId i = 0; i < keys.size(); ++i) {
    const auto& produced = keys[i].outputs;
    if (produced.empty()) continue;
    for (NodeId j = 0; j < keys.size(); ++j) {
      if (i == j) continue;
      const auto& needed = keys[j];
      bool link = false;
      if (o.operation_rule == OperationRule::full) {
        link = needed.has_inputs && needed.inputs_complete &&
               std::includes(produced.begin(), produced.end(), needed.inputs.begin(), needed.inputs.end());
      } else {
        link = std::any_of(needed.inputs.begin(), needed.inputs.end(),
                           [&](const std::string& key) { return produced.contains(key); });
      }
      if (link) g.add_edge(i, j);
    }
  }
  if (report) *report = std::move(local);
  return g;
}

inline DirectedGraph build_network(const Collection& c, NetworkKind kind, const BuildOptions& o,
                                   BuildReport* report = nullptr) {
  return kind == NetworkKind::parameter ? build_parameter_network(c, o, report)
                                        : build_operation_network(c, o, report);
}

}  // namespace wsnet
