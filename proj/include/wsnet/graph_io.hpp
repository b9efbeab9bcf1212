#pragma once

// Directed graph persistence: tab-separated edge list and GraphML.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"

namespace wsnet {

namespace detail {

inline void check_label(const std::string& label) {
  if (label.empty() || label.find_first_of("\t\r\n") != std::string::npos)
    throw ValidationError("node label '" + label + "' cannot be written to an edge list");
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// "# directed" header, one "u<TAB>v" line per edge in (source, target) id
/// order, then isolated nodes one label per line.
inline void write_edge_list(std::ostream& os, const DirectedGraph& g) {
  os << "# directed\n";
  for (auto [u, v] : g.edges()) {
    detail::check_label(g.label(u));
    detail::check_label(g.label(v));
    os << g.label(u) << '\t' << g.label(v) << '\n';
  }
  for (NodeId v = 0; v < g.size(); ++v) {
    if (g.in_degree(v) == 0 && g.out_degree(v) == 0) {
      detail::check_label(g.label(v));
      os << g.label(v) << '\n';
    }
  }
}

/// Reads the edge-list format. Lines starting with '#' are comments; a line
/// with a single field declares a node. Repeated edges are ignored.
inline DirectedGraph read_edge_list(std::istream& is) {
  DirectedGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      g.add_node(line);
      continue;
    }
    const std::string u = line.substr(0, tab);
    const std::string v = line.substr(tab + 1);
    if (u.empty() || v.empty() || v.find('\t') != std::string::npos)
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected 'u<TAB>v'");
    if (u == v) throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop on '" + u + "'");
    const NodeId a = g.add_node(u);
    const NodeId b = g.add_node(v);
    g.add_edge(a, b);
  }
  return g;
}

inline void write_graphml(std::ostream& os, const DirectedGraph& g) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (NodeId v = 0; v < g.size(); ++v)
    os << "    <node id=\"n" << v << "\"><data key=\"label\">" << detail::xml_escape(g.label(v)) << "</data></node>\n";
  for (auto [u, v] : g.edges()) os << "    <edge source=\"n" << u << "\" target=\"n" << v << "\"/>\n";
  os << "  </graph>\n</graphml>\n";
}

/// Reads GraphML written by write_graphml or by common tools: node labels
/// come from the node data key whose attr.name is "label", else the node id.
inline DirectedGraph read_graphml(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(is, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("GraphML line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto root = tree.get_child_optional("graphml");
  if (!root) throw ParseError("GraphML: missing <graphml> root");
  std::string label_key;
  for (const auto& [k, node] : *root)
    if (k == "key" && node.get(pt::ptree::path_type("<xmlattr>/attr.name", '/'), "") == "label" && node.get("<xmlattr>.for", "node") == "node")
      label_key = node.get("<xmlattr>.id", "");
  auto graph = root->get_child_optional("graph");
  if (!graph) throw ParseError("GraphML: missing <graph>");

  DirectedGraph g;
  std::map<std::string, NodeId> ids;
  for (const auto& [k, node] : *graph) {
    if (k != "node") continue;
    const std::string id = node.get("<xmlattr>.id", "");
    if (id.empty()) throw ParseError("GraphML: node without id");
    std::string label = id;
    for (const auto& [dk, data] : node)
      if (dk == "data" && !label_key.empty() && data.get("<xmlattr>.key", "") == label_key) label = data.data();
    if (ids.contains(id)) throw ParseError("GraphML: duplicate node id '" + id + "'");
    if (g.find(label)) throw ParseError("GraphML: duplicate node label '" + label + "'");
    ids.emplace(id, g.add_node(label));
  }
  for (const auto& [k, edge] : *graph) {
    if (k != "edge") continue;
    const auto src = ids.find(edge.get("<xmlattr>.source", ""));
    const auto dst = ids.find(edge.get("<xmlattr>.target", ""));
    if (src == ids.end() || dst == ids.end()) throw ParseError("GraphML: edge references an unknown node");
    if (src->second == dst->second) throw ParseError("GraphML: self-loop not allowed");
    g.add_edge(src->second, dst->second);
  }
  return g;
}

/// Same labels and same labelled edges, regardless of node order.
inline bool same_structure(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  for (const auto& l : a.labels())
    if (!b.find(l)) return false;
  for (auto [u, v] : a.edges())
    if (!b.has_edge(b.require(a.label(u)), b.require(a.label(v)))) return false;
  return true;
}

}  // namespace wsnet
