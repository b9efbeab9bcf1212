#pragma once

// Loading service collections: the canonical JSON format (source of truth)
// and a best-effort SAWSDL/WSDL subset.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "wsnet/error.hpp"
#include "wsnet/service_model.hpp"

namespace wsnet {

struct IngestReport {
  std::size_t services_loaded = 0;
  std::size_t operations_loaded = 0;
  std::size_t parameters_total = 0;
  std::vector<std::string> warnings;
};

struct Ingested {
  Collection collection;
  IngestReport report;
};

namespace detail {

inline void count_into(IngestReport& r, const Collection& c) {
  r.services_loaded = c.services.size();
  r.operations_loaded = 0;
  r.parameters_total = 0;
  for (const auto& s : c.services) {
    r.operations_loaded += s.operations.size();
    for (const auto& op : s.operations) r.parameters_total += op.inputs.size() + op.outputs.size();
  }
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string string_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

// Parameters on one side of an operation; duplicates (same name and concept) collapse with a warning.
inline std::vector<Parameter> parse_params(const nlohmann::json& arr, const std::string& where, IngestReport& report) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Parameter> out;
  std::set<Parameter> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    std::string name = string_field(arr[i], "name", at);
    std::optional<std::string> concept_iri;
    if (auto it = arr[i].find("concept"); it != arr[i].end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError(at + ".concept: expected a string");
      concept_iri = it->get<std::string>();
    }
    Parameter p;
    try {
      p = Parameter(std::move(name), std::move(concept_iri));
    } catch (const ValidationError& e) {
      throw ValidationError(at + ": " + e.what());
    }
    if (!seen.insert(p).second) {
      report.warnings.push_back(at + ": duplicate parameter '" + p.name + "' collapsed");
      continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline AnnotationMode infer_mode(const Collection& c) {
  for (const auto& s : c.services)
    for (const auto& op : s.operations)
      for (const auto* side : {&op.inputs, &op.outputs})
        for (const auto& p : *side)
          if (p.has_concept()) return AnnotationMode::both;
  return AnnotationMode::syntactic;
}

inline void warn_missing_concepts(const Collection& c, IngestReport& report) {
  if (c.mode == AnnotationMode::syntactic) return;
  for (const auto& s : c.services)
    for (const auto& op : s.operations)
      for (const auto* side : {&op.inputs, &op.outputs})
        for (const auto& p : *side)
          if (!p.has_concept())
            report.warnings.push_back("operation '" + op.id + "': parameter '" + p.name +
                                      "' has no concept; it will be excluded from semantic networks");
}

}  // namespace detail

/// Parses the canonical collection document:
/// {"services":[{"name":..,"operations":[{"id","name","inputs":[{"name","concept"?}],"outputs":[..]}]}]}
/// An optional top-level "mode" ("syntactic"|"semantic"|"both") overrides inference.
inline Ingested parse_collection(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("collection document: line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
  Ingested out;
  const auto& services = detail::field(doc, "services", "document");
  if (!services.is_array()) throw ParseError("document.services: expected an array");
  std::set<std::string> ids;
  for (std::size_t si = 0; si < services.size(); ++si) {
    const std::string at = "services[" + std::to_string(si) + "]";
    ServiceDescription service;
    service.name = detail::string_field(services[si], "name", at);
    const auto& ops = detail::field(services[si], "operations", at);
    if (!ops.is_array()) throw ParseError(at + ".operations: expected an array");
    if (ops.empty()) throw ValidationError(at + " ('" + service.name + "'): a service needs at least one operation");
    for (std::size_t oi = 0; oi < ops.size(); ++oi) {
      const std::string oat = at + ".operations[" + std::to_string(oi) + "]";
      Operation op;
      op.id = detail::string_field(ops[oi], "id", oat);
      op.name = detail::string_field(ops[oi], "name", oat);
      if (op.id.empty()) throw ValidationError(oat + ": operation id must be non-empty");
      if (!ids.insert(op.id).second) throw ValidationError(oat + ": duplicate operation id '" + op.id + "'");
      op.inputs = detail::parse_params(detail::field(ops[oi], "inputs", oat), oat + ".inputs", out.report);
      op.outputs = detail::parse_params(detail::field(ops[oi], "outputs", oat), oat + ".outputs", out.report);
      service.operations.push_back(std::move(op));
    }
    out.collection.services.push_back(std::move(service));
  }
  if (auto it = doc.find("mode"); it != doc.end()) {
    const auto m = it->is_string() ? it->get<std::string>() : std::string();
    if (m == "syntactic") out.collection.mode = AnnotationMode::syntactic;
    else if (m == "semantic") out.collection.mode = AnnotationMode::semantic;
    else if (m == "both") out.collection.mode = AnnotationMode::both;
    else throw ParseError("document.mode: expected \"syntactic\", \"semantic\" or \"both\"");
  } else {
    out.collection.mode = detail::infer_mode(out.collection);
  }
  detail::warn_missing_concepts(out.collection, out.report);
  detail::count_into(out.report, out.collection);
  return out;
}

inline nlohmann::json to_json(const Collection& c) {
  auto params = [](const std::vector<Parameter>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : ps) {
      nlohmann::json j = {{"name", p.name}};
      if (p.concept_iri) j["concept"] = *p.concept_iri;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  nlohmann::json services = nlohmann::json::array();
  for (const auto& s : c.services) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : s.operations)
      ops.push_back({{"id", op.id}, {"name", op.name}, {"inputs", params(op.inputs)}, {"outputs", params(op.outputs)}});
    services.push_back({{"name", s.name}, {"operations", std::move(ops)}});
  }
  return {{"mode", std::string(to_string(c.mode))}, {"services", std::move(services)}};
}

/// Canonical serialization (2-space indented JSON, trailing newline).
inline std::string serialize_collection(const Collection& c) { return to_json(c).dump(2) + "\n"; }

inline nlohmann::json to_json(const IngestReport& r) {
  return {{"services_loaded", r.services_loaded},
          {"operations_loaded", r.operations_loaded},
          {"parameters_total", r.parameters_total},
          {"warnings", r.warnings}};
}

// ---------------------------------------------------------------------------
// SAWSDL subset

/// One XML document and the identifier (typically the file stem) used to
/// build unique operation ids.
struct XmlDocument {
  std::string id;
  std::string text;
};

namespace detail {

using boost::property_tree::ptree;

inline std::string_view local_name(std::string_view qname) {
  auto pos = qname.rfind(':');
  return pos == std::string_view::npos ? qname : qname.substr(pos + 1);
}

inline std::optional<std::string> attribute(const ptree& node, std::string_view local) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  for (const auto& [k, v] : *attrs)
    if (local_name(k) == local) return v.data();
  return std::nullopt;
}

// Depth-first visit of every element (attribute/comment pseudo-nodes skipped).
template <class Fn>
void visit_elements(const ptree& node, Fn&& fn) {
  for (const auto& [k, child] : node) {
    if (k == "<xmlattr>" || k == "<xmlcomment>" || k == "<xmltext>") continue;
    fn(std::string_view(k), child);
    visit_elements(child, fn);
  }
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct SawsdlContext {
  std::map<std::string, const ptree*> messages;  // local name -> message element
  std::map<std::string, const ptree*> elements;  // schema element declarations by name
  const std::string* doc_id = nullptr;
  IngestReport* report = nullptr;
};

inline std::optional<std::string> concept_of(const ptree& node, const SawsdlContext& ctx, const std::string& what) {
  auto ref = attribute(node, "modelReference");
  if (!ref) return std::nullopt;
  auto iris = split_ws(*ref);
  if (iris.empty()) return std::nullopt;
  if (iris.size() > 1)
    ctx.report->warnings.push_back(*ctx.doc_id + ": " + what + ": " + std::to_string(iris.size() - 1) +
                                   " additional modelReference IRI(s) ignored, kept '" + iris.front() + "'");
  return iris.front();
}

inline void add_param(std::vector<Parameter>& side, Parameter p, const SawsdlContext& ctx) {
  if (std::find(side.begin(), side.end(), p) != side.end()) return;
  if (!p.concept_iri)
    ctx.report->warnings.push_back(*ctx.doc_id + ": parameter '" + p.name + "' has no modelReference annotation");
  side.push_back(std::move(p));
}

inline void push_unique(std::vector<Parameter>& side, Parameter p) {
  if (std::find(side.begin(), side.end(), p) == side.end()) side.push_back(std::move(p));
}

// Parameters of an operation's input or output element.
inline std::vector<Parameter> io_params(const ptree& io, const SawsdlContext& ctx) {
  std::vector<Parameter> out;
  if (auto msg = attribute(io, "message")) {  // WSDL 1.1: message parts
    auto it = ctx.messages.find(std::string(local_name(*msg)));
    if (it == ctx.messages.end()) {
      ctx.report->warnings.push_back(*ctx.doc_id + ": message '" + *msg + "' not found");
      return out;
    }
    visit_elements(*it->second, [&](std::string_view k, const ptree& part) {
      if (local_name(k) != "part") return;
      auto name = attribute(part, "name");
      auto element = attribute(part, "element");
      if (!name && element) name = std::string(local_name(*element));
      if (!name || name->empty()) return;
      auto concept_iri = concept_of(part, ctx, "part '" + *name + "'");
      if (!concept_iri && element) {
        auto e = ctx.elements.find(std::string(local_name(*element)));
        if (e != ctx.elements.end()) concept_iri = concept_of(*e->second, ctx, "element '" + e->first + "'");
      }
      push_unique(out, Parameter(*name, concept_iri));
    });
  } else if (auto element = attribute(io, "element")) {  // WSDL 2.0: element reference
    const std::string name(local_name(*element));
    if (name.empty() || name == "#any" || name == "#none") return out;
    std::optional<std::string> concept_iri = concept_of(io, ctx, "element '" + name + "'");
    if (!concept_iri) {
      auto e = ctx.elements.find(name);
      if (e != ctx.elements.end()) concept_iri = concept_of(*e->second, ctx, "element '" + name + "'");
    }
    push_unique(out, Parameter(name, concept_iri));
  }
  return out;
}

}  // namespace detail

/// Best-effort SAWSDL ingestion. One service per document; operations come
/// from portType/interface operations; parameters from top-level message
/// parts or element declarations; concepts from the first modelReference IRI.
inline Ingested parse_sawsdl(const std::vector<XmlDocument>& docs) {
  namespace pt = boost::property_tree;
  Ingested out;
  std::set<std::string> ids;
  for (const auto& doc : docs) {
    pt::ptree tree;
    try {
      std::istringstream is(doc.text);
      pt::read_xml(is, tree);
    } catch (const pt::xml_parser_error& e) {
      throw ParseError(doc.id + ": line " + std::to_string(e.line()) + ": " + e.message());
    }
    detail::SawsdlContext ctx;
    ctx.doc_id = &doc.id;
    ctx.report = &out.report;
    std::vector<const pt::ptree*> interfaces;
    std::string service_name;
    detail::visit_elements(tree, [&](std::string_view k, const pt::ptree& node) {
      const auto local = detail::local_name(k);
      if (local == "message") {
        if (auto n = detail::attribute(node, "name")) ctx.messages.emplace(*n, &node);
      } else if (local == "element") {
        if (auto n = detail::attribute(node, "name")) ctx.elements.emplace(*n, &node);
      } else if (local == "portType" || local == "interface") {
        interfaces.push_back(&node);
      } else if ((local == "definitions" || local == "description" || local == "service") && service_name.empty()) {
        if (auto n = detail::attribute(node, "name")) service_name = *n;
      }
    });
    if (tree.empty()) throw ParseError(doc.id + ": empty XML document");

    ServiceDescription service;
    service.name = service_name.empty() ? doc.id : service_name;
    for (const auto* iface : interfaces) {
      for (const auto& [k, node] : *iface) {
        if (detail::local_name(k) != "operation") continue;
        auto op_name = detail::attribute(node, "name");
        if (!op_name) {
          out.report.warnings.push_back(doc.id + ": operation without a name skipped");
          continue;
        }
        Operation op;
        op.name = *op_name;
        op.id = doc.id + "#" + *op_name;
        if (!ids.insert(op.id).second) throw ValidationError("duplicate operation id '" + op.id + "'");
        for (const auto& [ck, io] : node) {
          const auto local = detail::local_name(ck);
          auto& side = local == "input" ? op.inputs : op.outputs;
          if (local != "input" && local != "output") continue;
          for (auto& p : detail::io_params(io, ctx)) detail::add_param(side, std::move(p), ctx);
        }
        service.operations.push_back(std::move(op));
      }
    }
    if (service.operations.empty()) {
      out.report.warnings.push_back(doc.id + ": no operations found; document skipped");
      continue;
    }
    out.collection.services.push_back(std::move(service));
  }
  out.collection.mode = detail::infer_mode(out.collection);
  detail::count_into(out.report, out.collection);
  return out;
}

}  // namespace wsnet
