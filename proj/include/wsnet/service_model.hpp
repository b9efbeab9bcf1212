#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsnet/error.hpp"

namespace wsnet {

/// A datum consumed or produced by an operation. `name` is the syntactic
/// identifier; `concept_iri` the optional semantic annotation.
struct Parameter {
  std::string name;
  std::optional<std::string> concept_iri;

  Parameter() = default;
  explicit Parameter(std::string n, std::optional<std::string> c = std::nullopt)
      : name(std::move(n)), concept_iri(std::move(c)) {
    if (name.empty()) throw ValidationError("parameter name must be non-empty");
    if (concept_iri && concept_iri->empty())
      throw ValidationError("parameter '" + name + "': concept must be non-empty when present");
  }

  bool has_concept() const { return concept_iri.has_value(); }

  friend bool operator==(const Parameter&, const Parameter&) = default;
  friend auto operator<=>(const Parameter&, const Parameter&) = default;
};

struct Operation {
  std::string id;
  std::string name;
  std::vector<Parameter> inputs;
  std::vector<Parameter> outputs;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct ServiceDescription {
  std::string name;
  std::vector<Operation> operations;

  friend bool operator==(const ServiceDescription&, const ServiceDescription&) = default;
};

/// Which annotations a collection carries.
enum class AnnotationMode { syntactic, semantic, both };

struct Collection {
  std::vector<ServiceDescription> services;
  AnnotationMode mode = AnnotationMode::syntactic;

  std::size_t operation_count() const {
    std::size_t n = 0;
    for (const auto& s : services) n += s.operations.size();
    return n;
  }

  friend bool operator==(const Collection&, const Collection&) = default;
};

enum class MatchMode { syntactic_exact, semantic_exact };

/// The parameter-equivalence rule used when building networks.
struct MatcherSpec {
  MatchMode mode = MatchMode::syntactic_exact;

  static constexpr MatcherSpec syntactic() { return {MatchMode::syntactic_exact}; }
  static constexpr MatcherSpec semantic() { return {MatchMode::semantic_exact}; }

  /// True when this matcher can compare `p` at all.
  bool can_match(const Parameter& p) const {
    return mode == MatchMode::syntactic_exact || p.has_concept();
  }

  friend bool operator==(const MatcherSpec&, const MatcherSpec&) = default;
};

inline std::string_view to_string(MatchMode m) {
  return m == MatchMode::syntactic_exact ? "syntactic" : "semantic";
}

inline std::string_view to_string(AnnotationMode m) {
  switch (m) {
    case AnnotationMode::syntactic: return "syntactic";
    case AnnotationMode::semantic: return "semantic";
    case AnnotationMode::both: return "both";
  }
  return "syntactic";
}

namespace detail {
inline const std::string& require_concept(const Parameter& p) {
  if (!p.concept_iri)
    throw AnnotationMissingError("parameter '" + p.name + "' has no concept annotation");
  return *p.concept_iri;
}
}  // namespace detail

/// Equivalence class key: the name (syntactic) or the concept IRI (semantic).
/// Two parameters match iff their keys are equal.
inline const std::string& canonical_key(const Parameter& p, MatcherSpec m) {
  if (m.mode == MatchMode::syntactic_exact) return p.name;
  return detail::require_concept(p);
}

/// Exact matcher: case-sensitive byte equality of names, or identity of concept IRIs.
inline bool match(const Parameter& p, const Parameter& q, MatcherSpec m) {
  if (m.mode == MatchMode::syntactic_exact) return p.name == q.name;
  return detail::require_concept(p) == detail::require_concept(q);
}

}  // namespace wsnet
