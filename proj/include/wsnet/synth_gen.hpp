#pragma once

// Seeded synthetic service collections with planted domain structure.

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/network_builder.hpp"
#include "wsnet/partition.hpp"
#include "wsnet/random.hpp"
#include "wsnet/service_model.hpp"
#include "wsnet/text.hpp"

namespace wsnet {

struct SynthSpec {
  std::size_t domains = 4;
  std::size_t services_per_domain = 20;
  std::vector<std::size_t> domain_services;  // per-domain override; size must equal domains
  std::size_t ops_min = 1;
  std::size_t ops_max = 3;
  std::size_t params_min = 2;  // per side
  std::size_t params_max = 4;
  std::size_t vocab_per_domain = 30;
  std::size_t shared_vocab = 10;
  double p_shared = 0.05;
  bool twin_semantic = false;
  double synonym_rate = 0.2;
  double zipf_exponent = 1.0;  // term popularity within a vocabulary
  std::uint64_t seed = 1;

  void validate() const {
    auto prob = [](double p, const char* what) {
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must be in [0,1]");
    };
    prob(p_shared, "p_shared");
    prob(synonym_rate, "synonym_rate");
    if (domains == 0 || services_per_domain == 0) throw ValidationError("domains and services_per_domain must be positive");
    if (!domain_services.empty()) {
      if (domain_services.size() != domains) throw ValidationError("domain_services needs one entry per domain");
      for (auto n : domain_services)
        if (n == 0) throw ValidationError("domain_services entries must be positive");
    }
    if (ops_min == 0 || ops_min > ops_max) throw ValidationError("need 1 <= ops_min <= ops_max");
    if (params_min == 0 || params_min > params_max) throw ValidationError("need 1 <= params_min <= params_max");
    if (vocab_per_domain < params_max)
      throw ValidationError("vocab_per_domain (" + std::to_string(vocab_per_domain) +
                            ") is smaller than params_max (" + std::to_string(params_max) + ")");
    if (p_shared > 0.0 && shared_vocab < params_max)
      throw ValidationError("shared_vocab (" + std::to_string(shared_vocab) + ") is smaller than params_max (" +
                            std::to_string(params_max) + ")");
    if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) throw ValidationError("zipf_exponent must be >= 0");
  }
};

struct SynthResult {
  Collection collection;
  std::vector<std::pair<std::string, std::size_t>> service_domain;  // collection order
};

inline std::string domain_term(std::size_t domain, std::size_t i) {
  return "d" + std::to_string(domain) + "_term" + std::to_string(i);
}
inline std::string shared_term(std::size_t i) { return "shared_term" + std::to_string(i); }
inline std::string concept_for(const std::string& term) { return "http://example.org/onto#" + term; }

namespace detail {

class ZipfPicker {
 public:
  ZipfPicker(std::size_t n, double exponent) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cumulative_.push_back(total);
    }
  }
  std::size_t size() const { return cumulative_.size(); }
  std::size_t operator()(Rng& rng) const {
    const double x = uniform01(rng) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

inline std::size_t uniform_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_index(rng, hi - lo + 1));
}

}  // namespace detail

/// Each parameter slot draws from the shared vocabulary with probability
/// p_shared, else from its service's domain vocabulary; terms within a side
/// are distinct. With twin_semantic every parameter carries the concept of
/// its term and a synonym_rate fraction are renamed "<term>_syn".
inline SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng = make_rng(spec.seed);
  const detail::ZipfPicker domain_pick(spec.vocab_per_domain, spec.zipf_exponent);
  const detail::ZipfPicker shared_pick(std::max<std::size_t>(spec.shared_vocab, 1), spec.zipf_exponent);

  SynthResult out;
  out.collection.mode = spec.twin_semantic ? AnnotationMode::both : AnnotationMode::syntactic;
  auto draw_side = [&](std::size_t domain) {
    const std::size_t count = detail::uniform_between(rng, spec.params_min, spec.params_max);
    std::set<std::string> used;
    std::vector<Parameter> side;
    while (side.size() < count) {
      const bool shared = spec.p_shared > 0.0 && bernoulli(rng, spec.p_shared);
      const std::string term = shared ? shared_term(shared_pick(rng)) : domain_term(domain, domain_pick(rng));
      if (!used.insert(term).second) continue;
      if (spec.twin_semantic) {
        const bool synonym = spec.synonym_rate > 0.0 && bernoulli(rng, spec.synonym_rate);
        side.emplace_back(synonym ? term + "_syn" : term, concept_for(term));
      } else {
        side.emplace_back(term);
      }
    }
    return side;
  };

  std::size_t index = 0;
  for (std::size_t d = 0; d < spec.domains; ++d) {
    const std::size_t count = spec.domain_services.empty() ? spec.services_per_domain : spec.domain_services[d];
    for (std::size_t s = 0; s < count; ++s, ++index) {
      ServiceDescription svc;
      svc.name = "service" + std::to_string(index);
      const std::size_t ops = detail::uniform_between(rng, spec.ops_min, spec.ops_max);
      for (std::size_t k = 0; k < ops; ++k) {
        Operation op;
        op.name = "op" + std::to_string(k);
        op.id = svc.name + "#" + op.name;
        op.inputs = draw_side(d);
        op.outputs = draw_side(d);
        svc.operations.push_back(std::move(op));
      }
      out.service_domain.emplace_back(svc.name, d);
      out.collection.services.push_back(std::move(svc));
    }
  }
  return out;
}

inline void write_labels_csv(std::ostream& os, const SynthResult& r) {
  os << "service,domain\n";
  for (const auto& [service, domain] : r.service_domain) os << csv_field(service) << ',' << domain << '\n';
}

/// Planted domain of every operation, keyed by operation id.
inline std::map<std::string, std::size_t> planted_operation_labels(const SynthResult& r) {
  std::map<std::string, std::size_t> domain_of_service(r.service_domain.begin(), r.service_domain.end());
  std::map<std::string, std::size_t> out;
  for (const auto& svc : r.collection.services)
    for (const auto& op : svc.operations) out.emplace(op.id, domain_of_service.at(svc.name));
  return out;
}

/// Vocabulary term behind a generated parameter.
inline std::string term_of(const Parameter& p) {
  if (p.concept_iri) return p.concept_iri->substr(p.concept_iri->rfind('#') + 1);
  constexpr std::string_view kSyn = "_syn";
  if (p.name.size() > kSyn.size() && p.name.ends_with(kSyn)) return p.name.substr(0, p.name.size() - kSyn.size());
  return p.name;
}

inline bool is_shared_term(const std::string& term) { return term.starts_with("shared_term"); }

/// Planted domain of every parameter-network node under `matcher` built
/// from domain vocabulary. Nodes from the shared vocabulary have no planted
/// domain and are omitted.
inline std::map<std::string, std::size_t> planted_parameter_labels(const SynthResult& r, MatcherSpec matcher) {
  std::map<std::string, std::size_t> out;
  for (const auto& svc : r.collection.services)
    for (const auto& op : svc.operations)
      for (const auto* side : {&op.inputs, &op.outputs})
        for (const auto& p : *side) {
          if (!matcher.can_match(p)) continue;
          const std::string term = term_of(p);
          if (is_shared_term(term)) continue;
          out.emplace(canonical_key(p, matcher), std::stoul(term.substr(1, term.find('_') - 1)));
        }
  return out;
}

/// Planted partition over the given node labels that carry a planted
/// domain, in their given order.
inline Partition planted_partition(const std::map<std::string, std::size_t>& planted,
                                   std::span<const std::string> labels) {
  std::vector<std::string> kept;
  std::vector<std::size_t> raw;
  for (const auto& l : labels) {
    if (auto it = planted.find(l); it != planted.end()) {
      kept.push_back(l);
      raw.push_back(it->second);
    }
  }
  if (kept.empty()) throw ValidationError("no node carries a planted label");
  return Partition::from_membership(std::move(kept), raw);
}

}  // namespace wsnet
