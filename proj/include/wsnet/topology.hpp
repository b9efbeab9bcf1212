#pragma once

// Small-world and scale-free diagnostics of a directed network, measured on
// its giant component.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/power_law.hpp"

namespace wsnet {

enum class DegreeKind { in, out, total };

inline std::string_view to_string(DegreeKind k) {
  switch (k) {
    case DegreeKind::in: return "in";
    case DegreeKind::out: return "out";
    case DegreeKind::total: return "total";
  }
  return "total";
}

/// A degree-sequence fit, or the reason it could not be made.
struct DegreeFit {
  std::optional<PowerLawFit> fit;
  std::string note;
};

struct TopologyReport {
  std::size_t network_size = 0;
  std::size_t edge_count = 0;       // directed edges in the giant component
  std::size_t undirected_edges = 0;  // after symmetrization
  std::optional<double> avg_distance;
  std::optional<double> er_distance;
  std::size_t er_runs = 0;
  std::optional<double> transitivity;
  std::optional<double> assortativity;
  DegreeFit in_fit;
  DegreeFit out_fit;
  DegreeFit total_fit;
};

inline std::vector<std::uint64_t> degree_sequence(const DirectedGraph& g, DegreeKind kind) {
  std::vector<std::uint64_t> out;
  out.reserve(g.size());
  for (NodeId v = 0; v < g.size(); ++v) {
    switch (kind) {
      case DegreeKind::in: out.push_back(g.in_degree(v)); break;
      case DegreeKind::out: out.push_back(g.out_degree(v)); break;
      case DegreeKind::total: out.push_back(g.in_degree(v) + g.out_degree(v)); break;
    }
  }
  return out;
}

/// degree -> number of nodes, ascending.
inline std::map<std::uint64_t, std::size_t> degree_histogram(const DirectedGraph& g, DegreeKind kind) {
  std::map<std::uint64_t, std::size_t> h;
  for (auto d : degree_sequence(g, kind)) ++h[d];
  return h;
}

inline void write_degree_histogram_csv(std::ostream& os, const DirectedGraph& g, DegreeKind kind) {
  os << "degree,count\n";
  for (auto [d, c] : degree_histogram(g, kind)) os << d << ',' << c << '\n';
}

namespace detail {

template <class F>
std::optional<double> undefined_as_empty(F&& f) {
  try {
    return f();
  } catch (const UndefinedValueError&) {
    return std::nullopt;
  }
}

inline DegreeFit fit_degrees(const DirectedGraph& g, DegreeKind kind, std::size_t bootstraps, std::uint64_t seed) {
  std::vector<std::uint64_t> positive;
  for (auto d : degree_sequence(g, kind))
    if (d > 0) positive.push_back(d);
  DegreeFit out;
  try {
    out.fit = fit_power_law(positive, bootstraps, seed);
  } catch (const InsufficientDataError& e) {
    out.note = e.what();
  }
  return out;
}

}  // namespace detail

/// Zero degrees are dropped before fitting. Each degree kind uses its own
/// derived seed; the ER baseline uses the giant component's n and
/// undirected m.
inline TopologyReport topology_report(const DirectedGraph& g, std::size_t bootstraps, std::size_t runs,
                                      std::uint64_t seed) {
  const DirectedGraph giant = giant_component(g);
  const UndirectedView u(giant);
  TopologyReport r;
  r.network_size = giant.size();
  r.edge_count = giant.edge_count();
  r.undirected_edges = u.edge_count();
  r.er_runs = runs;
  r.avg_distance = detail::undefined_as_empty([&] { return average_distance(u); });
  if (r.network_size >= 2 && runs > 0)
    r.er_distance = er_baseline_distance(u.size(), u.edge_count(), runs, derive_seed(seed, 0));
  r.transitivity = detail::undefined_as_empty([&] { return transitivity(u); });
  r.assortativity = detail::undefined_as_empty([&] { return degree_assortativity(u); });
  r.in_fit = detail::fit_degrees(giant, DegreeKind::in, bootstraps, derive_seed(seed, 1));
  r.out_fit = detail::fit_degrees(giant, DegreeKind::out, bootstraps, derive_seed(seed, 2));
  r.total_fit = detail::fit_degrees(giant, DegreeKind::total, bootstraps, derive_seed(seed, 3));
  return r;
}

inline nlohmann::ordered_json to_json(const PowerLawFit& f) {
  nlohmann::ordered_json j;
  j["alpha"] = f.alpha;
  j["xmin"] = f.xmin;
  j["ks_stat"] = f.ks_stat;
  j["p_value"] = f.p_value ? nlohmann::ordered_json(*f.p_value) : nlohmann::ordered_json(nullptr);
  j["plausible"] = f.plausible();
  j["n_tail"] = f.n_tail;
  j["n_samples"] = f.n_samples;
  j["bootstraps"] = f.bootstraps;
  return j;
}

inline nlohmann::ordered_json to_json(const DegreeFit& f) {
  if (f.fit) return to_json(*f.fit);
  return nlohmann::ordered_json{{"undefined", f.note}};
}

inline nlohmann::ordered_json to_json(const TopologyReport& r) {
  auto opt = [](const std::optional<double>& x) {
    return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["network_size"] = r.network_size;
  j["edges"] = r.edge_count;
  j["undirected_edges"] = r.undirected_edges;
  j["avg_distance"] = opt(r.avg_distance);
  j["er_distance"] = opt(r.er_distance);
  j["er_method"] = "simulated G(n,m) on giant component n and undirected m, mean over runs";
  j["er_runs"] = r.er_runs;
  j["transitivity"] = opt(r.transitivity);
  j["assortativity"] = opt(r.assortativity);
  if (r.assortativity) j["correlation"] = *r.assortativity < 0 ? "disassortative" : "assortative";
  j["power_law"] = {{"in", to_json(r.in_fit)}, {"out", to_json(r.out_fit)}, {"total", to_json(r.total_fit)}};
  return j;
}

}  // namespace wsnet
