#pragma once

// Partition comparison and per-community structural measures.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/modularity.hpp"
#include "wsnet/partition.hpp"
#include "wsnet/power_law.hpp"
#include "wsnet/text.hpp"

namespace wsnet {

/// Normalized mutual information, 2 I(P;Q) / (H(P) + H(Q)). Two
/// single-community partitions score 1; a single community against
/// anything else scores 0.
inline double nmi(const Partition& p, const Partition& q) {
  const auto qm = q.aligned_to(p.labels());
  const auto pm = p.membership();
  const std::size_t n = pm.size();
  if (n == 0) throw ValidationError("nmi: empty partitions");
  const std::size_t kp = p.community_count(), kq = q.community_count();
  if (kp == 1 && kq == 1) return 1.0;
  if (kp == 1 || kq == 1) return 0.0;

  std::map<std::pair<CommunityId, CommunityId>, std::size_t> joint;
  for (std::size_t i = 0; i < n; ++i) ++joint[{pm[i], qm[i]}];
  // Identical up to renaming: every community of p meets exactly one of q.
  if (kp == kq && joint.size() == kp) return 1.0;

  const auto sp = p.sizes(), sq = q.sizes();
  const double dn = static_cast<double>(n);
  auto entropy = [&](const std::vector<std::size_t>& sizes) {
    double h = 0.0;
    for (auto s : sizes) {
      const double f = static_cast<double>(s) / dn;
      h -= f * std::log(f);
    }
    return h;
  };
  double mi = 0.0;
  for (const auto& [cell, count] : joint) {
    const double c = static_cast<double>(count);
    mi += c / dn * std::log(c * dn / (static_cast<double>(sp[cell.first]) * static_cast<double>(sq[cell.second])));
  }
  const double value = 2.0 * mi / (entropy(sp) + entropy(sq));
  return std::clamp(value, 0.0, 1.0);
}

struct CommunityProfile {
  CommunityId id = 0;
  std::size_t size = 0;
  std::size_t internal_edges = 0;
  std::optional<double> scaled_density;  // 2 m_c / (n_c - 1); undefined for singletons
  std::optional<double> hub_dominance;   // max internal degree / (n_c - 1)
  std::optional<double> avg_distance;    // over the largest induced component
  bool connected = true;                 // induced subgraph connected
};

/// One profile per community, in community id order.
inline std::vector<CommunityProfile> community_profiles(const UndirectedView& u, const Partition& p) {
  const auto membership = p.aligned_to(u.labels());
  std::vector<std::vector<NodeId>> groups(p.community_count());
  for (NodeId v = 0; v < u.size(); ++v) groups[membership[v]].push_back(v);

  std::vector<CommunityProfile> out;
  out.reserve(groups.size());
  for (CommunityId c = 0; c < groups.size(); ++c) {
    const UndirectedView sub = u.induced(groups[c]);
    CommunityProfile prof;
    prof.id = c;
    prof.size = sub.size();
    prof.internal_edges = sub.edge_count();
    if (prof.size >= 2) {
      const double denom = static_cast<double>(prof.size - 1);
      std::size_t max_deg = 0;
      for (NodeId v = 0; v < sub.size(); ++v) max_deg = std::max(max_deg, sub.degree(v));
      prof.scaled_density = 2.0 * static_cast<double>(prof.internal_edges) / denom;
      prof.hub_dominance = static_cast<double>(max_deg) / denom;
      prof.connected = is_connected(sub);
      const UndirectedView core = prof.connected ? sub : largest_connected_subgraph(sub);
      if (core.size() >= 2) prof.avg_distance = average_distance(core);
    }
    out.push_back(prof);
  }
  return out;
}

struct SizeDistribution {
  std::vector<std::size_t> sizes;  // descending
  std::optional<PowerLawFit> fit;
  std::string note;                // why no fit was made
};

inline constexpr std::size_t kMinCommunitiesForFit = 10;

inline SizeDistribution size_distribution(const Partition& p, std::size_t bootstraps, std::uint64_t seed) {
  SizeDistribution d;
  d.sizes = p.sizes();
  std::sort(d.sizes.rbegin(), d.sizes.rend());
  if (d.sizes.size() < kMinCommunitiesForFit) {
    d.note = "insufficient data: " + std::to_string(d.sizes.size()) + " communities (need " +
             std::to_string(kMinCommunitiesForFit) + ")";
    return d;
  }
  std::vector<std::uint64_t> samples(d.sizes.begin(), d.sizes.end());
  try {
    d.fit = fit_power_law(samples, bootstraps, seed);
  } catch (const InsufficientDataError& e) {
    d.note = e.what();
  }
  return d;
}

enum class CommunityProperty { size, distance, scaled_density, hub_dominance };

inline std::string_view to_string(CommunityProperty p) {
  switch (p) {
    case CommunityProperty::size: return "size";
    case CommunityProperty::distance: return "distance";
    case CommunityProperty::scaled_density: return "scaled_density";
    case CommunityProperty::hub_dominance: return "hub_dominance";
  }
  return "size";
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("pearson: need two equal-length series of length >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedValueError("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace detail {

/// Property values of the k largest communities, largest first (ties by id).
inline std::vector<double> top_k_property(const UndirectedView& u, const Partition& p, CommunityProperty prop,
                                          std::size_t k) {
  if (p.community_count() < k)
    throw ValidationError("partition has " + std::to_string(p.community_count()) + " communities, need at least " +
                          std::to_string(k));
  auto profiles = community_profiles(u, p);
  std::stable_sort(profiles.begin(), profiles.end(),
                   [](const CommunityProfile& a, const CommunityProfile& b) { return a.size > b.size; });
  std::vector<double> values;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& pr = profiles[i];
    std::optional<double> v;
    switch (prop) {
      case CommunityProperty::size: v = static_cast<double>(pr.size); break;
      case CommunityProperty::distance: v = pr.avg_distance; break;
      case CommunityProperty::scaled_density: v = pr.scaled_density; break;
      case CommunityProperty::hub_dominance: v = pr.hub_dominance; break;
    }
    if (!v)
      throw UndefinedValueError("community " + std::to_string(pr.id) + " has no " + std::string(to_string(prop)) +
                                " (singleton)");
    values.push_back(*v);
  }
  return values;
}

}  // namespace detail

/// Pearson correlation of a community property across two networks, pairing
/// communities by size rank among the k largest of each.
inline double cross_network_correlation(const UndirectedView& ua, const Partition& pa, const UndirectedView& ub,
                                        const Partition& pb, CommunityProperty prop, std::size_t k = 8) {
  if (k < 2) throw ValidationError("cross_network_correlation: k must be at least 2");
  const auto a = detail::top_k_property(ua, pa, prop, k);
  const auto b = detail::top_k_property(ub, pb, prop, k);
  return pearson(a, b);
}

/// Symmetric NMI matrix with unit diagonal.
struct ComparisonMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
};

inline ComparisonMatrix nmi_matrix(const std::vector<std::pair<std::string, Partition>>& named) {
  ComparisonMatrix m;
  const std::size_t k = named.size();
  m.values.assign(k, std::vector<double>(k, 1.0));
  for (const auto& [name, p] : named) m.names.push_back(name);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) m.values[i][j] = m.values[j][i] = nmi(named[i].second, named[j].second);
  return m;
}

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population convention
};

inline Summary summarize(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("summarize: no values");
  Summary s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

struct AlgorithmSummary {
  std::string name;
  std::size_t communities = 0;
  std::optional<double> modularity;
  std::vector<std::size_t> top_sizes;
  std::vector<CommunityProfile> profiles;
};

struct CommunityReport {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::vector<AlgorithmSummary> algorithms;
  ComparisonMatrix nmi;
  Summary counts;
  std::optional<Summary> modularity;
};

inline CommunityReport community_report(const UndirectedView& u,
                                        const std::vector<std::pair<std::string, Partition>>& named,
                                        std::size_t top_k = 10) {
  if (named.empty()) throw ValidationError("community_report: no partitions");
  CommunityReport r;
  r.nodes = u.size();
  r.edges = u.edge_count();
  std::vector<double> counts, qs;
  for (const auto& [name, p] : named) {
    AlgorithmSummary s;
    s.name = name;
    s.communities = p.community_count();
    if (u.edge_count() > 0) {
      s.modularity = modularity(u, p.aligned_to(u.labels()));
      qs.push_back(*s.modularity);
    }
    s.top_sizes = p.sizes();
    std::sort(s.top_sizes.rbegin(), s.top_sizes.rend());
    if (s.top_sizes.size() > top_k) s.top_sizes.resize(top_k);
    s.profiles = community_profiles(u, p);
    counts.push_back(static_cast<double>(s.communities));
    r.algorithms.push_back(std::move(s));
  }
  r.nmi = nmi_matrix(named);
  r.counts = summarize(counts);
  if (!qs.empty()) r.modularity = summarize(qs);
  return r;
}

namespace detail {

inline std::string opt_field(const std::optional<double>& x) { return x ? format_double(*x) : "NA"; }

inline nlohmann::ordered_json opt_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CommunityReport& r) {
  nlohmann::ordered_json j;
  j["nodes"] = r.nodes;
  j["edges"] = r.edges;
  j["stddev_convention"] = "population";
  auto& algos = j["algorithms"] = nlohmann::ordered_json::array();
  for (const auto& a : r.algorithms) {
    nlohmann::ordered_json e;
    e["name"] = a.name;
    e["communities"] = a.communities;
    e["modularity"] = detail::opt_json(a.modularity);
    e["top_sizes"] = a.top_sizes;
    algos.push_back(std::move(e));
  }
  j["community_count"] = {{"mean", r.counts.mean}, {"stddev", r.counts.stddev}};
  if (r.modularity) j["modularity"] = {{"mean", r.modularity->mean}, {"stddev", r.modularity->stddev}};
  j["nmi"] = {{"names", r.nmi.names}, {"matrix", r.nmi.values}};
  return j;
}

inline void write_counts_csv(std::ostream& os, const CommunityReport& r) {
  os << "algorithm,communities\n";
  for (const auto& a : r.algorithms) os << csv_field(a.name) << ',' << a.communities << '\n';
  os << "mean," << format_double(r.counts.mean) << "\nstddev_population," << format_double(r.counts.stddev) << '\n';
}

inline void write_modularity_csv(std::ostream& os, const CommunityReport& r) {
  os << "algorithm,modularity\n";
  for (const auto& a : r.algorithms) os << csv_field(a.name) << ',' << detail::opt_field(a.modularity) << '\n';
  if (r.modularity)
    os << "mean," << format_double(r.modularity->mean) << "\nstddev_population,"
       << format_double(r.modularity->stddev) << '\n';
}

inline void write_nmi_csv(std::ostream& os, const ComparisonMatrix& m) {
  os << "algorithm";
  for (const auto& n : m.names) os << ',' << csv_field(n);
  os << '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    os << csv_field(m.names[i]);
    for (double v : m.values[i]) os << ',' << format_double(v);
    os << '\n';
  }
}

inline void write_sizes_csv(std::ostream& os, const CommunityReport& r) {
  os << "algorithm,rank,size\n";
  for (const auto& a : r.algorithms)
    for (std::size_t i = 0; i < a.top_sizes.size(); ++i)
      os << csv_field(a.name) << ',' << i + 1 << ',' << a.top_sizes[i] << '\n';
}

inline void write_profiles_csv(std::ostream& os, const CommunityReport& r) {
  os << "algorithm,community,size,internal_edges,scaled_density,avg_distance,hub_dominance,connected\n";
  for (const auto& a : r.algorithms)
    for (const auto& p : a.profiles)
      os << csv_field(a.name) << ',' << p.id << ',' << p.size << ',' << p.internal_edges << ','
         << detail::opt_field(p.scaled_density) << ',' << detail::opt_field(p.avg_distance) << ','
         << detail::opt_field(p.hub_dominance) << ',' << (p.connected ? "true" : "false") << '\n';
}

}  // namespace wsnet
