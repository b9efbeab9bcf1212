#pragma once

// Command-line front end: ingest, build, analyze, detect, compare, report
// and synth. Every run writes manifest.json next to its outputs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wsnet/community_detect.hpp"
#include "wsnet/community_metrics.hpp"
#include "wsnet/error.hpp"
#include "wsnet/graph_io.hpp"
#include "wsnet/ingestion.hpp"
#include "wsnet/network_builder.hpp"
#include "wsnet/synth_gen.hpp"
#include "wsnet/text.hpp"
#include "wsnet/topology.hpp"

namespace wsnet::cli {

inline constexpr const char* kVersion = "1.0.0";

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::string matcher = "syntactic";
  std::string network = "parameter";
  std::string rule = "full";
  std::string algo = "edgebetweenness,louvain,eigenvector,walktrap,labelprop";
  std::uint64_t seed = 1;
  std::size_t bootstraps = 1000;
  std::size_t runs = 10;
  std::size_t top_k = 10;
  std::size_t walktrap_t = 4;
  std::string graph;
  std::string compare_with;
  SynthSpec synth;
  std::string domain_services;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Collects outputs and the manifest for one run.
class Run {
 public:
  Run(std::string command, const Options& o) : out_(o.out) {
    if (out_.empty()) throw ValidationError("--out is required");
    fs::create_directories(out_);
    manifest_["tool"] = "wsnet";
    manifest_["version"] = kVersion;
    manifest_["command"] = std::move(command);
    manifest_["seed"] = o.seed;
    manifest_["parameters"] = ojson::object();
    manifest_["inputs"] = ojson::array();
    manifest_["design"] = {
        {"power_law_alpha", "exact discrete MLE, xmin by minimum KS"},
        {"power_law_p_value", "semiparametric bootstrap, replicas refit"},
        {"er_baseline", "simulated G(n,m), mean of per-run giant-component distance"},
        {"detection_graph", "symmetrized giant component"},
        {"louvain_resolution", 1},
        {"walktrap_t", o.walktrap_t},
        {"nmi_normalization", "arithmetic mean of entropies"},
        {"stddev", "population"},
        {"correlation_alignment", "size rank"},
        {"operation_full_rule_unmatchable_input", "blocks incoming links"}};
    manifest_["outputs"] = ojson::array();
  }

  ojson& parameters() { return manifest_["parameters"]; }

  std::string input(const fs::path& p) {
    std::string text = read_file(p);
    manifest_["inputs"].push_back({{"name", p.filename().string()}, {"fnv1a64", fnv1a_hex(text)}});
    return text;
  }

  void write(const fs::path& rel, const std::string& content) {
    const fs::path full = out_ / rel;
    if (full.has_parent_path()) fs::create_directories(full.parent_path());
    std::ofstream os(full, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + full.string() + "'");
    os << content;
    manifest_["outputs"].push_back({{"name", rel.generic_string()}, {"fnv1a64", fnv1a_hex(content)}});
  }

  template <class F>
  void write_with(const fs::path& rel, F&& f) {
    std::ostringstream os;
    f(os);
    write(rel, os.str());
  }

  void finish() {
    std::ofstream os(out_ / "manifest.json", std::ios::binary);
    os << manifest_.dump(2) << '\n';
  }

 private:
  fs::path out_;
  ojson manifest_;
};

inline bool has_ext(const fs::path& p, std::initializer_list<const char*> exts) {
  std::string e = p.extension().string();
  for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const char* x : exts)
    if (e == x) return true;
  return false;
}

/// JSON collection documents, or SAWSDL files and directories of them.
inline Ingested load_collection(Run& run, const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw ValidationError("--input is required");
  if (inputs.size() == 1 && has_ext(inputs[0], {".json"})) return parse_collection(run.input(inputs[0]));
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p))
        if (e.is_regular_file() && has_ext(e.path(), {".wsdl", ".sawsdl", ".xml"})) files.push_back(e.path());
    } else if (has_ext(p, {".json"})) {
      throw ValidationError("a JSON collection must be the only input");
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no SAWSDL documents found in the inputs");
  std::vector<XmlDocument> docs;
  for (const auto& f : files) docs.push_back({f.stem().string(), run.input(f)});
  return parse_sawsdl(docs);
}

inline DirectedGraph load_graph(Run& run, const std::string& path) {
  if (path.empty()) throw ValidationError("a network file is required");
  std::istringstream is(run.input(path));
  return has_ext(path, {".graphml", ".xml"}) ? read_graphml(is) : read_edge_list(is);
}

inline MatcherSpec parse_matcher(const std::string& s) {
  if (s == "syntactic") return MatcherSpec::syntactic();
  if (s == "semantic") return MatcherSpec::semantic();
  throw ValidationError("unknown matcher '" + s + "'");
}

inline DetectParams detect_params(const Options& o) {
  DetectParams dp;
  dp.seed = o.seed;
  dp.walktrap_t = o.walktrap_t;
  return dp;
}

/// Runs each entry of the algorithm list on `u`; "import:<path>" entries
/// read a partition file instead.
inline std::vector<std::pair<std::string, Partition>> run_algorithms(Run& run, const UndirectedView& u,
                                                                     const Options& o) {
  std::vector<std::pair<std::string, Partition>> out;
  for (const auto& raw : split(o.algo, ',')) {
    if (raw.empty()) continue;
    if (raw.starts_with("import:")) {
      const fs::path path = raw.substr(7);
      std::istringstream is(run.input(path));
      out.emplace_back("import_" + path.stem().string(), read_partition_csv(is, u.labels()));
      continue;
    }
    auto a = parse_algorithm(raw);
    if (!a) throw ValidationError("unknown algorithm '" + raw + "'");
    out.emplace_back(std::string(to_string(*a)), detect(*a, u, detect_params(o)));
  }
  if (out.empty()) throw ValidationError("--algo names no algorithm");
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].first == out[j].first) throw ValidationError("algorithm '" + out[i].first + "' listed twice");
  return out;
}

inline std::string partition_csv(const Partition& p) {
  std::ostringstream os;
  write_partition_csv(os, p);
  return os.str();
}

inline void cmd_ingest(const Options& o) {
  Run run("ingest", o);
  auto ing = load_collection(run, o.inputs);
  run.write("collection.json", serialize_collection(ing.collection));
  run.write("ingest_report.json", to_json(ing.report).dump(2) + "\n");
  run.finish();
}

inline void cmd_build(const Options& o) {
  Run run("build", o);
  auto ing = load_collection(run, o.inputs);
  BuildOptions bo;
  bo.matcher = parse_matcher(o.matcher);
  if (o.rule != "full" && o.rule != "partial") throw ValidationError("unknown rule '" + o.rule + "'");
  bo.operation_rule = o.rule == "full" ? OperationRule::full : OperationRule::partial;
  if (o.network != "parameter" && o.network != "operation") throw ValidationError("unknown network '" + o.network + "'");
  const NetworkKind kind = o.network == "parameter" ? NetworkKind::parameter : NetworkKind::operation;
  run.parameters() = {{"matcher", o.matcher}, {"network", o.network}, {"rule", o.rule}};
  BuildReport report;
  const auto g = build_network(ing.collection, kind, bo, &report);
  run.write_with("network.tsv", [&](std::ostream& os) { write_edge_list(os, g); });
  run.write_with("network.graphml", [&](std::ostream& os) { write_graphml(os, g); });
  ojson rep = {{"nodes", g.size()},
               {"edges", g.edge_count()},
               {"excluded_parameters", report.excluded_parameters},
               {"warnings", report.warnings}};
  run.write("build_report.json", rep.dump(2) + "\n");
  run.finish();
}

inline void cmd_analyze(const Options& o) {
  Run run("analyze", o);
  if (o.inputs.size() != 1) throw ValidationError("analyze takes exactly one --input network");
  const auto g = load_graph(run, o.inputs[0]);
  run.parameters() = {{"bootstraps", o.bootstraps}, {"runs", o.runs}};
  const auto report = topology_report(g, o.bootstraps, o.runs, o.seed);
  run.write("topology.json", to_json(report).dump(2) + "\n");
  const auto giant = giant_component(g);
  for (auto k : {DegreeKind::in, DegreeKind::out, DegreeKind::total})
    run.write_with("degree_" + std::string(to_string(k)) + ".csv",
                   [&](std::ostream& os) { write_degree_histogram_csv(os, giant, k); });
  run.finish();
}

inline void cmd_detect(const Options& o) {
  Run run("detect", o);
  if (o.inputs.size() != 1) throw ValidationError("detect takes exactly one --input network");
  const UndirectedView u(giant_component(load_graph(run, o.inputs[0])));
  run.parameters() = {{"algo", o.algo}, {"walktrap_t", o.walktrap_t}};
  const auto named = run_algorithms(run, u, o);
  ojson summary = ojson::array();
  for (const auto& [name, p] : named) {
    run.write("partitions/" + name + ".csv", partition_csv(p));
    ojson e = {{"algorithm", name}, {"communities", p.community_count()}};
    e["modularity"] = u.edge_count() > 0 ? ojson(modularity(u, p.aligned_to(u.labels()))) : ojson(nullptr);
    summary.push_back(std::move(e));
  }
  run.write("detect.json", summary.dump(2) + "\n");
  run.finish();
}

inline void cmd_compare(const Options& o) {
  Run run("compare", o);
  if (o.inputs.size() < 2) throw ValidationError("compare needs at least two --input partition files");
  std::vector<std::string> labels;
  if (!o.graph.empty()) {
    const UndirectedView u(giant_component(load_graph(run, o.graph)));
    labels.assign(u.labels().begin(), u.labels().end());
  }
  std::vector<std::pair<std::string, Partition>> named;
  for (const auto& in : o.inputs) {
    const std::string text = run.input(in);
    if (labels.empty()) {
      std::istringstream is(text);
      std::string line;
      bool first = true;
      while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() == 2 && !(first && !is_integer(f[1]))) labels.push_back(f[0]);
        first = false;
      }
    }
    std::istringstream is(text);
    named.emplace_back(fs::path(in).stem().string(), read_partition_csv(is, labels));
  }
  const auto m = nmi_matrix(named);
  run.write_with("nmi.csv", [&](std::ostream& os) { write_nmi_csv(os, m); });
  run.finish();
}

inline void cmd_report(const Options& o) {
  Run run("report", o);
  if (o.inputs.size() != 1) throw ValidationError("report takes exactly one --input network");
  const UndirectedView u(giant_component(load_graph(run, o.inputs[0])));
  run.parameters() = {{"algo", o.algo}, {"top_k", o.top_k}, {"bootstraps", o.bootstraps}, {"walktrap_t", o.walktrap_t}};
  const auto named = run_algorithms(run, u, o);
  const auto report = community_report(u, named, o.top_k);
  for (const auto& [name, p] : named) run.write("partitions/" + name + ".csv", partition_csv(p));

  ojson j = to_json(report);
  ojson dists = ojson::object();
  std::ostringstream dist_csv;
  dist_csv << "algorithm,alpha,xmin,ks_stat,p_value,note\n";
  for (std::size_t i = 0; i < named.size(); ++i) {
    const auto d = size_distribution(named[i].second, o.bootstraps, derive_seed(o.seed, i));
    dists[named[i].first] = d.fit ? to_json(*d.fit) : ojson{{"undefined", d.note}};
    dist_csv << csv_field(named[i].first) << ',';
    if (d.fit)
      dist_csv << format_double(d.fit->alpha) << ',' << d.fit->xmin << ',' << format_double(d.fit->ks_stat) << ','
               << (d.fit->p_value ? format_double(*d.fit->p_value) : "NA") << ",\n";
    else
      dist_csv << "NA,NA,NA,NA," << csv_field(d.note) << '\n';
  }
  j["size_distribution"] = std::move(dists);

  if (!o.compare_with.empty()) {
    const UndirectedView v(giant_component(load_graph(run, o.compare_with)));
    const auto other = run_algorithms(run, v, o);
    std::ostringstream corr;
    corr << "algorithm,property,k,correlation,note\n";
    for (std::size_t i = 0; i < named.size(); ++i) {
      for (auto prop : {CommunityProperty::size, CommunityProperty::distance, CommunityProperty::scaled_density,
                        CommunityProperty::hub_dominance}) {
        corr << csv_field(named[i].first) << ',' << to_string(prop) << ",8,";
        try {
          corr << format_double(cross_network_correlation(u, named[i].second, v, other[i].second, prop)) << ",\n";
        } catch (const ValidationError& e) {
          corr << "NA," << csv_field(e.what()) << '\n';
        } catch (const UndefinedValueError& e) {
          corr << "NA," << csv_field(e.what()) << '\n';
        }
      }
    }
    run.write("correlations.csv", corr.str());
  }

  run.write("report.json", j.dump(2) + "\n");
  run.write_with("counts.csv", [&](std::ostream& os) { write_counts_csv(os, report); });
  run.write_with("nmi.csv", [&](std::ostream& os) { write_nmi_csv(os, report.nmi); });
  run.write_with("modularity.csv", [&](std::ostream& os) { write_modularity_csv(os, report); });
  run.write_with("sizes.csv", [&](std::ostream& os) { write_sizes_csv(os, report); });
  run.write_with("profiles.csv", [&](std::ostream& os) { write_profiles_csv(os, report); });
  run.write("size_distribution.csv", dist_csv.str());
  run.finish();
}

inline void cmd_synth(Options o) {
  Run run("synth", o);
  o.synth.seed = o.seed;
  if (!o.domain_services.empty()) {
    o.synth.domain_services.clear();
    for (const auto& f : split(o.domain_services, ',')) {
      if (!is_integer(f) || f.front() == '-') throw ValidationError("--domain-services expects positive integers");
      o.synth.domain_services.push_back(std::stoul(f));
    }
  }
  const auto& s = o.synth;
  run.parameters() = {{"domains", s.domains},
                      {"services_per_domain", s.services_per_domain},
                      {"domain_services", s.domain_services},
                      {"ops", {s.ops_min, s.ops_max}},
                      {"params", {s.params_min, s.params_max}},
                      {"vocab_per_domain", s.vocab_per_domain},
                      {"shared_vocab", s.shared_vocab},
                      {"p_shared", s.p_shared},
                      {"twin_semantic", s.twin_semantic},
                      {"synonym_rate", s.synonym_rate},
                      {"zipf_exponent", s.zipf_exponent}};
  const auto r = generate(s);
  run.write("collection.json", serialize_collection(r.collection));
  run.write_with("labels.csv", [&](std::ostream& os) { write_labels_csv(os, r); });
  run.finish();
}

/// Exit codes: 0 success, 1 usage or validation error, 2 internal error.
inline int run(int argc, const char* const* argv, std::ostream& err = std::cerr) {
  CLI::App app{"Interaction networks of Web service collections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--seed", o.seed, "Random seed");
  };
  auto detection = [&](CLI::App* sub) {
    sub->add_option("--algo", o.algo, "Comma-separated algorithms, or import:<partition.csv>");
    sub->add_option("--walktrap-t", o.walktrap_t, "Walktrap random-walk length");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate and normalize a collection");
  ingest->add_option("--input", o.inputs, "Collection JSON or SAWSDL files/directories")->required();
  common(ingest);

  auto* build = app.add_subcommand("build", "Build a parameter or operation network");
  build->add_option("--input", o.inputs, "Collection JSON or SAWSDL files/directories")->required();
  build->add_option("--matcher", o.matcher)->check(CLI::IsMember({"syntactic", "semantic"}));
  build->add_option("--network", o.network)->check(CLI::IsMember({"parameter", "operation"}));
  build->add_option("--rule", o.rule)->check(CLI::IsMember({"full", "partial"}));
  common(build);

  auto* analyze = app.add_subcommand("analyze", "Topology report of a network");
  analyze->add_option("--input", o.inputs, "Network edge list or GraphML")->required();
  analyze->add_option("--bootstraps", o.bootstraps, "Power-law bootstrap replicas");
  analyze->add_option("--runs", o.runs, "Random-graph baseline runs");
  common(analyze);

  auto* detect_cmd = app.add_subcommand("detect", "Detect communities");
  detect_cmd->add_option("--input", o.inputs, "Network edge list or GraphML")->required();
  detection(detect_cmd);
  common(detect_cmd);

  auto* compare = app.add_subcommand("compare", "NMI matrix over partition files");
  compare->add_option("--input", o.inputs, "Partition CSV files")->required();
  compare->add_option("--graph", o.graph, "Network whose giant component fixes the node set");
  common(compare);

  auto* report = app.add_subcommand("report", "Full community report");
  report->add_option("--input", o.inputs, "Network edge list or GraphML")->required();
  report->add_option("--top-k", o.top_k, "Community sizes listed per algorithm");
  report->add_option("--bootstraps", o.bootstraps, "Bootstrap replicas for size-distribution fits");
  report->add_option("--compare-with", o.compare_with, "Second network for cross-network correlations");
  detection(report);
  common(report);

  auto* synth = app.add_subcommand("synth", "Generate a planted-domain collection");
  synth->add_option("--domains", o.synth.domains);
  synth->add_option("--services-per-domain", o.synth.services_per_domain);
  synth->add_option("--domain-services", o.domain_services, "Comma-separated services per domain");
  synth->add_option("--ops-min", o.synth.ops_min);
  synth->add_option("--ops-max", o.synth.ops_max);
  synth->add_option("--params-min", o.synth.params_min);
  synth->add_option("--params-max", o.synth.params_max);
  synth->add_option("--vocab", o.synth.vocab_per_domain, "Terms per domain vocabulary");
  synth->add_option("--shared-vocab", o.synth.shared_vocab);
  synth->add_option("--p-shared", o.synth.p_shared);
  synth->add_flag("--twin-semantic", o.synth.twin_semantic);
  synth->add_option("--synonym-rate", o.synth.synonym_rate);
  synth->add_option("--zipf", o.synth.zipf_exponent);
  common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) cmd_ingest(o);
    else if (*build) cmd_build(o);
    else if (*analyze) cmd_analyze(o);
    else if (*detect_cmd) cmd_detect(o);
    else if (*compare) cmd_compare(o);
    else if (*report) cmd_report(o);
    else if (*synth) cmd_synth(o);
    return 0;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wsnet::cli
