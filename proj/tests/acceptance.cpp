// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wsnet/cli.hpp"
#include "wsnet/wsnet.hpp"

using namespace wsnet;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = WSNET_FIXTURES;

/// Collects failed checks for one criterion.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

enum class Outcome { pass, fail, skip };

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome(Checks&)> body;
};

Collection load_fixture(const std::string& name) {
  std::ifstream in(kFixtures / name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_collection(ss.str()).collection;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wsnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), err);
  if (code != 0) std::cerr << err.str();
  return code;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("wsnet_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Outcome fixture_exactness(Checks& c) {
  const auto example = load_fixture("worked_example.json");
  const auto pn = build_parameter_network(example, {MatcherSpec::syntactic()});
  const oracle::LabelledEdges param_edges{{"a", "d"}, {"b", "d"}, {"c", "e"}, {"c", "f"}, {"f", "g"},
                                          {"d", "h"}, {"d", "i"}, {"g", "h"}, {"g", "i"}};
  c.expect(pn.size() == 9, "parameter network has 9 nodes");
  c.expect(oracle::labelled(pn).edges == param_edges, "parameter network edge set");
  const auto full = build_operation_network(example, {MatcherSpec::syntactic(), OperationRule::full});
  const auto partial = build_operation_network(example, {MatcherSpec::syntactic(), OperationRule::partial});
  c.expect(full.size() == 4, "operation network has 4 nodes");
  c.expect(oracle::labelled(full).edges == oracle::LabelledEdges{{"2", "3"}}, "full rule edge set");
  c.expect(oracle::labelled(partial).edges == oracle::LabelledEdges{{"1", "4"}, {"2", "3"}, {"3", "4"}},
           "partial rule edge set");
  return Outcome::pass;
}

Outcome builder_oracle(Checks& c) {
  Rng rng = make_rng(2024);
  for (int round = 0; round < 200; ++round) {
    const auto col = oracle::random_collection(rng);
    for (auto m : {MatcherSpec::syntactic(), MatcherSpec::semantic()}) {
      const auto want = oracle::parameter_network(col, m);
      if (want.nodes.empty()) continue;  // nothing the matcher can compare
      const auto tag = " (round " + std::to_string(round) + ", " + std::string(to_string(m.mode)) + ")";
      c.expect(oracle::labelled(build_parameter_network(col, {m})) == want, "parameter network" + tag);
      c.expect(oracle::labelled(build_operation_network(col, {m, OperationRule::full})) ==
                   oracle::operation_network(col, m, true),
               "operation network, full rule" + tag);
      c.expect(oracle::labelled(build_operation_network(col, {m, OperationRule::partial})) ==
                   oracle::operation_network(col, m, false),
               "operation network, partial rule" + tag);
    }
  }
  return Outcome::pass;
}

Outcome modularity_oracle(Checks& c) {
  Rng rng = make_rng(7);
  int graphs = 0;
  while (graphs < 100) {
    const std::size_t n = 1 + uniform_index(rng, 6);
    const auto u = oracle::random_graph(n, 0.5, rng);
    if (u.edge_count() == 0) continue;
    ++graphs;
    oracle::for_each_partition(n, [&](const std::vector<std::size_t>& raw) {
      const double got = modularity(u, std::span<const CommunityId>(raw));
      c.expect(std::abs(got - oracle::modularity(u, raw)) <= 1e-12, "modularity differs from the direct formula");
    });
    const std::vector<CommunityId> one(n, 0);
    c.expect(modularity(u, std::span<const CommunityId>(one)) == 0.0, "one-community modularity is exactly 0");
  }
  return Outcome::pass;
}

Outcome closed_forms(Checks& c) {
  Rng rng = make_rng(11);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto tree = oracle::random_tree(n, rng);
    const auto kn = oracle::complete(n);
    const auto star = oracle::star(n);
    auto whole = [](const UndirectedView& u) {
      return community_profiles(u, Partition::single_community(u.labels()))[0];
    };
    const auto ns = std::to_string(n);
    c.expect(whole(tree).scaled_density == 2.0, "scaled_density(tree) = 2, n=" + ns);
    c.expect(whole(kn).scaled_density == static_cast<double>(n), "scaled_density(K_n) = n, n=" + ns);
    c.expect(whole(star).hub_dominance == 1.0, "hub_dominance(star) = 1, n=" + ns);
    c.expect(average_distance(kn) == 1.0, "average_distance(K_n) = 1, n=" + ns);
  }
  c.expect(transitivity(oracle::complete(3)) == 1.0, "transitivity(triangle) = 1");
  c.expect(transitivity(oracle::star(6)) == 0.0, "transitivity(star) = 0");
  return Outcome::pass;
}

Outcome betweenness_oracle(Checks& c) {
  Rng rng = make_rng(5);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + uniform_index(rng, 7);
    const auto u = oracle::random_graph(n, 0.45, rng);
    const auto got = edge_betweenness(u);
    const auto want = oracle::edge_betweenness(u);
    c.expect(got.size() == want.size(), "betweenness vector length");
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i)
      c.expect(std::abs(got[i] - want[i]) <= 1e-9, "edge betweenness differs from path enumeration");
  }
  return Outcome::pass;
}

Outcome nmi_properties(Checks& c) {
  auto make = [](const std::vector<int>& raw) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < raw.size(); ++i) labels.push_back(std::to_string(i));
    return Partition::from_membership(std::move(labels), raw);
  };
  Rng rng = make_rng(3);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + uniform_index(rng, 40);
    std::vector<int> a(n), b(n);
    const auto ka = 2 + uniform_index(rng, 5), kb = 1 + uniform_index(rng, 6);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(uniform_index(rng, ka));
      b[i] = static_cast<int>(uniform_index(rng, kb));
    }
    const auto pa = make(a), pb = make(b);
    const double ab = nmi(pa, pb), ba = nmi(pb, pa);
    c.expect(std::abs(ab - ba) <= 1e-12, "symmetry");
    c.expect(ab >= 0.0 && ab <= 1.0, "range [0,1]");
    if (pa.community_count() >= 2) c.expect(std::abs(nmi(pa, pa) - 1.0) <= 1e-12, "self-similarity");
  }
  c.expect(std::abs(nmi(make({0, 0, 1, 1}), make({0, 1, 0, 1}))) <= 1e-12, "independent 4-node partitions give 0");
  return Outcome::pass;
}

Outcome power_law_recovery(Checks& c) {
  const oracle::InverseCdfPowerLaw draw(2.5);
  Rng rng = make_rng(2500);
  std::vector<std::uint64_t> samples(10000);
  for (auto& x : samples) x = draw(rng);
  const auto fit = fit_power_law(samples, 1000, 99);
  std::cout << "  alpha=" << fit.alpha << " xmin=" << fit.xmin << " p=" << (fit.p_value ? *fit.p_value : -1.0)
            << '\n';
  c.expect(fit.alpha >= 2.4 && fit.alpha <= 2.6, "alpha in [2.4, 2.6]");
  c.expect(fit.p_value && *fit.p_value > 0.1, "p_value > 0.1");
  return Outcome::pass;
}

Outcome detection_sanity(Checks& c) {
  const auto u = oracle::two_cliques(5);
  std::vector<std::string> left(u.labels().begin(), u.labels().begin() + 5);
  for (auto a : kAllAlgorithms) {
    const auto p = detect(a, u, DetectParams{});
    bool split = p.community_count() == 2;
    for (std::size_t i = 0; i < u.size(); ++i) split = split && (p.community_of(i) == p.community_of(0)) == (i < 5);
    c.expect(split, std::string(to_string(a)) + " recovers the two cliques");
  }

  SynthSpec s;
  s.domains = 4;
  s.p_shared = 0.05;
  s.seed = 1;
  const auto r = generate(s);
  const auto m = MatcherSpec::syntactic();
  const UndirectedView g(giant_component(build_parameter_network(r.collection, {m})));
  const auto planted = planted_partition(planted_parameter_labels(r, m), g.labels());
  for (auto a : {Algorithm::louvain, Algorithm::walktrap}) {
    const double v = nmi(restrict_partition(detect(a, g, DetectParams{}), planted.labels()), planted);
    std::cout << "  " << to_string(a) << " NMI vs planted = " << v << '\n';
    c.expect(v >= 0.9, std::string(to_string(a)) + " NMI >= 0.9 vs planted domains");
  }
  return Outcome::pass;
}

std::vector<fs::path> files_under(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome pipeline_determinism(Checks& c) {
  std::vector<fs::path> roots;
  for (const char* tag : {"run_a", "run_b"}) {
    const auto root = scratch(std::string("pipeline_") + tag);
    roots.push_back(root);
    const auto d = [&](const char* sub) { return (root / sub).string(); };
    c.expect(cli({"synth", "--domains", "3", "--services-per-domain", "10", "--seed", "42", "--out", d("synth")}) == 0,
             "synth");
    c.expect(cli({"build", "--input", d("synth") + "/collection.json", "--out", d("build")}) == 0, "build");
    const auto net = d("build") + "/network.tsv";
    c.expect(cli({"analyze", "--input", net, "--seed", "42", "--bootstraps", "200", "--out", d("analyze")}) == 0,
             "analyze");
    c.expect(cli({"detect", "--input", net, "--seed", "42", "--out", d("detect")}) == 0, "detect");
    c.expect(cli({"report", "--input", net, "--seed", "42", "--bootstraps", "200", "--out", d("report")}) == 0,
             "report");
  }
  const auto fa = files_under(roots[0]), fb = files_under(roots[1]);
  c.expect(fa == fb, "both runs produce the same files");
  c.expect(fa.size() > 10, "pipeline produced its outputs");
  for (const auto& f : fa)
    c.expect(slurp(roots[0] / f) == slurp(roots[1] / f), "byte-identical " + f.string());
  for (const auto& r : roots) fs::remove_all(r);
  return Outcome::pass;
}

Outcome corpus_ranges(Checks& c) {
  const char* corpus = std::getenv("WSNET_CORPUS_DIR");
  if (!corpus || !*corpus) return Outcome::skip;
  const auto root = scratch("corpus");
  int k = 0;
  for (const char* network : {"parameter", "operation"})
    for (const char* matcher : {"syntactic", "semantic"}) {
      const auto tag = std::string(network) + "/" + matcher;
      const auto dir = root / std::to_string(k++);
      if (cli({"build", "--input", corpus, "--network", network, "--matcher", matcher, "--out", (dir / "b").string()}) !=
          0) {
        c.expect(false, "build " + tag);
        continue;
      }
      const auto net = (dir / "b" / "network.tsv").string();
      const bool analyzed = cli({"analyze", "--input", net, "--bootstraps", "100", "--out", (dir / "a").string()}) == 0;
      const bool detected = cli({"detect", "--input", net, "--out", (dir / "d").string()}) == 0;
      c.expect(analyzed, "analyze " + tag);
      c.expect(detected, "detect " + tag);
      if (!analyzed || !detected) continue;
      const auto topo = nlohmann::json::parse(slurp(dir / "a" / "topology.json"));
      const bool small_world = topo["avg_distance"].is_number() && topo["er_distance"].is_number() &&
                               topo["avg_distance"].get<double>() < topo["er_distance"].get<double>();
      std::cout << "  " << tag << " avg_distance=" << topo["avg_distance"] << " er=" << topo["er_distance"] << '\n';
      c.expect(small_world, "average distance below ER baseline, " + tag);
      const auto det = nlohmann::json::parse(slurp(dir / "d" / "detect.json"));
      for (const auto& a : det) {
        const bool ok = a["modularity"].is_number() && a["modularity"].get<double>() >= 0.3 &&
                        a["modularity"].get<double>() <= 0.7;
        std::cout << "  " << tag << " " << a["algorithm"].get<std::string>() << " Q=" << a["modularity"] << '\n';
        c.expect(ok, "modularity in [0.3, 0.7], " + tag + " " + a["algorithm"].get<std::string>());
      }
    }
  fs::remove_all(root);
  return Outcome::pass;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "worked-example fixture exactness", 1.0, fixture_exactness},
      {"AC2", "network builders match brute-force definitions", 10.0, builder_oracle},
      {"AC3", "modularity matches direct formula", 60.0, modularity_oracle},
      {"AC4", "closed forms", 1.0, closed_forms},
      {"AC5", "edge betweenness matches path enumeration", 10.0, betweenness_oracle},
      {"AC6", "NMI properties", 5.0, nmi_properties},
      {"AC7", "power-law recovery", 120.0, power_law_recovery},
      {"AC8", "detection sanity", 30.0, detection_sanity},
      {"AC9", "pipeline determinism", 60.0, pipeline_determinism},
      {"AC10", "corpus modularity and distance ranges", 3600.0, corpus_ranges},
  };
  bool all_ok = true;
  for (const auto& crit : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = crit.body(checks);
    } catch (const std::exception& e) {
      checks.failures.push_back(std::string("exception: ") + e.what());
      outcome = Outcome::fail;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome == Outcome::skip) {
      std::cout << crit.id << " SKIP " << crit.title << " (WSNET_CORPUS_DIR not set)\n";
      continue;
    }
    if (secs > crit.limit_seconds)
      checks.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(crit.limit_seconds));
    const bool ok = outcome == Outcome::pass && checks.failures.empty();
    all_ok = all_ok && ok;
    std::cout << crit.id << (ok ? " PASS " : " FAIL ") << crit.title << " (" << secs << " s)\n";
    for (const auto& f : checks.failures) std::cout << "  failed: " << f << '\n';
    std::cout.flush();
  }
  return all_ok ? 0 : 1;
}
