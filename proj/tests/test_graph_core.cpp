#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/graph_io.hpp"

using namespace wsnet;

namespace {

DirectedGraph directed(std::initializer_list<std::pair<const char*, const char*>> edges,
                       std::initializer_list<const char*> extra = {}) {
  DirectedGraph g;
  for (auto [u, v] : edges) g.add_edge(u, v);
  for (const char* n : extra) g.add_node(n);
  return g;
}

std::set<std::set<std::string>> labelled_components(const DirectedGraph& g) {
  std::set<std::set<std::string>> out;
  for (const auto& c : weakly_connected_components(g)) {
    std::set<std::string> s;
    for (auto v : c) s.insert(g.label(v));
    out.insert(s);
  }
  return out;
}

UndirectedView two_triangles_bridge() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  return UndirectedView::from_edges(6, e);
}

}  // namespace

TEST(DirectedGraphTest, simpleGraphInvariants) {
  DirectedGraph g;
  const auto a = g.add_node("a");
  EXPECT_EQ(g.add_node("a"), a);
  const auto b = g.add_node("b");
  EXPECT_TRUE(g.add_edge(a, b));
  EXPECT_FALSE(g.add_edge(a, b));
  EXPECT_TRUE(g.add_edge(b, a));
  EXPECT_THROW(g.add_edge(a, a), ValidationError);
  EXPECT_THROW(g.add_edge(a, 7), ValidationError);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(UndirectedView(g).edge_count(), 1u);
}

TEST(ComponentsTest, examples) {
  EXPECT_EQ(labelled_components(directed({{"a", "b"}}, {"c"})),
            (std::set<std::set<std::string>>{{"a", "b"}, {"c"}}));
  EXPECT_TRUE(weakly_connected_components(DirectedGraph{}).empty());
  EXPECT_EQ(labelled_components(directed({{"2", "3"}}, {"1", "4"})),
            (std::set<std::set<std::string>>{{"2", "3"}, {"1"}, {"4"}}));
}

TEST(ComponentsTest, sizesSumToNodeCount) {
  Rng rng = make_rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto u = oracle::random_graph(30, 0.05, rng);
    std::size_t total = 0;
    for (const auto& c : connected_components(u)) total += c.size();
    EXPECT_EQ(total, 30u);
  }
}

TEST(GiantComponentTest, examples) {
  auto g = directed({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"e", "d"}, {"x", "y"}});
  auto giant = giant_component(g);
  EXPECT_EQ(giant.size(), 5u);
  EXPECT_FALSE(giant.find("x"));

  auto connected = directed({{"a", "b"}, {"c", "b"}});
  EXPECT_EQ(giant_component(connected), connected);
  EXPECT_THROW(giant_component(DirectedGraph{}), EmptyInputError);
}

TEST(GiantComponentTest, tieGoesToSmallestLabel) {
  auto g = directed({{"z", "y"}, {"b", "c"}});
  EXPECT_TRUE(giant_component(g).find("b"));
}

TEST(GiantComponentTest, matchesComponentEnumeration) {
  Rng rng = make_rng(9);
  for (int round = 0; round < 20; ++round) {
    DirectedGraph g;
    for (int i = 0; i < 30; ++i) g.add_node("n" + std::to_string(i));
    for (int k = 0; k < 25; ++k) {
      auto a = uniform_index(rng, 30), b = uniform_index(rng, 30);
      if (a != b) g.add_edge(a, b);
    }
    std::size_t largest = 0;
    for (const auto& c : weakly_connected_components(g)) largest = std::max(largest, c.size());
    EXPECT_EQ(giant_component(g).size(), largest);
  }
}

TEST(AverageDistanceTest, examples) {
  EXPECT_DOUBLE_EQ(average_distance(oracle::path(3)), 4.0 / 3.0);
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(average_distance(oracle::complete(n)), 1.0);
  const std::vector<Edge> e{{0, 1}};
  EXPECT_THROW(average_distance(UndirectedView::from_edges(3, e)), UndefinedValueError);
}

TEST(AverageDistanceTest, matchesFloydWarshall) {
  Rng rng = make_rng(4);
  int checked = 0;
  while (checked < 30) {
    const auto u = oracle::random_graph(12, 0.25, rng);
    if (!is_connected(u)) continue;
    EXPECT_NEAR(average_distance(u), oracle::average_distance(u), 1e-12);
    ++checked;
  }
}

TEST(ErBaselineTest, examples) {
  EXPECT_EQ(er_baseline_distance(3, 3, 5, 1), 1.0);
  EXPECT_EQ(er_baseline_distance(50, 120, 10, 7), er_baseline_distance(50, 120, 10, 7));
  EXPECT_THROW(er_baseline_distance(3, 4, 1, 1), ValidationError);
  EXPECT_THROW(er_baseline_distance(1, 1, 1, 1), ValidationError);
}

TEST(RandomGnmTest, exactEdgeCount) {
  Rng rng = make_rng(1);
  for (std::size_t m : {0u, 1u, 10u, 40u, 45u}) EXPECT_EQ(random_gnm(10, m, rng).edge_count(), m);
}

TEST(TransitivityTest, examples) {
  EXPECT_EQ(transitivity(oracle::complete(3)), 1.0);
  EXPECT_EQ(transitivity(oracle::star(4)), 0.0);
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  EXPECT_DOUBLE_EQ(transitivity(UndirectedView::from_edges(4, e)), 0.6);
  EXPECT_THROW(transitivity(oracle::path(2)), UndefinedValueError);
}

TEST(AssortativityTest, examples) {
  EXPECT_DOUBLE_EQ(degree_assortativity(oracle::star(4)), -1.0);
  EXPECT_THROW(degree_assortativity(oracle::complete(5)), UndefinedValueError);
}

TEST(AssortativityTest, matchesDirectFormula) {
  Rng rng = make_rng(8);
  int checked = 0;
  while (checked < 20) {
    const auto u = oracle::random_graph(20, 0.2, rng);
    std::vector<double> x, y;
    for (auto [a, b] : u.edges()) {
      x.push_back(u.degree(a)), y.push_back(u.degree(b));
      x.push_back(u.degree(b)), y.push_back(u.degree(a));
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) continue;
    EXPECT_NEAR(degree_assortativity(u), sxy / std::sqrt(sxx * syy), 1e-12);
    ++checked;
  }
}

TEST(StatisticsTest, invariantUnderRelabeling) {
  Rng rng = make_rng(12);
  for (int round = 0; round < 10; ++round) {
    const auto u = oracle::random_graph(15, 0.3, rng);
    std::vector<NodeId> perm(15);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    shuffle(std::span<NodeId>(perm), rng);
    std::vector<Edge> relabelled;
    for (auto [a, b] : u.edges()) relabelled.emplace_back(perm[a], perm[b]);
    const auto v = UndirectedView::from_edges(15, relabelled);
    EXPECT_NEAR(transitivity(u), transitivity(v), 1e-12);
    EXPECT_NEAR(degree_assortativity(u), degree_assortativity(v), 1e-12);
  }
}

TEST(EdgeBetweennessTest, examples) {
  const auto p = edge_betweenness(oracle::path(3));
  EXPECT_EQ(p, (std::vector<double>{2.0, 2.0}));
  const auto u = two_triangles_bridge();
  const auto eb = edge_betweenness(u);
  EXPECT_DOUBLE_EQ(eb[*u.edge_index(2, 3)], 9.0);
}

TEST(EdgeBetweennessTest, matchesPathEnumeration) {
  Rng rng = make_rng(21);
  for (int round = 0; round < 40; ++round) {
    const auto u = oracle::random_graph(3 + uniform_index(rng, 6), 0.45, rng);
    const auto got = edge_betweenness(u);
    const auto want = oracle::edge_betweenness(u);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
  }
}

// Summed betweenness equals the sum of pair distances over connected pairs.
TEST(EdgeBetweennessTest, sumEqualsTotalDistance) {
  Rng rng = make_rng(22);
  for (int round = 0; round < 30; ++round) {
    const auto u = oracle::random_graph(4 + uniform_index(rng, 7), 0.35, rng);
    const auto eb = edge_betweenness(u);
    const double total = std::accumulate(eb.begin(), eb.end(), 0.0);
    const auto d = oracle::floyd_warshall(u);
    double want = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        if (d[i][j] < oracle::kInf) want += static_cast<double>(d[i][j]);
    EXPECT_NEAR(total, want, 1e-9);
  }
}

TEST(GraphIoTest, edgeListRoundTrip) {
  auto g = directed({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"d", "a"}}, {"lonely"});
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(ss.str().rfind("# directed\n", 0), 0u);
  EXPECT_NE(ss.str().find("a\tb\n"), std::string::npos);
  const auto back = read_edge_list(ss);
  EXPECT_TRUE(same_structure(g, back));
  EXPECT_TRUE(back.find("lonely"));
}

TEST(GraphIoTest, edgeListRejectsBadLines) {
  std::istringstream self_loop("# directed\na\ta\n");
  EXPECT_THROW(read_edge_list(self_loop), ParseError);
  std::istringstream three("# directed\na\tb\tc\n");
  EXPECT_THROW(read_edge_list(three), ParseError);
  DirectedGraph bad;
  bad.add_edge("has\ttab", "x");
  std::ostringstream os;
  EXPECT_THROW(write_edge_list(os, bad), ValidationError);
}

TEST(GraphIoTest, graphmlRoundTrip) {
  auto g = directed({{"a&b", "<c>"}, {"<c>", "d\"q"}}, {"iso"});
  std::stringstream ss;
  write_graphml(ss, g);
  const auto back = read_graphml(ss);
  EXPECT_EQ(back, g);
}

TEST(GraphIoTest, graphmlWithoutLabelKeyUsesIds) {
  std::istringstream is(R"(<graphml><graph edgedefault="directed">
    <node id="x"/><node id="y"/><edge source="x" target="y"/></graph></graphml>)");
  const auto g = read_graphml(is);
  EXPECT_TRUE(g.has_edge(g.require("x"), g.require("y")));
}
