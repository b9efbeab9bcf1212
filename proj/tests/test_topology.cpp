#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

#include "oracles.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/power_law.hpp"
#include "wsnet/topology.hpp"

using namespace wsnet;

namespace {

std::vector<std::uint64_t> oracle_samples(double alpha, std::size_t n, std::uint64_t seed) {
  const oracle::InverseCdfPowerLaw draw(alpha);
  Rng rng = make_rng(seed);
  std::vector<std::uint64_t> xs(n);
  for (auto& x : xs) x = draw(rng);
  return xs;
}

// Preferential attachment: node t links to k distinct earlier nodes chosen
// proportionally to their current total degree.
DirectedGraph preferential_attachment(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  DirectedGraph g;
  std::vector<NodeId> ends;
  for (std::size_t i = 0; i <= k; ++i) g.add_node("v" + std::to_string(i));
  for (NodeId i = 0; i <= k; ++i)
    for (NodeId j = 0; j < i; ++j) {
      g.add_edge(i, j);
      ends.push_back(i);
      ends.push_back(j);
    }
  for (std::size_t t = k + 1; t < n; ++t) {
    const NodeId v = g.add_node("v" + std::to_string(t));
    std::set<NodeId> targets;
    while (targets.size() < k) targets.insert(ends[uniform_index(rng, ends.size())]);
    for (NodeId w : targets) {
      g.add_edge(v, w);
      ends.push_back(v);
      ends.push_back(w);
    }
  }
  return g;
}

}  // namespace

TEST(HurwitzZetaTest, matchesReferenceValues) {
  for (double s : {1.1, 1.5, 2.0, 2.5, 3.7, 6.0}) {
    const double z = boost::math::zeta(s);
    EXPECT_NEAR(hurwitz_zeta(s, 1.0), z, 1e-12 * z) << s;
    double partial = z;
    for (int k = 1; k < 5; ++k) partial -= std::pow(k, -s);
    EXPECT_NEAR(hurwitz_zeta(s, 5.0), partial, 1e-11 * partial) << s;
  }
}

// The exact MLE maximizes the discrete log-likelihood; compare against a
// dense grid search using the Riemann zeta function from Boost.
TEST(PowerLawTest, mleMaximizesLikelihood) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto xs = oracle_samples(2.2, 2000, seed);
    double log_sum = 0.0;
    for (auto x : xs) log_sum += std::log(static_cast<double>(x));
    const double n = static_cast<double>(xs.size());
    double best_a = 0.0, best_ll = -1e300;
    for (double a = 1.5; a < 3.5; a += 1e-4) {
      const double ll = -n * std::log(boost::math::zeta(a)) - a * log_sum;
      if (ll > best_ll) best_ll = ll, best_a = a;
    }
    EXPECT_NEAR(discrete_mle_alpha(xs.size(), log_sum, 1), best_a, 2e-4);
  }
}

TEST(PowerLawTest, samplerAgreesWithOracleMass) {
  const double alpha = 2.5;
  const DiscretePowerLawSampler s(alpha, 1);
  Rng rng = make_rng(99);
  const std::size_t n = 200000;
  std::size_t ones = 0, twos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = s(rng);
    ones += x == 1;
    twos += x == 2;
  }
  const double z = boost::math::zeta(alpha);
  for (auto [count, p] : {std::pair{ones, 1.0 / z}, std::pair{twos, std::pow(2.0, -alpha) / z}}) {
    const double sd = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(count) / n, p, 5 * sd);
  }
}

TEST(PowerLawTest, recoversExponent) {
  const auto xs = oracle_samples(2.5, 10000, 2024);
  const auto fit = fit_power_law(xs, 200, 5);
  EXPECT_NEAR(fit.alpha, 2.5, 0.1);
  ASSERT_TRUE(fit.p_value);
  EXPECT_GT(*fit.p_value, 0.1);
  EXPECT_GE(fit.xmin, 1u);
  EXPECT_GE(fit.ks_stat, 0.0);
  EXPECT_EQ(fit.n_samples, 10000u);
}

TEST(PowerLawTest, convergesWithSampleSize) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EXPECT_NEAR(fit_power_law(oracle_samples(2.5, 1000, seed), 0, 1).alpha, 2.5, 0.2);
    EXPECT_NEAR(fit_power_law(oracle_samples(2.5, 10000, seed + 100), 0, 1).alpha, 2.5, 0.1);
  }
}

TEST(PowerLawTest, insufficientData) {
  const std::vector<std::uint64_t> equal(50, 3);
  EXPECT_THROW(fit_power_law(equal, 10, 1), InsufficientDataError);
  const std::vector<std::uint64_t> few{1, 2, 3};
  EXPECT_THROW(fit_power_law(few, 10, 1), InsufficientDataError);
  const std::vector<std::uint64_t> zero{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_THROW(fit_power_law(zero, 10, 1), ValidationError);
}

TEST(PowerLawTest, permutationInvariantAndDeterministic) {
  auto xs = oracle_samples(2.3, 800, 6);
  const auto a = fit_power_law(xs, 50, 9);
  Rng rng = make_rng(1);
  shuffle(std::span<std::uint64_t>(xs), rng);
  const auto b = fit_power_law(xs, 50, 9);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.xmin, b.xmin);
  EXPECT_EQ(a.ks_stat, b.ks_stat);
  EXPECT_EQ(a.p_value, b.p_value);
  ASSERT_TRUE(a.p_value);
  EXPECT_GE(*a.p_value, 0.0);
  EXPECT_LE(*a.p_value, 1.0);
}

TEST(PowerLawTest, rejectsClearlyNonPowerLawData) {
  // Geometric-like data concentrated on 1..6 with a hard cutoff.
  Rng rng = make_rng(3);
  std::vector<std::uint64_t> xs(3000);
  for (auto& x : xs) x = 1 + uniform_index(rng, 6) + uniform_index(rng, 6);
  const auto fit = fit_power_law(xs, 100, 2);
  ASSERT_TRUE(fit.p_value);
  EXPECT_LT(*fit.p_value, 0.1);
}

TEST(TopologyReportTest, triangle) {
  DirectedGraph g;
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("c", "a");
  const auto r = topology_report(g, 10, 3, 1);
  EXPECT_EQ(r.network_size, 3u);
  EXPECT_EQ(r.avg_distance, 1.0);
  EXPECT_EQ(r.transitivity, 1.0);
  EXPECT_FALSE(r.assortativity);  // regular graph
  EXPECT_FALSE(r.total_fit.fit);  // fewer than 10 samples
}

TEST(TopologyReportTest, usesGiantComponent) {
  DirectedGraph g;
  for (int i = 0; i < 6; ++i) g.add_edge("h", "l" + std::to_string(i));
  g.add_edge("x", "y");
  const auto r = topology_report(g, 0, 2, 1);
  EXPECT_EQ(r.network_size, 7u);
  EXPECT_EQ(r.transitivity, 0.0);
  EXPECT_EQ(r.assortativity, -1.0);
}

TEST(TopologyReportTest, deterministic) {
  const auto g = preferential_attachment(300, 2, 4);
  const auto a = to_json(topology_report(g, 20, 3, 11)).dump();
  const auto b = to_json(topology_report(g, 20, 3, 11)).dump();
  EXPECT_EQ(a, b);
}

TEST(TopologyReportTest, scaleFreeSmallWorld) {
  const auto g = preferential_attachment(2000, 2, 7);
  const auto r = topology_report(g, 200, 5, 3);
  ASSERT_TRUE(r.avg_distance && r.er_distance);
  EXPECT_LT(*r.avg_distance, *r.er_distance);
  ASSERT_TRUE(r.total_fit.fit);
  EXPECT_GT(*r.total_fit.fit->p_value, 0.1);
}

TEST(DegreeHistogramTest, csv) {
  DirectedGraph g;
  g.add_edge("a", "b");
  g.add_edge("a", "c");
  std::ostringstream os;
  write_degree_histogram_csv(os, g, DegreeKind::total);
  EXPECT_EQ(os.str(), "degree,count\n1,2\n2,1\n");
}
