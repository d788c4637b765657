#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rso/generators.hpp"
#include "rso/transforms.hpp"
#include "rso/verify.hpp"

using namespace rso;

// Invariants checked over seeded random families, each against the
// enumeration oracle rather than the library scan where it matters.

TEST(Property, RobustnessIsInvariantUnderRelabeling) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 25; ++t) {
    int n = 4 + t % 4;
    Graph g = random_gnp(n, 0.5, rng);
    Graph h = apply_permutation(g, Permutation::random(n, rng));
    EXPECT_EQ(*robustness_exact(g).gamma_exact, *robustness_exact(h).gamma_exact);
  }
}

TEST(Property, PositiveRobustnessIffAsymmetric) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 60; ++t) {
    Graph g = random_gnp(6 + t % 2, 0.5, rng);
    const bool positive = Rational(0) < oracle::gamma(g);
    EXPECT_EQ(positive, is_self_ordered(g).self_ordered);
    EXPECT_EQ(positive, oracle::asymmetric(g));
  }
}

TEST(Property, ComplementPreservesRobustness) {
  // |E delta mu(E)| is the same for a graph and its complement.
  std::mt19937_64 rng(63);
  for (int t = 0; t < 20; ++t) {
    int n = 4 + t % 4;
    Graph g = random_gnp(n, 0.4, rng);
    std::vector<std::pair<Vertex, Vertex>> es;
    for (Vertex u = 1; u <= n; ++u)
      for (Vertex v = u + 1; v <= n; ++v)
        if (!g.has_edge(u, v)) es.emplace_back(u, v);
    EXPECT_EQ(oracle::gamma(g), oracle::gamma(Graph(n, es)));
  }
}

TEST(Property, SuperimposingBoundedDegreeLosesAtMostTwiceTheDegree) {
  // For every mu, |E_{G+H} delta mu(E_{G+H})| >= |E_G delta mu(E_G)| - 2 d(H) |moved(mu)|,
  // hence gamma(G + H) >= gamma(G) - 2 maxdeg(H). Checked per permutation.
  std::mt19937_64 rng(64);
  for (int t = 0; t < 30; ++t) {
    int n = 5 + t % 3;
    Graph g = random_gnp(n, 0.5, rng), h = random_gnp(n, 0.25, rng);
    Graph u = superimpose(g, h);
    const int dh = h.max_degree();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    while (std::next_permutation(p.begin(), p.end()))
      ASSERT_GE(oracle::symdiff_under(u, p), oracle::symdiff_under(g, p) - 2LL * dh * oracle::moved(p));
    EXPECT_GE(oracle::gamma(u), oracle::gamma(g) - Rational(2 * dh));
  }
}

TEST(Property, ExactScanIsTheMinimumOverSampledWitnesses) {
  std::mt19937_64 rng(65);
  for (int t = 0; t < 10; ++t) {
    Graph g = random_gnp(7, 0.5, rng);
    Rational exact = *robustness_exact(g).gamma_exact;
    for (int s = 0; s < 200; ++s) {
      auto p = Permutation::random(7, rng);
      if (p.is_identity()) continue;
      EXPECT_LE(exact, Rational(symdiff_under(g, p), p.nonfixed_count()));
    }
  }
}

TEST(Property, MergeIsCommutativeAndAssociative) {
  std::mt19937_64 rng(66);
  Graph g = random_gnp(6, 0.5, rng);
  const std::uint64_t total = factorial(6);
  for (int t = 0; t < 10; ++t) {
    std::uint64_t a = 1 + rng() % (total - 2), b = a + 1 + rng() % (total - a - 1);
    RobustnessReport x = robustness_exact_range(g, 0, a), y = robustness_exact_range(g, a, b),
                     z = robustness_exact_range(g, b, total);
    RobustnessReport l = merge_reports(merge_reports(x, y), z), r = merge_reports(x, merge_reports(z, y));
    EXPECT_EQ(l.gamma_upper, r.gamma_upper);
    EXPECT_EQ(l.witness, r.witness);
    EXPECT_EQ(l.permutations_examined, static_cast<std::int64_t>(total) - 1);
  }
}

TEST(Property, SymdiffIsAMetricOnLabeledGraphs) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 50; ++t) {
    Graph a = random_gnp(8, 0.5, rng), b = random_gnp(8, 0.5, rng), c = random_gnp(8, 0.5, rng);
    EXPECT_EQ(symdiff(a, b), symdiff(b, a));
    EXPECT_LE(symdiff(a, c), symdiff(a, b) + symdiff(b, c));
    EXPECT_EQ(symdiff(a, a), 0);
  }
}

TEST(Property, ColoredRobustnessOfPlainGraphEqualsPlain) {
  std::mt19937_64 rng(68);
  for (int t = 0; t < 15; ++t) {
    Graph g = random_gnp(5 + t % 3, 0.5, rng);
    EXPECT_EQ(*colored_robustness_exact(ColoredMultiGraph::from_graph(g)).gamma_exact,
              *robustness_exact(g).gamma_exact);
  }
}
