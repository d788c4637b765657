#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rso/dense.hpp"
#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/verify.hpp"

using namespace rso;

TEST(Robustness, ExactMatchesEnumerationOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + t % 5;
    Graph g = random_gnp(n, 0.5, rng);
    RobustnessReport r = robustness_exact(g);
    ASSERT_TRUE(r.gamma_exact.has_value());
    EXPECT_EQ(*r.gamma_exact, oracle::gamma(g));
    EXPECT_EQ(Rational(symdiff_under(g, r.witness), r.witness.nonfixed_count()), *r.gamma_exact);
    EXPECT_EQ(r.permutations_examined, static_cast<std::int64_t>(factorial(n)) - 1);
  }
}

TEST(Robustness, ColoredAndDirectedExactMatchOracle) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    int n = 3 + t % 4;
    std::uniform_int_distribution<int> vx(1, n), col(1, 2);
    std::vector<ColoredEdge> es;
    std::vector<Arc> as;
    for (int i = 0; i < n + 2; ++i) {
      int u = vx(rng), v = vx(rng);
      es.push_back({std::min(u, v), std::max(u, v), col(rng)});
      as.push_back({u, v, col(rng)});
    }
    ColoredMultiGraph m(n, es);
    DirectedColoredMultiGraph d(n, as);
    EXPECT_EQ(*colored_robustness_exact(m).gamma_exact, oracle::colored_gamma(m));
    EXPECT_EQ(*directed_colored_robustness_exact(d).gamma_exact, oracle::directed_gamma(d));
  }
}

TEST(Robustness, SplitScansMergeToTheSingleScan) {
  std::mt19937_64 rng(13);
  Graph g = random_gnp(7, 0.45, rng);
  RobustnessReport whole = robustness_exact(g);
  const std::uint64_t total = factorial(7);
  RobustnessReport a = robustness_exact_range(g, 0, 1000);
  RobustnessReport b = robustness_exact_range(g, 1000, 3000);
  RobustnessReport c = robustness_exact_range(g, 3000, total);
  RobustnessReport m1 = merge_reports(merge_reports(a, b), c);
  RobustnessReport m2 = merge_reports(c, merge_reports(b, a));
  EXPECT_EQ(m1.gamma_upper, *whole.gamma_exact);
  EXPECT_EQ(m1.witness, whole.witness);
  EXPECT_EQ(m2.witness, whole.witness);
  RobustnessReport threaded = robustness_exact(g, 9, 3);
  EXPECT_EQ(threaded.witness, whole.witness);
  EXPECT_EQ(*threaded.gamma_exact, *whole.gamma_exact);
  // The identity-only range contributes nothing.
  EXPECT_EQ(robustness_exact_range(g, 0, 1).permutations_examined, 0);
}

TEST(Robustness, RankingIsLexicographic) {
  std::vector<int> p = {1, 2, 3, 4};
  for (std::uint64_t r = 0; r < 24; ++r) {
    EXPECT_EQ(permutation_from_rank(4, r).images(), p);
    std::next_permutation(p.begin(), p.end());
  }
}

TEST(Robustness, ExactScanRefusesLargeInputs) {
  EXPECT_THROW(robustness_exact(cycle_graph(10), 9), ValidationError);
}

TEST(Robustness, AdversarialIsAnUpperBoundAndSeeded) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 10; ++t) {
    Graph g = random_gnp(8, 0.5, rng);
    AdversarialOptions o;
    o.samples = 500;
    o.seed = 100 + t;
    RobustnessReport adv = robustness_adversarial(g, o);
    RobustnessReport ex = robustness_exact(g);
    EXPECT_GE(adv.gamma_upper, *ex.gamma_exact);
    EXPECT_FALSE(adv.gamma_exact.has_value());
    EXPECT_EQ(Rational(symdiff_under(g, adv.witness), adv.witness.nonfixed_count()), adv.gamma_upper);
    RobustnessReport again = robustness_adversarial(g, o);
    EXPECT_EQ(again.witness, adv.witness);
  }
}

TEST(Robustness, AdversarialFindsTranspositionsOfTwins) {
  // Vertices 1 and 2 have the same neighborhood, so swapping them costs nothing.
  Graph g(5, {{1, 3}, {2, 3}, {3, 4}, {4, 5}});
  AdversarialOptions o;
  o.samples = 10;
  o.seed = 1;
  EXPECT_EQ(robustness_adversarial(g, o).gamma_upper, Rational(0));
}

TEST(SelfOrdered, CertificateIsAnAutomorphism) {
  Graph g = cycle_graph(6);
  SelfOrderResult r = is_self_ordered(g);
  EXPECT_FALSE(r.self_ordered);
  ASSERT_TRUE(r.automorphism.has_value());
  EXPECT_FALSE(r.automorphism->is_identity());
  EXPECT_EQ(apply_permutation(g, *r.automorphism), g);
  auto a6 = first_asymmetric_graph(6);
  ASSERT_TRUE(a6.has_value());
  EXPECT_TRUE(is_self_ordered(*a6).self_ordered);
  EXPECT_TRUE(oracle::asymmetric(*a6));
}

TEST(SelfOrdered, SmallestAsymmetricGraphsHaveSixVertices) {
  for (int n = 2; n <= 5; ++n) EXPECT_FALSE(first_asymmetric_graph(n).has_value()) << n;
  auto g = first_asymmetric_graph(6);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*robustness_exact(*g).gamma_exact, Rational(1, 3));
}

TEST(Expansion, CombinatorialMatchesSubsetOracle) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_gnp(4 + t % 8, 0.35, rng);
    ExpansionReport r = expansion_combinatorial(g);
    ASSERT_TRUE(r.gamma_combinatorial.has_value());
    EXPECT_EQ(*r.gamma_combinatorial, oracle::vertex_expansion(g));
  }
  EXPECT_EQ(*expansion_combinatorial(cycle_graph(8)).gamma_combinatorial, Rational(1, 2));
}

TEST(Expansion, SampledBoundsBracketTheExactValue) {
  std::mt19937_64 rng(16);
  Graph g = random_gnp(14, 0.3, rng);
  Rational exact = *expansion_combinatorial(g).gamma_combinatorial;
  ExpansionReport s = expansion_sampled(g, 2000, 3);
  ASSERT_TRUE(s.gamma_lower && s.gamma_upper);
  EXPECT_LE(*s.gamma_lower, exact);
  EXPECT_GE(*s.gamma_upper, exact);
}

TEST(Expansion, SpectralMatchesEigenDecomposition) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    Graph g;
    do {
      auto r = random_regular_permutation_model(20, 4, rng);
      if (r) g = *r;
    } while (g.n() == 0 || !is_connected(g));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(20, 20);
    for (const auto& e : g.edges()) a(e.u - 1, e.v - 1) = a(e.v - 1, e.u - 1) = 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    Eigen::VectorXd ev = es.eigenvalues();  // ascending
    double top = ev(19);
    double second = std::max(std::abs(ev(0)), std::abs(ev(18)));
    ExpansionReport r = expansion_spectral(g, 5000, t);
    ASSERT_TRUE(r.lambda1 && r.lambda2);
    EXPECT_NEAR(*r.lambda1, top, 1e-6);
    EXPECT_NEAR(*r.lambda2, second, 1e-3);
  }
}

TEST(Distance, ExactMatchesOracleAndSampledBrackets) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 10; ++t) {
    Graph g = random_gnp(6, 0.5, rng), h = random_gnp(6, 0.5, rng);
    IsoDistance d = far_from_isomorphic(g, h, DistanceMode::Exact);
    EXPECT_TRUE(d.exact);
    EXPECT_EQ(d.upper, oracle::iso_distance(g, h));
    EXPECT_EQ(symdiff(g, apply_permutation(h, d.witness)), d.upper);
    IsoDistance s = far_from_isomorphic(g, h, DistanceMode::Sampled, 300, t);
    EXPECT_LE(s.lower, d.upper);
    EXPECT_GE(s.upper, d.upper);
  }
}

TEST(QuasiOrthogonality, InnerProductOnTwoBits) {
  // Rows of IP on nonzero 2-bit strings: 101, 011, 110. Each row has two ones
  // out of three (excess 1/6) and two rows disagree on two of three positions.
  EXPECT_EQ(quasi_orthogonality_error(inner_product_table(2)), Rational(1, 6));
}

TEST(QuasiOrthogonality, ConstantTableIsMaximallyBad) {
  TwoSourceFunction f(4, 4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) f.set(x, y, 1);
  EXPECT_EQ(quasi_orthogonality_error(f), Rational(1, 2));
}

TEST(NonMalleable, DerangementsAndDistances) {
  EXPECT_EQ(all_derangements(4).size(), 9u);
  EXPECT_EQ(all_derangements(5).size(), 44u);
  for (const auto& d : all_derangements(5)) EXPECT_EQ(d.nonfixed_count(), 5);
  // A table depending on x alone: the tampered output determines F exactly.
  TwoSourceFunction f(4, 4);
  for (int y = 0; y < 4; ++y) f.set(0, y, 1), f.set(1, y, 1);
  Permutation swap01({2, 1, 4, 3});
  EXPECT_EQ(nm_distance(f, Permutation({3, 4, 1, 2}), swap01), Rational(1, 2));
  TwoSourceFunction ip(6, 6);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) ip.set(x, y, std::popcount(static_cast<unsigned>((x + 1) & (y + 1))) % 2);
  NmReport r = nm_extractor_error(ip, std::log2(6.0), NmMode::Exact, 0);
  EXPECT_EQ(r.mode, "exact");
  EXPECT_EQ(r.pairs_examined, 265 * 265);
  EXPECT_LE(r.eps, Rational(1, 2));
  EXPECT_EQ(nm_distance(ip, r.f, r.g), r.eps);
  EXPECT_THROW(nm_extractor_error(inner_product_table(3), 3.0, NmMode::Exact, 0), ValidationError);
}
