#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "oracles.hpp"
#include "rso/dense.hpp"
#include "rso/error.hpp"
#include "rso/verify.hpp"

using namespace rso;

namespace {

// Reference quasi-orthogonality error: the largest deviation of any row or
// column weight from 1/2 and of any pairwise row or column disagreement
// below 1/2, computed directly from the table.
Rational qo_reference(const TwoSourceFunction& f) {
  Rational worst(0);
  auto upd = [&](Rational r) { worst = std::max(worst, r); };
  for (int x = 0; x < f.n1; ++x) {
    int w = 0;
    for (int y = 0; y < f.n2; ++y) w += f(x, y);
    upd(Rational(std::max(w, f.n2 - w), f.n2) - Rational(1, 2));
  }
  for (int y = 0; y < f.n2; ++y) {
    int w = 0;
    for (int x = 0; x < f.n1; ++x) w += f(x, y);
    upd(Rational(std::max(w, f.n1 - w), f.n1) - Rational(1, 2));
  }
  for (int a = 0; a < f.n1; ++a)
    for (int b = a + 1; b < f.n1; ++b) {
      int d = 0;
      for (int y = 0; y < f.n2; ++y) d += f(a, y) != f(b, y);
      upd(Rational(1, 2) - Rational(d, f.n2));
    }
  for (int a = 0; a < f.n2; ++a)
    for (int b = a + 1; b < f.n2; ++b) {
      int d = 0;
      for (int x = 0; x < f.n1; ++x) d += f(x, a) != f(x, b);
      upd(Rational(1, 2) - Rational(d, f.n1));
    }
  return worst;
}

TwoSourceFunction random_table(int r, int c, std::mt19937_64& rng) {
  TwoSourceFunction f(r, c);
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < c; ++y) f.set(x, y, static_cast<int>(rng() & 1));
  return f;
}

}  // namespace

TEST(RandomDense, SeededAndBalanced) {
  EXPECT_EQ(random_dense(50, 7), random_dense(50, 7));
  EXPECT_NE(random_dense(50, 7), random_dense(50, 8));
  Graph g = random_dense(200, 1);
  const double density = static_cast<double>(g.edge_count()) / (200.0 * 199 / 2);
  EXPECT_NEAR(density, 0.5, 0.02);
}

TEST(InnerProduct, EntriesAreParities) {
  TwoSourceFunction f = inner_product_table(4);
  ASSERT_EQ(f.n1, 15);
  for (int x = 1; x <= 15; ++x)
    for (int y = 1; y <= 15; ++y) EXPECT_EQ(f(x - 1, y - 1), std::popcount(static_cast<unsigned>(x & y)) % 2);
}

TEST(QuasiOrthogonality, MatchesReferenceOnRandomTables) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    TwoSourceFunction f = random_table(3 + t % 6, 3 + t % 5, rng);
    EXPECT_EQ(quasi_orthogonality_error(f), qo_reference(f));
  }
  EXPECT_EQ(qo_reference(inner_product_table(2)), Rational(1, 6));
}

TEST(SmallBias, GeneratorAndBipartite) {
  for (std::uint32_t x = 0; x < 16; ++x) {
    std::uint32_t a = x & 1, b = x >> 1 & 1, c = x >> 2 & 1, d = x >> 3 & 1;
    EXPECT_EQ(small_bias_generator(4, x), x | (a & b) << 4 | (c & d) << 5);
  }
  TwoSourceFunction b = small_bias_bipartite(4);
  EXPECT_EQ(b.n1, 15);
  EXPECT_EQ(b.n2, 63);
  EXPECT_LE(quasi_orthogonality_error(b), Rational(3, 10));
  EXPECT_EQ(quasi_orthogonality_error(b), qo_reference(b));
}

TEST(MakeQuasiOrthogonal, KeptRowsAndColumnsPassTheirFilters) {
  // Each pass is measured on the domain left by the earlier passes, so the
  // final table need not meet eps globally. What is guaranteed: kept rows are
  // balanced over all columns, and kept columns are balanced over the rows
  // that survived the row pass.
  std::mt19937_64 rng(42);
  const Rational eps(1, 4), half(1, 2);
  auto within = [&](int w, int total) {
    Rational d = Rational(w, total) - half;
    return (d < Rational(0) ? -d : d) <= eps;
  };
  for (int t = 0; t < 20; ++t) {
    TwoSourceFunction f = random_table(12, 12, rng);
    std::vector<int> rows, cols;
    TwoSourceFunction g = make_quasi_orthogonal(f, eps, &rows, &cols);
    EXPECT_EQ(g.n1, g.n2);
    ASSERT_EQ(static_cast<int>(rows.size()), g.n1);
    ASSERT_EQ(static_cast<int>(cols.size()), g.n2);
    for (int x = 0; x < g.n1; ++x)
      for (int y = 0; y < g.n2; ++y) EXPECT_EQ(g(x, y), f(rows[x], cols[y]));
    std::vector<int> balanced_rows;
    for (int x = 0; x < 12; ++x)
      if (within(f.row_weight(x), 12)) balanced_rows.push_back(x);
    for (int x : rows) EXPECT_TRUE(within(f.row_weight(x), 12));
    for (int y : cols) {
      int w = 0;
      for (int x : balanced_rows) w += f(x, y);
      EXPECT_TRUE(balanced_rows.empty() || within(w, static_cast<int>(balanced_rows.size())));
    }
    EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end()));
  }
}

TEST(MakeQuasiOrthogonal, LeavesAGoodTableIntact) {
  TwoSourceFunction ip = inner_product_table(4);
  std::vector<int> rows, cols;
  TwoSourceFunction g = make_quasi_orthogonal(ip, Rational(1, 4), &rows, &cols);
  EXPECT_EQ(g.n1, 15);
  EXPECT_EQ(g.table, ip.table);
  EXPECT_LE(qo_reference(g), Rational(1, 4));
}

TEST(LinearDegrees, DiagonalBandIsSet) {
  TwoSourceFunction f(10, 10);
  TwoSourceFunction g = enforce_linear_degrees(f, 0.2);
  for (int z = 0; z < 10; ++z) {
    EXPECT_EQ(g(z, (z + 1) % 10), 1);
    EXPECT_EQ(g(z, (z + 2) % 10), 1);
    EXPECT_EQ(g.row_weight(z), 2);
  }
}

TEST(NmSearch, SixByTableFrozen) {
  TwoSourceFunction f = search_small_nmE(6, Rational(35, 100), 1, 10000, NmMode::Exact);
  ASSERT_TRUE(f.eps_qo && f.eps_nm);
  EXPECT_EQ(*f.eps_qo, quasi_orthogonality_error(f));
  EXPECT_EQ(*f.eps_nm, nm_extractor_error(f, std::log2(6.0), NmMode::Exact, 0).eps);
  EXPECT_EQ(*f.eps_nm, Rational(1, 3));
  EXPECT_LE(*f.eps_qo, Rational(35, 100));
}

TEST(DenseGraphs, NmEAndTriShapes) {
  TwoSourceFunction f = inner_product_table(2);
  Graph g = nmE_graph(f);
  EXPECT_EQ(g.n(), 6);
  EXPECT_EQ(g.edge_count(), 3u + 6u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g.has_edge(i + 1, 3 + j + 1), f(i, j) == 1);
  TwoSourceFunction b = small_bias_bipartite(2);
  Graph t = tri_graph(f, b);
  EXPECT_EQ(t.n(), 3 + 3 + b.n2);
  Graph bp = bipartite_graph(f);
  EXPECT_EQ(bp.edge_count(), 6u);
  EXPECT_THROW(nmE_graph(TwoSourceFunction(2, 3)), ValidationError);
}

TEST(Restricted, ExactDeviationBoundsEveryPair) {
  TwoSourceFunction f = search_small_nmE(6, Rational(35, 100), 1, 10000, NmMode::Exact);
  RestrictedRobustness r = bipartite_restricted_robustness(f, NmMode::Exact);
  Graph bp = bipartite_graph(f);
  for (const Permutation& a : all_derangements(6))
    for (const Permutation& b : all_derangements(6)) {
      std::vector<int> img(12);
      for (int v = 1; v <= 6; ++v) img[v - 1] = a(v), img[6 + v - 1] = 6 + b(v);
      Rational ratio(oracle::symdiff_under(bp, img), 36);
      EXPECT_LE(ratio, r.max_ratio);
      EXPECT_GE(ratio, r.min_ratio);
    }
  EXPECT_EQ(r.deviation, std::max(r.max_ratio - Rational(1, 2), Rational(1, 2) - r.min_ratio));
}

TEST(Reversal, CheckHoldsOnTheSearchedTable) {
  TwoSourceFunction f = search_small_nmE(6, Rational(35, 100), 1, 10000, NmMode::Exact);
  ReversalReport r = reversal_check(f, 0.1, NmMode::Exact);
  EXPECT_TRUE(r.checked);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.nm_eps, Rational(1, 3));
}

TEST(Tampering, OneSidedDistanceIsOneHalf) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 5; ++t) {
    TamperingReport r = tampering_counterexample(random_table(3, 6, rng), NmMode::Exact);
    EXPECT_EQ(r.one_sided, Rational(1, 2));
    EXPECT_EQ(r.eprime.n1, 6);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 6; ++y) EXPECT_EQ(r.eprime(x, y), r.eprime(3 + x, y));
  }
}

TEST(EfficientSo, FeasibilityMessages) {
  EXPECT_EQ(efficient_so_infeasibility(100, 9), "");
  EXPECT_NE(efficient_so_infeasibility(100, 4).find("s >= 5"), std::string::npos);
  EXPECT_NE(efficient_so_infeasibility(12, 9), "");
  EXPECT_THROW(efficient_so_graph_random(12, 9, 1), ValidationError);
}

TEST(EfficientSo, RecoversEveryRelabeling) {
  EfficientSoGraph e = efficient_so_graph_random(100, 9, 12);
  EXPECT_EQ(e.graph.n(), 500);
  EXPECT_EQ(e.ell, 36);
  for (int t = 0; t < 10; ++t) {
    std::mt19937_64 rng(600 + t);
    Permutation mu = Permutation::random(e.graph.n(), rng);
    Graph h = apply_permutation(e.graph, mu);
    Permutation phi = recover_ordering(h, e);
    EXPECT_EQ(apply_permutation(h, phi), e.graph);
    EXPECT_EQ(phi, mu.inverse());
  }
}

TEST(EfficientSo, RejectsACorruptedCopy) {
  EfficientSoGraph e = efficient_so_graph_random(100, 9, 12);
  std::vector<std::pair<Vertex, Vertex>> es;
  bool dropped = false;
  for (const auto& x : e.graph.edges()) {
    // Drop one edge between S1 and S2.
    if (!dropped && x.u <= e.s && x.v > e.m && x.v <= e.m + e.ell) {
      dropped = true;
      continue;
    }
    es.emplace_back(x.u, x.v);
  }
  ASSERT_TRUE(dropped);
  EXPECT_THROW(recover_ordering(Graph(e.graph.n(), es), e), Rejected);
}

TEST(CombineDense, EnforcesTheDegreeGap) {
  Graph a = complete_graph(3), b = complete_graph(6);
  EXPECT_NO_THROW(combine_dense(a, b, {{1, 1}}));
  EXPECT_THROW(combine_dense(complete_graph(6), complete_graph(3), {}), ValidationError);
}
