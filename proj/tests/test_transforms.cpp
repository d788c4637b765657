#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/isomorphism.hpp"
#include "rso/schreier.hpp"
#include "rso/transforms.hpp"
#include "rso/verify.hpp"

using namespace rso;

namespace {

const GadgetSet& three_gadgets() {
  static const GadgetSet gs = find_gadgets(4, 3, 6, 2024, false);
  return gs;
}

}  // namespace

TEST(Eligibility, AddsLoopsAndSeparatesParallels) {
  ColoredMultiGraph m(3, {{1, 2, 1}, {1, 2, 1}, {2, 3, 2}, {1, 2, 2}});
  ColoredMultiGraph e = eligibility_pass(m, 4, 2);
  EXPECT_TRUE(e.is_eligible());
  EXPECT_EQ(e.edge_count(), m.edge_count() + 3);
  int loops = 0;
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& x : e.edges()) {
    if (x.u == x.v) {
      ++loops;
      EXPECT_EQ(x.color, 4 * 2 + 1);
    }
    EXPECT_TRUE(seen.insert({x.u, x.v, x.color}).second) << "repeated colored edge";
  }
  EXPECT_EQ(loops, 3);
  EXPECT_THROW(eligibility_pass(m, 1, 2), ValidationError);
}

TEST(Gadgets, SearchResultIsValid) {
  const GadgetSet& gs = three_gadgets();
  ASSERT_EQ(gs.size(), 3u);
  EXPECT_NO_THROW(gs.validate());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    EXPECT_TRUE(oracle::asymmetric(gs.gadgets[i]));
    EXPECT_LE(gs.gadgets[i].max_degree(), 4);
    for (std::size_t j = i + 1; j < gs.size(); ++j) EXPECT_FALSE(are_isomorphic(gs.gadgets[i], gs.gadgets[j]));
  }
  EXPECT_THROW(find_gadgets(3, 1, 5, 1, false), ValidationError);
}

TEST(Gadgets, ValidateRejectsSymmetricGadgets) {
  GadgetSet gs;
  gs.gadgets.push_back(cycle_graph(6));
  gs.designated.push_back({1, 2});
  EXPECT_THROW(gs.validate(), ValidationError);
}

TEST(Gadgetize, SizesAndAttachment) {
  ColoredMultiGraph m(2, {{1, 2, 1}, {1, 1, 2}, {2, 2, 3}});
  ASSERT_TRUE(m.is_eligible());
  const GadgetSet& gs = three_gadgets();
  Graph g = gadgetize(m, gs);
  EXPECT_EQ(g.n(), 2 + 3 * 6);
  std::size_t expected = 0;
  for (const auto& gd : gs.gadgets) expected += gd.edge_count() + 1;  // minus designated, plus two attachments
  EXPECT_EQ(g.edge_count(), expected);
  // Edge 1 (color 1) occupies vertices 3..8; its designated endpoints attach to 1 and 2.
  const Edge d = gs.designated[0];
  EXPECT_TRUE(g.has_edge(1, 2 + d.u));
  EXPECT_TRUE(g.has_edge(2, 2 + d.v));
  EXPECT_FALSE(g.has_edge(2 + d.u, 2 + d.v));
  // Each gadget block induces its gadget minus the designated edge.
  std::vector<Vertex> block;
  for (int t = 1; t <= 6; ++t) block.push_back(2 + t);
  EXPECT_EQ(induced_subgraph(g, block).edge_count(), gs.gadgets[0].edge_count() - 1);
}

TEST(Gadgetize, RejectsIneligibleInput) {
  ColoredMultiGraph m(2, {{1, 2, 1}});
  EXPECT_THROW(gadgetize(m, three_gadgets()), ValidationError);
}

TEST(Directed, SubdividesEveryArc) {
  PermutationFamily fam{{Permutation({2, 3, 1}), Permutation::transposition(3, 1, 2)}};
  DirectedColoredMultiGraph d = primary_graph(fam);
  ColoredMultiGraph u = directed_to_undirected(d);
  EXPECT_EQ(u.n(), 3 + 6);
  EXPECT_EQ(u.edge_count(), 12u);
  for (std::size_t j = 0; j < d.arc_count(); ++j) {
    const Arc& a = d.arcs()[j];
    const Vertex mid = 3 + static_cast<Vertex>(j) + 1;
    int found = 0;
    for (const auto& e : u.edges()) {
      if (e.color == 2 * a.color - 1 && ((e.u == a.from && e.v == mid) || (e.v == a.from && e.u == mid))) ++found;
      if (e.color == 2 * a.color && ((e.u == a.to && e.v == mid) || (e.v == a.to && e.u == mid))) ++found;
    }
    EXPECT_EQ(found, 2) << "arc " << j + 1;
  }
}

TEST(Directed, RejectsLowIncidenceAndRepeats) {
  DirectedColoredMultiGraph few(2, {{1, 2, 1}, {2, 1, 1}});
  EXPECT_THROW(directed_to_undirected(few), ValidationError);
  DirectedColoredMultiGraph rep(3, {{1, 2, 1}, {1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {1, 3, 2}, {2, 1, 2}});
  EXPECT_THROW(directed_to_undirected(rep), ValidationError);
}

TEST(Directed, HalvingBoundFailsOnRotationPlusSwap) {
  // Counterexample to "transformed robustness >= half the directed robustness"
  // for the family {rotation (1 2 3), transposition (1 2)} on three points.
  // Rotating the originals together with their subdivision vertices moves all
  // nine vertices while changing only six colored edges.
  PermutationFamily fam{{Permutation({2, 3, 1}), Permutation::transposition(3, 1, 2)}};
  DirectedColoredMultiGraph d = primary_graph(fam);
  ColoredMultiGraph u = directed_to_undirected(d);
  const Rational directed = *directed_colored_robustness_exact(d).gamma_exact;
  const Rational undirected = *colored_robustness_exact(u).gamma_exact;
  EXPECT_EQ(directed, Rational(2));
  EXPECT_EQ(directed, oracle::directed_gamma(d));
  EXPECT_EQ(undirected, Rational(2, 3));
  EXPECT_EQ(undirected, oracle::colored_gamma(u));
  EXPECT_LT(undirected, directed / 2);
}

TEST(RegularExpanding, PadsToTargetDegree) {
  std::mt19937_64 rng(21);
  Graph g = random_gnp(10, 0.2, rng);
  Graph ex = cycle_graph(10);
  const int target = g.max_degree() + 3;
  ColoredMultiGraph m = make_regular_expanding(g, target, ex);
  for (int v = 1; v <= 10; ++v) EXPECT_EQ(m.degree(v), target);
  int c1 = 0;
  for (const auto& e : m.edges()) c1 += e.color == 1;
  EXPECT_EQ(static_cast<std::size_t>(c1), g.edge_count());
}

TEST(Superimpose, UnionOfEdgeSets) {
  Graph a(4, {{1, 2}, {2, 3}}), b(4, {{2, 3}, {3, 4}});
  Graph s = superimpose(a, b);
  EXPECT_EQ(s, Graph(4, {{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_THROW(superimpose(a, Graph(3)), ValidationError);
}

TEST(DegreeReduction, CloudStructure) {
  Graph g(4, {{1, 2}, {2, 3}, {3, 4}});
  Graph ex = cycle_graph(3);
  ColoredMultiGraph m = degree_reduce_dense(g, ex);
  EXPECT_EQ(m.n(), 4 * 3);
  // Cloud edges: 4 clouds of 3 colored 1; pair edges: C(4,2) colored 2 or 0.
  int c0 = 0, c1 = 0, c2 = 0;
  for (const auto& e : m.edges()) (e.color == 0 ? c0 : e.color == 1 ? c1 : c2)++;
  EXPECT_EQ(c1, 12);
  EXPECT_EQ(c2, 3);
  EXPECT_EQ(c0, 3);
  std::set<Vertex> ids;
  for (int v = 1; v <= 4; ++v)
    for (int u = 1; u <= 4; ++u)
      if (u != v) ids.insert(cloud_vertex(4, v, u));
  EXPECT_EQ(ids.size(), 12u);
  EXPECT_EQ(*ids.begin(), 1);
  EXPECT_EQ(*ids.rbegin(), 12);
}
