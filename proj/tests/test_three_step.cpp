#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rso/error.hpp"
#include "rso/isomorphism.hpp"
#include "rso/local_order.hpp"
#include "rso/three_step.hpp"
#include "rso/verify.hpp"
#include "toy_base.hpp"

using namespace rso;

namespace {

ThreeStepParams greedy_params() {
  const ToyBase& tb = toy_base();
  ThreeStepParams p;
  p.n = 96;
  p.ell = 8;
  p.dprime = 3;
  p.g1 = tb.params.g1;
  p.g2 = tb.params.g2;
  p.perms = greedy_far_collection(8, 6, 0.5, 3);
  p.seed = 3;
  p.validate();
  return p;
}

}  // namespace

TEST(SmallSearch, ResultsAreRobustAndDistinct) {
  const ToyBase& tb = toy_base();
  for (const Graph* g : {&tb.params.g1, &tb.params.g2}) {
    EXPECT_EQ(g->n(), 8);
    EXPECT_TRUE(is_connected(*g));
    EXPECT_GE(g->min_degree(), 2);
    EXPECT_GT(oracle::gamma(*g), Rational(0));
  }
  EXPECT_LE(tb.params.g1.max_degree(), 3);
  EXPECT_LE(tb.params.g2.max_degree(), 4);
  EXPECT_FALSE(are_isomorphic(tb.params.g1, tb.params.g2));
}

TEST(Components, StructureFromDefinition) {
  const ToyBase& tb = toy_base();
  Permutation pi({2, 1, 4, 3, 6, 5, 8, 7});
  Graph c = component_graph(tb.params.g1, tb.params.g2, pi);
  EXPECT_EQ(c.n(), 16);
  EXPECT_EQ(c.edge_count(), tb.params.g1.edge_count() + tb.params.g2.edge_count() + 8);
  for (Vertex v = 1; v <= 8; ++v) EXPECT_TRUE(c.has_edge(v, 8 + pi(v)));
  std::vector<Vertex> first{1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(induced_subgraph(c, first), tb.params.g1);
}

TEST(Assembly, LocalNeighborsMatchTheAssembledGraph) {
  for (const ThreeStepParams& p : {toy_base().params, greedy_params()}) {
    Graph g = assemble(p);
    EXPECT_EQ(g.n(), p.n);
    for (Vertex v = 1; v <= p.n; ++v) EXPECT_EQ(local_neighbors(p, v), g.neighbors(v)) << v;
    EXPECT_EQ(connected_components(g).size(), static_cast<std::size_t>(p.components()));
  }
}

TEST(Assembly, ComponentsArePairwiseNonIsomorphic) {
  ThreeStepParams p = greedy_params();
  Graph g = assemble(p);
  std::vector<Graph> comps;
  for (int i = 0; i < p.components(); ++i) {
    std::vector<Vertex> vs;
    for (int t = 1; t <= 16; ++t) vs.push_back(i * 16 + t);
    comps.push_back(induced_subgraph(g, vs));
    EXPECT_FALSE(nontrivial_automorphism(comps.back()).has_value());
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) EXPECT_FALSE(are_isomorphic(comps[i], comps[j]));
}

TEST(Params, IndexOfAndJsonRoundTrip) {
  for (const ThreeStepParams& p : {toy_base().params, greedy_params()}) {
    std::set<std::vector<Vertex>> seen;
    for (int i = 1; i <= p.components(); ++i) {
      EXPECT_EQ(p.index_of(p.perm(i)), std::optional<int>(i));
      EXPECT_TRUE(seen.insert(p.perm(i).images()).second);
    }
    ThreeStepParams q = ThreeStepParams::from_json(p.to_json());
    EXPECT_EQ(assemble(q), assemble(p));
    EXPECT_EQ(q.to_json(), p.to_json());
  }
  EXPECT_FALSE(greedy_params().index_of(Permutation::transposition(8, 1, 8)).has_value());
  EXPECT_THROW(ThreeStepParams::from_json(nlohmann::json::parse(R"({"n": "x"})")), ParseError);
}

TEST(Params, ValidationMessages) {
  ThreeStepParams p = greedy_params();
  p.n = 100;
  EXPECT_THROW(p.validate(), ValidationError);
  p = greedy_params();
  p.perms.resize(2);
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(PathFinder, PathsAreWalksWithinTheLengthBound) {
  PathFinderGraph pf = path_finder_graph(4);
  EXPECT_EQ(pf.size(), 64);
  for (Vertex v = 1; v <= pf.size(); ++v) EXPECT_EQ(pf.graph.degree(v), 3);
  EXPECT_TRUE(is_connected(pf.graph));
  for (Vertex u = 1; u <= pf.size(); ++u)
    for (Vertex v = 1; v <= pf.size(); ++v) {
      auto path = pf.find_path(u, v);
      ASSERT_EQ(path.front(), u);
      ASSERT_EQ(path.back(), v);
      ASSERT_LE(static_cast<int>(path.size()) - 1, 3 * pf.ell_h);
      for (std::size_t i = 1; i < path.size(); ++i) ASSERT_TRUE(pf.graph.has_edge(path[i - 1], path[i]));
    }
  EXPECT_EQ(default_path_finder_dim(64), 4);
  EXPECT_EQ(default_path_finder_dim(1024), 7);
}

TEST(TwoCycle, Shape) {
  ColoredMultiGraph m = two_cycle_matching_graph(5, 2, 1);
  EXPECT_EQ(m.n(), 10);
  EXPECT_EQ(m.edge_count(), 5u + 5u + 2u * 5u);
  for (Vertex v = 1; v <= 10; ++v) EXPECT_EQ(m.degree(v), 4);
}

TEST(LocalOrder, PlainRoundTripOnRelabeledCopies) {
  ThreeStepParams p = greedy_params();
  Graph gn = assemble(p);
  for (int copy = 0; copy < 5; ++copy) {
    std::mt19937_64 rng(200 + copy);
    Permutation mu = Permutation::random(gn.n(), rng);
    Permutation inv = mu.inverse();
    Graph h = apply_permutation(gn, mu);
    LocalGraphOracle orc(h);
    LocalOrderer lo(p, orc);
    for (Vertex v = 1; v <= h.n(); v += 7) {
      EXPECT_EQ(lo.order(v), inv(v));
      // Without the path-finder the walk cannot leave the starting component.
      const Vertex same = mu(((inv(v) - 1) / 16) * 16 + 1 + v % 16);
      EXPECT_EQ(lo.reversed(inv(v), same), v);
      const Vertex other = mu((((inv(v) - 1) / 16 + 1) % p.components()) * 16 + 1);
      EXPECT_THROW(lo.reversed(inv(v), other), Rejected);
    }
  }
}

TEST(LocalOrder, AugmentedRoundTripWithinQueryBudget) {
  const ToyBase& tb = toy_base();
  const Graph& gstar = tb.aug.graph;
  const std::int64_t budget = 8LL * tb.params.ell * tb.params.ell * tb.params.ell;
  std::mt19937_64 rng(300);
  Permutation mu = Permutation::random(gstar.n(), rng);
  Permutation inv = mu.inverse();
  Graph h = apply_permutation(gstar, mu);
  LocalGraphOracle orc(h);
  LocalOrderer lo(tb.params, tb.aug, orc);
  std::uniform_int_distribution<int> any(1, h.n());
  for (int t = 0; t < 60; ++t) {
    Vertex v = t < 20 ? mu(1 + t * 3) : any(rng);
    EXPECT_EQ(lo.order(v), inv(v));
    EXPECT_LE(lo.last_queries(), budget);
    EXPECT_EQ(lo.reversed(inv(v), any(rng)), v);
    EXPECT_LE(lo.last_queries(), budget);
  }
}

TEST(LocalOrder, RejectsAForeignGraph) {
  const ToyBase& tb = toy_base();
  std::mt19937_64 rng(301);
  Graph other = apply_permutation(tb.aug.graph, Permutation::random(tb.aug.graph.n(), rng));
  // Remove every edge at one original vertex's image: its gadgets no longer decode.
  std::vector<std::pair<Vertex, Vertex>> es;
  Vertex victim = 0;
  for (Vertex v = 1; v <= other.n(); ++v)
    if (other.degree(v) > tb.aug.degree_threshold) {
      victim = v;
      break;
    }
  ASSERT_NE(victim, 0);
  for (const auto& e : other.edges())
    if (e.u != victim && e.v != victim) es.emplace_back(e.u, e.v);
  Graph broken(other.n(), es);
  LocalGraphOracle orc(broken);
  LocalOrderer lo(tb.params, tb.aug, orc);
  int rejected = 0;
  for (Vertex w : other.neighbors(victim)) {
    try {
      lo.order(w);
    } catch (const Rejected&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}
