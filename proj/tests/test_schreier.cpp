#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rso/error.hpp"
#include "rso/schreier.hpp"
#include "rso/verify.hpp"

using namespace rso;

namespace {

// Reference action of [[a,b],[c,d]] on the projective line over GF(p), with
// points as normalized pairs: (1, i) or (0, 1).
std::pair<std::int64_t, std::int64_t> act(std::int64_t p, const Mat2& m, std::pair<std::int64_t, std::int64_t> pt) {
  auto md = [p](std::int64_t x) { return ((x % p) + p) % p; };
  std::int64_t x = md(m[0] * pt.first + m[1] * pt.second);
  std::int64_t y = md(m[2] * pt.first + m[3] * pt.second);
  if (x == 0) return {0, 1};
  std::int64_t inv = 1;
  for (std::int64_t e = p - 2, b = x; e > 0; e >>= 1, b = md(b * b))
    if (e & 1) inv = md(inv * b);
  return {1, md(y * inv)};
}

}  // namespace

TEST(Schreier, PrimeCheck) {
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 0; i < 40; ++i)
    if (is_prime(i)) primes.push_back(i);
  EXPECT_EQ(primes, (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}));
}

TEST(Schreier, ProjectiveActionMatchesReference) {
  for (std::int64_t p : {5, 7, 11}) {
    std::vector<Mat2> gens = {{1, 1, 0, 1}, {0, 1, -1, 0}, {2, 1, 1, 1}};
    PermutationFamily fam = sl2_projective_perms(p, gens);
    ASSERT_EQ(fam.n(), p + 1);
    ASSERT_EQ(fam.d(), 3);
    EXPECT_NO_THROW(fam.validate());
    for (int g = 0; g < 3; ++g)
      for (std::int64_t i = 0; i <= p; ++i) {
        std::pair<std::int64_t, std::int64_t> pt = i < p ? std::make_pair(std::int64_t{1}, i)
                                                         : std::make_pair(std::int64_t{0}, std::int64_t{1});
        auto img = act(p, gens[g], pt);
        EXPECT_EQ(fam.perms[g](projective_point_id(p, pt.first, pt.second)),
                  projective_point_id(p, img.first, img.second));
      }
  }
  EXPECT_EQ(projective_point_id(5, 2, 4), projective_point_id(5, 1, 2));
  EXPECT_EQ(projective_point_id(5, 0, 3), 6);
  EXPECT_THROW(sl2_projective_perms(6, {{1, 1, 0, 1}}), ValidationError);
}

TEST(Schreier, PrimaryAndSecondaryShapes) {
  PermutationFamily fam{{Permutation({2, 3, 1}), Permutation({2, 1, 3})}};
  DirectedColoredMultiGraph d = primary_graph(fam);
  EXPECT_EQ(d.n(), 3);
  EXPECT_EQ(d.arc_count(), 6u);
  for (const auto& a : d.arcs()) EXPECT_EQ(fam.perms[a.color - 1](a.from), a.to);
  ColoredMultiGraph s = secondary_graph(fam);
  EXPECT_EQ(s.n(), 6);
  EXPECT_EQ(s.edge_count(), 12u);
  std::set<Vertex> ids;
  for (int u = 1; u <= 3; ++u)
    for (int v = 1; v <= 3; ++v)
      if (u != v) ids.insert(pair_vertex(3, u, v));
  EXPECT_EQ(ids, (std::set<Vertex>{1, 2, 3, 4, 5, 6}));
}

TEST(Schreier, DefaultGeneratorsAtFive) {
  SchreierPair sp = sl2_default(5);
  EXPECT_EQ(sp.primary.n(), 6);
  EXPECT_EQ(sp.primary.arc_count(), 12u);
  EXPECT_EQ(sp.secondary.n(), 30);
  EXPECT_EQ(sp.secondary.edge_count(), 60u);
}

TEST(Schreier, SufficientConditionAtFiveFrozen) {
  SufficientConditionOptions o;
  o.robustness_cap = 9;
  o.expansion_cap = 30;
  SufficientConditionReport r =
      check_sufficient_condition(sl2_projective_perms(5, {{1, 1, 0, 1}, {0, 1, -1, 0}}), o);
  ASSERT_TRUE(r.primary_robustness.gamma_exact.has_value());
  EXPECT_EQ(*r.primary_robustness.gamma_exact, Rational(5, 3));
  EXPECT_EQ(*r.primary_robustness.gamma_exact, oracle::directed_gamma(sl2_default(5).primary));
  ASSERT_TRUE(r.secondary_expansion.gamma_combinatorial.has_value());
  EXPECT_EQ(*r.secondary_expansion.gamma_combinatorial, Rational(1, 3));
  EXPECT_EQ(r.secondary_gamma, Rational(1, 3));
  EXPECT_FALSE(r.hypothesis_vacuous);
  EXPECT_TRUE(r.robustness_implication);
  EXPECT_TRUE(r.expansion_implication);
}

TEST(Schreier, DisconnectedSecondaryIsVacuous) {
  // Two disjoint transpositions leave the pair graph disconnected.
  PermutationFamily fam{{Permutation({2, 1, 4, 3}), Permutation({2, 1, 4, 3})}};
  SufficientConditionReport r = check_sufficient_condition(fam);
  EXPECT_TRUE(r.hypothesis_vacuous);
  EXPECT_EQ(r.secondary_gamma, Rational(0));
}
