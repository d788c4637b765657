#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rso/error.hpp"
#include "rso/permutations.hpp"

using namespace rso;

TEST(PermDistance, CountsDisagreements) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    Permutation a = Permutation::random(9, rng), b = Permutation::random(9, rng);
    int diff = 0;
    for (int v = 1; v <= 9; ++v) diff += a(v) != b(v);
    EXPECT_EQ(perm_distance(a, b), diff);
    EXPECT_EQ(perm_distance(a, b), perm_distance(b, a));
  }
}

TEST(GreedyCollection, PairwiseFarAndSeeded) {
  auto c = greedy_far_collection(10, 8, 0.6, 4);
  ASSERT_EQ(c.size(), 8u);
  EXPECT_TRUE(c[0].is_identity());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_GE(perm_distance(c[i], c[j]), 6);
  EXPECT_EQ(greedy_far_collection(10, 8, 0.6, 4), c);
  EXPECT_THROW(greedy_far_collection(3, 10, 1.0, 1, 50), BudgetExhausted);
}

TEST(Code, DistanceMatchesEnumeration) {
  for (int k = 1; k <= 6; ++k) {
    BinaryCode c = make_small_code(k, 0.4, 100 + k);
    EXPECT_TRUE(c.distance_verified);
    EXPECT_EQ(c.L, static_cast<int>(std::ceil(k / 0.4)));
    int best = c.L + 1;
    for (std::int64_t i = 1; i <= c.size(); ++i)
      for (std::int64_t j = i + 1; j <= c.size(); ++j) best = std::min(best, hamming(c.encode(i), c.encode(j)));
    EXPECT_EQ(c.min_distance, best) << "k = " << k;
  }
}

TEST(Code, EncodeIsLinearAndDecodes) {
  BinaryCode c = make_small_code(5, 0.5, 9);
  Bits zero(c.L, 0);
  EXPECT_EQ(c.encode(1), zero);
  for (std::int64_t i = 1; i <= c.size(); ++i) {
    EXPECT_EQ(c.decode_exact(c.encode(i)), std::optional<std::int64_t>(i));
    for (std::int64_t j = 1; j <= c.size(); ++j) {
      Bits s = c.encode(i);
      Bits t = c.encode(j);
      for (int b = 0; b < c.L; ++b) s[b] ^= t[b];
      EXPECT_EQ(s, c.encode(((i - 1) ^ (j - 1)) + 1));
    }
  }
  Bits w = c.encode(3);
  w[0] ^= 1;
  if (c.min_distance > 1) EXPECT_FALSE(c.decode_exact(w).has_value());
}

TEST(Code, RepetitionCode) {
  BinaryCode r = repetition_code(5);
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(r.min_distance, 5);
  EXPECT_EQ(r.encode(2), Bits(5, 1));
}

TEST(CodePermutations, DistanceIsTwiceHamming) {
  BinaryCode c = make_small_code(6, 6.0 / 16, 8);
  ASSERT_EQ(c.L, 16);
  int min_pd = 1 << 30;
  for (std::int64_t i = 1; i <= c.size(); ++i) {
    Permutation p = code_based_perm(c, i);
    EXPECT_EQ(p.size(), 2 * c.L);
    EXPECT_EQ(perm_to_word(p), c.encode(i));
    EXPECT_EQ(p.compose(p), Permutation::identity(2 * c.L));
    for (std::int64_t j = i + 1; j <= c.size(); ++j) {
      int pd = perm_distance(p, code_based_perm(c, j));
      EXPECT_EQ(pd, 2 * hamming(c.encode(i), c.encode(j)));
      min_pd = std::min(min_pd, pd);
    }
  }
  EXPECT_EQ(min_pd, 2 * c.min_distance);
  EXPECT_EQ(c.min_distance, 3);
}
