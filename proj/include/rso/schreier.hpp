#ifndef RSO_SCHREIER_HPP
#define RSO_SCHREIER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rso/graph.hpp"
#include "rso/verify.hpp"

namespace rso {

struct PermutationFamily {
  std::vector<Permutation> perms;  // all on the same [n]

  int n() const { return perms.empty() ? 0 : perms.front().size(); }
  int d() const { return static_cast<int>(perms.size()); }
  void validate() const;
};

// Arc v -> π_i(v) colored i, listed color by color then vertex by vertex.
DirectedColoredMultiGraph primary_graph(const PermutationFamily& p);

// Vertices are ordered pairs (u,v), u != v, numbered by pair_vertex. Edge
// {(u,v), (π_i(u), π_i(v))} colored i for every pair and every i.
ColoredMultiGraph secondary_graph(const PermutationFamily& p);
Vertex pair_vertex(int n, Vertex u, Vertex v);

using Mat2 = std::array<std::int64_t, 4>;  // row-major [[a,b],[c,d]]

bool is_prime(std::int64_t p);
// Action of each matrix on the projective line over GF(p). Point (1,i) has id
// i+1 and (0,1) has id p+1.
PermutationFamily sl2_projective_perms(std::int64_t p, const std::vector<Mat2>& matrices);
// Canonical id of the projective point represented by (x, y).
Vertex projective_point_id(std::int64_t p, std::int64_t x, std::int64_t y);

struct SchreierPair {
  DirectedColoredMultiGraph primary;
  ColoredMultiGraph secondary;
};
// Generators [[1,1],[0,1]] and [[0,1],[-1,0]].
SchreierPair sl2_default(std::int64_t p);

struct SufficientConditionReport {
  ExpansionReport secondary_expansion;
  RobustnessReport primary_robustness;
  ExpansionReport primary_expansion;
  // The lower bound used for the secondary graph (exact value when available).
  Rational secondary_gamma{0};
  bool robustness_implication = true;  // primary γ >= secondary γ
  bool expansion_implication = true;   // primary expansion >= min(1/4, secondary γ / 3)
  bool hypothesis_vacuous = false;     // secondary γ == 0
};

struct SufficientConditionOptions {
  int robustness_cap = 9;   // exact scan of the primary up to this many points
  int expansion_cap = 30;   // exact subset scan of the secondary up to this many vertices
  std::int64_t samples = 20000;
  std::uint64_t seed = 0;
  int threads = 1;
};
SufficientConditionReport check_sufficient_condition(const PermutationFamily& p,
                                                     const SufficientConditionOptions& opt = {});

}  // namespace rso

#endif
