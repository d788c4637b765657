#ifndef RSO_DENSE_HPP
#define RSO_DENSE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"
#include "rso/rational.hpp"
#include "rso/two_source.hpp"
#include "rso/verify.hpp"

namespace rso {

// Each pair independently present with probability 1/2 (one seeded coin per
// pair, pairs in lexicographic order).
Graph random_dense(int n, std::uint64_t seed);

// Nonzero ell-bit strings S_ell. Row/column x-1 holds the string with binary
// value x (bit t of x is coordinate t+1).
TwoSourceFunction inner_product_table(int ell);

// Generator S_ell -> S_{ell+2}: the string followed by x1*x2 and x_{ell-1}*x_ell.
// For ell = 4 this is (a,b,c,d) -> (a,b,c,d,ab,cd).
std::uint32_t small_bias_generator(int ell, std::uint32_t x);
// B(x, y) = <G(x), y> mod 2 on S_ell x S_{ell+2}. Throws if G is not injective
// or hits zero on S_ell.
TwoSourceFunction small_bias_bipartite(int ell = 4);

// Seeded random tables accepted when both the quasi-orthogonality error and
// the non-malleable error (exact scan for N <= 6, sampled otherwise) are at
// most eps_target. Throws BudgetExhausted when no table passes.
TwoSourceFunction search_small_nmE(int n, Rational eps_target, std::uint64_t seed, std::int64_t budget,
                                   NmMode mode, std::int64_t samples = 20000);

// Discards rows, then columns, then disjoint row pairs, then disjoint column
// pairs that violate quasi-orthogonality with error eps. The longer side is
// finally cut back so the domain is square. kept_rows / kept_cols (0-based
// indices into the input) are filled when given.
TwoSourceFunction make_quasi_orthogonal(const TwoSourceFunction& f, Rational eps,
                                        std::vector<int>* kept_rows = nullptr,
                                        std::vector<int>* kept_cols = nullptr);

// Sets F(z, z+i mod N) = 1 for i = 1..ceil(eps_prime * N).
TwoSourceFunction enforce_linear_degrees(const TwoSourceFunction& f, double eps_prime);

// V1 = 1..N (clique), V0 = N+1..2N; i ~ N+j when F(i-1, j-1) = 1.
Graph nmE_graph(const TwoSourceFunction& f);

// V0 = 1..N, V1 = N+1..2N, V2 = 2N+1..2N+M (N = |F|, M = columns of B).
// F joins V1 to V0, B joins both V0 and V1 to V2, cliques on V1 and V2.
Graph tri_graph(const TwoSourceFunction& f, const TwoSourceFunction& b);

// Bipartite graph with V0 = rows 1..N1 and V1 = columns N1+1..N1+N2.
Graph bipartite_graph(const TwoSourceFunction& f);

// Ratio |E Δ μ(E)| / (N1*N2) over derangements μ that preserve both sides.
struct RestrictedRobustness {
  Rational min_ratio{0}, max_ratio{0};
  Rational deviation{0};  // max |ratio - 1/2|
  Permutation row_perm, col_perm;  // derangement pair attaining the deviation
  std::int64_t pairs_examined = 0;
  std::string mode;
  std::optional<std::uint64_t> seed;
};
RestrictedRobustness bipartite_restricted_robustness(const TwoSourceFunction& f, NmMode mode,
                                                     std::uint64_t seed = 0, std::int64_t samples = 20000);

struct ReversalReport {
  bool checked = false;   // false when the robustness precondition fails
  bool holds = false;
  Rational restricted_eps{0};
  Rational nm_eps{0};
  double bound = 0;       // restricted_eps + sqrt(2 restricted_eps) + slack
  std::string diagnostic;
};
// Measures the restricted-robustness deviation ε and the non-malleable error
// of F on uniform sources, and checks nm error <= ε + sqrt(2ε) + slack.
ReversalReport reversal_check(const TwoSourceFunction& f, double slack, NmMode mode, std::uint64_t seed = 0,
                              std::int64_t samples = 20000);

struct TamperingReport {
  TwoSourceFunction eprime;  // E'(b x', y) = E(x', y) on [2N] x [2N]
  Rational one_sided{0};     // distance under f(b x') = (1-b) x', g = identity
  NmReport both_sided;       // best distance over derangement pairs
};
// E has N rows and 2N columns; row index b*N + x' of E' copies row x' of E.
TamperingReport tampering_counterexample(const TwoSourceFunction& e, NmMode both_mode, std::uint64_t seed = 0,
                                       std::int64_t samples = 20000);

// Dense graph with a designated structure that makes self-ordering easy.
// G1 on 1..m with S1 = 1..s; G2 on m+1..5m with S2 = m+1..m+ell, ell = C(s,2).
struct EfficientSoGraph {
  Graph graph;
  Graph g1, g2;
  int m = 0, s = 0, ell = 0;
  std::vector<std::pair<int, int>> s2_pairs;    // S2 vertex t -> pair of S1 positions
  std::vector<std::vector<int>> r1_subsets;     // R1 vertex j -> sorted S2 positions (1..ell)
  std::vector<std::pair<int, int>> r2_pairs;    // R2 vertex t -> pair of R1 positions (1..m-s)

  nlohmann::json to_json() const;
};
// Throws ValidationError naming the violated inequality when the parameters
// are infeasible or the two sides are not separated by degree.
EfficientSoGraph efficient_so_graph(const Graph& g1, const Graph& g2, int s);
// Both halves from random_dense with seeds derived from `seed`.
EfficientSoGraph efficient_so_graph_random(int m, int s, std::uint64_t seed);
// Feasibility check alone; returns an empty string when feasible.
std::string efficient_so_infeasibility(int m, int s);

// φ with φ(G') = graph, or Rejected when G' is not an isomorphic copy.
Permutation recover_ordering(const Graph& gprime, const EfficientSoGraph& p);

// G1 on 1..n1, G2 shifted by n1, plus cross edges (u in G1, v in G2, local
// ids). Throws unless every G1 vertex has smaller degree than every G2 vertex
// by at least min_gap.
Graph combine_dense(const Graph& g1, const Graph& g2, const std::vector<std::pair<Vertex, Vertex>>& cross,
                    int min_gap = 1);

}  // namespace rso

#endif
