#ifndef RSO_VERIFY_HPP
#define RSO_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"
#include "rso/rational.hpp"
#include "rso/two_source.hpp"

namespace rso {

enum class ScanMode { Exact, AdversarialSampled };
std::string to_string(ScanMode m);

struct RobustnessReport {
  std::optional<Rational> gamma_exact;
  Rational gamma_upper{0};
  Permutation witness;
  ScanMode mode = ScanMode::Exact;
  std::int64_t permutations_examined = 0;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
};

// Min-reduction of two partial scans of the same graph. Smaller ratio wins;
// equal ratios keep the lexicographically smaller witness. The result does not
// depend on argument order.
RobustnessReport merge_reports(const RobustnessReport& a, const RobustnessReport& b);

// Exact robustness by scanning all n! - 1 non-trivial permutations. The scan is
// split into `threads` contiguous rank ranges and merged with merge_reports.
RobustnessReport robustness_exact(const Graph& g, int n_limit = 9, int threads = 1);
RobustnessReport colored_robustness_exact(const ColoredMultiGraph& m, int n_limit = 9, int threads = 1);
RobustnessReport directed_colored_robustness_exact(const DirectedColoredMultiGraph& d, int n_limit = 9,
                                                   int threads = 1);

// Partial scan over lexicographic ranks [first, last) of S_n. The identity
// (rank 0) is skipped. A range with no non-trivial permutation yields a report
// with permutations_examined == 0 and an empty witness.
RobustnessReport robustness_exact_range(const Graph& g, std::uint64_t first, std::uint64_t last);
std::uint64_t factorial(int n);
// The permutation of lexicographic rank r in S_n.
Permutation permutation_from_rank(int n, std::uint64_t r);

struct AdversarialOptions {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int three_cycle_cap = 60;
  // Caller-declared vertex blocks. Every pair of equal-size blocks is swapped
  // elementwise (i-th vertex with i-th vertex).
  std::vector<std::vector<Vertex>> blocks;
  // Extra permutations supplied by the caller.
  std::vector<Permutation> extra;
  int threads = 1;
};

// Upper bound on γ over the fixed families plus seeded random permutations.
RobustnessReport robustness_adversarial(const Graph& g, const AdversarialOptions& opt);

struct SelfOrderResult {
  bool self_ordered = false;
  std::optional<Permutation> automorphism;  // certificate when not self-ordered
};
SelfOrderResult is_self_ordered(const Graph& g);

// Enumerates all labeled graphs on n vertices and returns the first asymmetric
// one in edge-mask order, or nullopt. Intended for n <= 7.
std::optional<Graph> first_asymmetric_graph(int n);

struct ExpansionReport {
  std::optional<Rational> gamma_combinatorial;  // exact minimum (exact mode)
  std::optional<Rational> gamma_lower;          // certified lower bound (sampled mode)
  std::optional<Rational> gamma_upper;          // best subset found (sampled mode)
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::string mode;
  std::vector<Vertex> witness;  // a minimizing subset

  nlohmann::json to_json() const;
};

// Exact min over non-empty S with |S| <= n/2 of |N(S) \ S| / |S|.
ExpansionReport expansion_combinatorial(const Graph& g, int n_limit = 20);
// For graphs above the exact cap: lower bound from connectivity (1/floor(n/2)
// when connected, else 0) and an upper bound from seeded subset samples.
ExpansionReport expansion_sampled(const Graph& g, std::int64_t samples, std::uint64_t seed);
// Second-largest adjacency eigenvalue magnitude by deflated power iteration.
ExpansionReport expansion_spectral(const Graph& g, int iterations, std::uint64_t seed);

struct IsoDistance {
  std::int64_t lower = 0;
  std::int64_t upper = 0;  // achieved by witness
  bool exact = false;
  Permutation witness;     // φ with symdiff(G, φ(H)) == upper
};
enum class DistanceMode { Exact, Sampled };
IsoDistance far_from_isomorphic(const Graph& g, const Graph& h, DistanceMode mode,
                                std::int64_t samples = 20000, std::uint64_t seed = 0);

// ε for the conditions: residual rows/columns have at most (1/2+ε) of either
// value, and any two rows (columns) disagree on at least (1/2-ε) of positions.
// With two_sided_pairs the disagreement must also be at most (1/2+ε).
Rational quasi_orthogonality_error(const TwoSourceFunction& f, bool two_sided_pairs = false);

struct NmReport {
  Rational eps{0};
  Permutation f, g;  // maximizing derangement pair
  std::int64_t pairs_examined = 0;
  std::string mode;
  std::optional<std::uint64_t> seed;
};
enum class NmMode { Exact, Sampled };
// Statistical distance between (F(X,Y), F(f(X),g(Y))) and (U_1, F(f(X),g(Y)))
// maximized over derangement pairs. X and Y are uniform on [N] when k >= log2 N;
// otherwise sampled mode draws flat sources of size ceil(2^k).
NmReport nm_extractor_error(const TwoSourceFunction& f, double k, NmMode mode, std::uint64_t seed,
                            std::int64_t samples = 20000);
// Distance for one fixed tampering pair and one pair of flat sources
// (empty source vectors mean uniform).
Rational nm_distance(const TwoSourceFunction& f, const Permutation& tf, const Permutation& tg,
                     const std::vector<int>& xs = {}, const std::vector<int>& ys = {});
// All derangements of [n] in lexicographic order.
std::vector<Permutation> all_derangements(int n);

}  // namespace rso

#endif
