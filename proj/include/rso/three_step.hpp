#ifndef RSO_THREE_STEP_HPP
#define RSO_THREE_STEP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"
#include "rso/permutations.hpp"
#include "rso/transforms.hpp"
#include "rso/verify.hpp"

namespace rso {

// Parameters of the assembled graph G_n: n / (2*ell) components, the i-th being
// component_graph(g1, g2, perm(i)) on vertices (i-1)*2*ell+1 .. i*2*ell.
struct ThreeStepParams {
  int n = 0;
  int ell = 0;
  int dprime = 0;
  Graph g1;  // G' on [ell]
  Graph g2;  // G'' on [ell]
  std::vector<Permutation> perms;   // explicit collection (greedy source)
  std::optional<BinaryCode> code;   // code source: perm(i) = code_based_perm(code, i)
  std::uint64_t seed = 0;

  int components() const { return n / (2 * ell); }
  Permutation perm(int i) const;
  // Index i with perm(i) == p, or nullopt. Code source decodes without error.
  std::optional<int> index_of(const Permutation& p) const;
  void validate() const;
  nlohmann::json to_json() const;
  static ThreeStepParams from_json(const nlohmann::json& j);
};

// Two m-cycles (colors 1 and 2) joined by d' seeded perfect matchings between
// [m] and [m+1..2m], matching j colored j+2.
ColoredMultiGraph two_cycle_matching_graph(int m, int dprime, std::uint64_t seed);

struct SmallRsoResult {
  Graph graph;
  RobustnessReport report;
  std::int64_t candidates = 0;
};

struct SmallRsoOptions {
  bool exact = true;         // exact robustness (needs ell <= 9); else adversarial
  bool regular = false;      // d-regular candidates from the permutation model
  int min_degree = 1;        // reject candidates with a smaller minimum degree
  Rational threshold{0};     // reject candidates with γ <= threshold
  std::int64_t adversarial_samples = 5000;
  std::function<bool(const Graph&)> accept;  // extra filter, e.g. non-isomorphism
};

// Seeded search for a connected asymmetric graph on ell vertices with max
// degree <= d whose robustness exceeds the threshold.
SmallRsoResult find_rso_small(int ell, int d, std::uint64_t seed, std::int64_t budget,
                              const SmallRsoOptions& opt = {});

Graph component_graph(const Graph& g1, const Graph& g2, const Permutation& pi);
Graph assemble(const ThreeStepParams& p);
// Neighbors of v in G_n computed from (component, position), the base graphs
// and perm(component) only.
std::vector<Vertex> local_neighbors(const ThreeStepParams& p, Vertex v);

// Degree-reduced hypercube: vertex <x,i> (x in [0, 2^h), i in 1..h) has id
// x*h + i; edges <x,i>-<x,i%h+1> and <x,i>-<x xor 2^(i-1), i>.
struct PathFinderGraph {
  int ell_h = 0;
  Graph graph;

  int size() const { return (1 << ell_h) * ell_h; }
  Vertex id(std::uint32_t x, int i) const { return static_cast<Vertex>(x) * ell_h + i; }
  std::pair<std::uint32_t, int> coords(Vertex v) const {
    return {static_cast<std::uint32_t>((v - 1) / ell_h), (v - 1) % ell_h + 1};
  }
  // Walk from u to v of length at most 3*ell_h; consecutive vertices adjacent.
  std::vector<Vertex> find_path(Vertex u, Vertex v) const;
};
PathFinderGraph path_finder_graph(int ell_h);

// G_n superimposed with an embedded path-finder graph, made eligible and
// gadgetized. Holds everything the local algorithms need to see through the
// gadgets.
struct AugmentedGraph {
  Graph graph;                   // G*
  ColoredMultiGraph colored;     // eligible multigraph that was gadgetized
  GadgetSet gadgets;
  std::map<int, int> color_to_gadget;
  PathFinderGraph pf;
  int n = 0;                     // |V(G_n)|
  int gadget_size = 0;
  int gn_color = 1;
  std::vector<int> pf_colors;
  int loop_color = 0;
  int degree_threshold = 0;      // original vertices have degree > threshold
  // (min endpoint, max endpoint, color) -> 1-based edge index in `colored`.
  std::map<std::tuple<Vertex, Vertex, int>, std::size_t> edge_index;

  // Embedding of path-finder vertex t into G_n (round-robin over components).
  Vertex pf_to_gn(Vertex t, int components, int two_ell) const;
  std::optional<Vertex> gn_to_pf(Vertex v, int components, int two_ell) const;
};

// Largest h >= 3 with h * 2^h <= n.
int default_path_finder_dim(int n);
AugmentedGraph augment_for_local_ordering(const Graph& gn, const ThreeStepParams& p, std::uint64_t gadget_seed,
                                          int ell_h = 0);

}  // namespace rso

#endif
