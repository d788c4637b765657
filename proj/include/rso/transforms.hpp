#ifndef RSO_TRANSFORMS_HPP
#define RSO_TRANSFORMS_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"

namespace rso {

// Gadgets used to replace colored edges. gadgets[i] replaces color i+1 unless
// gadgetize is given an explicit color map. Gadgets may differ in size (this is
// how a vertex count that is not n + m*k is reached).
struct GadgetSet {
  std::vector<Graph> gadgets;
  std::vector<Edge> designated;  // {p, q} with p < q, one per gadget

  std::size_t size() const { return gadgets.size(); }
  nlohmann::json to_json() const;
  // Checks connectivity, asymmetry, pairwise non-isomorphism and that
  // removing each designated edge keeps its gadget connected.
  void validate() const;
};

// Adds one self-loop colored d*c+1 per vertex and recolors the i-th copy
// (in input order) of each parallel class to (i-1)*d + color.
ColoredMultiGraph eligibility_pass(const ColoredMultiGraph& m, int d, int c);

// Lexicographically first edge whose removal keeps g connected.
Edge choose_designated_edge(const Graph& g);

// Seeded search for `count` pairwise non-isomorphic connected asymmetric
// k-vertex graphs with max degree <= d (d-regular when `regular`).
// Throws ValidationError for k < 6 and BudgetExhausted when the candidate
// budget runs out.
GadgetSet find_gadgets(int d, int count, int k, std::uint64_t seed, bool regular,
                       std::int64_t budget = 200000);

// Replaces every colored edge by a gadget copy. Edge j (1-based) colored i
// occupies the next block of vertices after the original n; the designated
// edge {p,q} is deleted and {min(u,v),p}, {max(u,v),q} are added.
// color_map sends a color to a 0-based gadget index (identity-minus-one when empty).
Graph gadgetize(const ColoredMultiGraph& m, const GadgetSet& gadgets,
                const std::map<int, int>& color_map = {});

// Each arc (u -> v, color j) becomes a vertex a with {u,a} colored 2j-1 and
// {a,v} colored 2j. Every vertex must have between 3 and d_max incident arcs
// and no arc may be repeated with the same color.
ColoredMultiGraph directed_to_undirected(const DirectedColoredMultiGraph& d,
                                         int d_max = std::numeric_limits<int>::max());

// G colored 1, expander (same vertex set) colored 2, then color-2 padding
// edges until every degree equals d_target.
ColoredMultiGraph make_regular_expanding(const Graph& g, int d_target, const Graph& expander);

Graph superimpose(const Graph& g, const Graph& h);

// Cloud construction: vertex <v,u> (u != v) for every ordered pair; each cloud
// carries the expander's edges colored 1; <v,u>-<u,v> is colored 2 when {u,v}
// is an edge of g and 0 otherwise.
ColoredMultiGraph degree_reduce_dense(const Graph& g, const Graph& cloud_expander);
// 1-based id of <v,u> in the output of degree_reduce_dense.
Vertex cloud_vertex(int n, Vertex v, Vertex u);

}  // namespace rso

#endif
