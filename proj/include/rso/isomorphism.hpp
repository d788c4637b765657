#ifndef RSO_ISOMORPHISM_HPP
#define RSO_ISOMORPHISM_HPP

#include <functional>
#include <optional>
#include <vector>

#include "rso/graph.hpp"

namespace rso {

// Backtracking isomorphism search for the small graphs this library handles
// (components, gadgets, base graphs). Candidates are pruned by joint color
// refinement and by adjacency consistency with the partial map. This is not a
// general-purpose solver; highly symmetric inputs can take exponential time.
//
// Optional initial colors restrict φ to map a vertex of g only onto a vertex of
// h with the same initial color (index v-1).
struct IsoOptions {
  std::vector<int> g_colors;
  std::vector<int> h_colors;
};

// Calls visit(φ) for every isomorphism φ with φ(g) = h, in lexicographic order
// of the search tree, until visit returns false.
void for_each_isomorphism(const Graph& g, const Graph& h,
                          const std::function<bool(const Permutation&)>& visit,
                          const IsoOptions& opt = {});

std::optional<Permutation> find_isomorphism(const Graph& g, const Graph& h,
                                            const IsoOptions& opt = {});
bool are_isomorphic(const Graph& g, const Graph& h);

// A non-identity automorphism, or nullopt when the graph is asymmetric.
std::optional<Permutation> nontrivial_automorphism(const Graph& g, const IsoOptions& opt = {});

// Calls visit(map) for every injective map of pattern vertices into host
// vertices (map[x-1] is the image of x) that preserves both adjacency and
// non-adjacency, subject to allowed(x, y). Stops when visit returns false.
void for_each_induced_embedding(const Graph& pattern, const Graph& host,
                                const std::function<bool(Vertex, Vertex)>& allowed,
                                const std::function<bool(const std::vector<Vertex>&)>& visit);

// Stable color refinement (1-dimensional Weisfeiler-Leman) of g alone.
// Returned colors are canonical: equal for vertices any automorphism could swap.
std::vector<int> refine_colors(const Graph& g, std::vector<int> initial = {});

}  // namespace rso

#endif
