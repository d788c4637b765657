#ifndef RSO_GRAPH_HPP
#define RSO_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

namespace rso {

using Vertex = int;  // vertex ids are 1-based throughout

struct Edge {
  Vertex u = 0, v = 0;  // u < v
  auto operator<=>(const Edge&) const = default;
};

struct ColoredEdge {
  Vertex u = 0, v = 0;  // u <= v, u == v is a self-loop
  int color = 1;
  auto operator<=>(const ColoredEdge&) const = default;
};

struct Arc {
  Vertex from = 0, to = 0;
  int color = 1;
  auto operator<=>(const Arc&) const = default;
};

// Bijection on 1..n. images()[v-1] holds the image of v.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, Vertex a, Vertex b);
  static Permutation random(int n, std::mt19937_64& rng);

  int size() const { return static_cast<int>(img_.size()); }
  Vertex operator()(Vertex v) const { return img_[v - 1]; }
  const std::vector<Vertex>& images() const { return img_; }

  Permutation inverse() const;
  // (this ∘ inner)(v) = this(inner(v))
  Permutation compose(const Permutation& inner) const;
  int nonfixed_count() const;
  std::vector<Vertex> nonfixed() const;
  bool is_identity() const { return nonfixed_count() == 0; }
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Vertex> img_;
};

// Simple undirected graph on 1..n.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws ValidationError on self-loops, duplicate pairs or out-of-range
  // endpoints; the message names the offending edge.
  Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  // Same as above but silently collapses duplicates.
  static Graph from_pairs_dedup(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v - 1]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v - 1].size()); }
  int max_degree() const;
  int min_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  void build_adjacency();
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// Undirected multigraph with colored edges. Edge indices follow input order.
// Colors are non-negative; 0 is only produced by the dense degree reduction,
// where it marks a non-edge of the source graph.
class ColoredMultiGraph {
 public:
  ColoredMultiGraph() = default;
  explicit ColoredMultiGraph(int n) : n_(n) {}
  ColoredMultiGraph(int n, std::vector<ColoredEdge> edges);

  static ColoredMultiGraph from_graph(const Graph& g, int color = 1);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<ColoredEdge>& edges() const { return edges_; }
  // Self-loops contribute two units.
  int degree(Vertex v) const;
  int max_degree() const;
  int max_color() const;
  // Indices (0-based) of edges touching v, ascending; a self-loop appears once.
  std::vector<std::size_t> incident_edges(Vertex v) const;
  // Every vertex carries a self-loop and parallel edges carry distinct colors.
  bool is_eligible() const;
  // Underlying simple graph: loops dropped, parallels collapsed.
  Graph underlying_simple() const;
  ColoredMultiGraph with_edge_appended(ColoredEdge e) const;

  bool operator==(const ColoredMultiGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<ColoredEdge> edges_;
};

class DirectedColoredMultiGraph {
 public:
  DirectedColoredMultiGraph() = default;
  explicit DirectedColoredMultiGraph(int n) : n_(n) {}
  DirectedColoredMultiGraph(int n, std::vector<Arc> arcs);

  int n() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Number of arcs with v as an endpoint; a self-loop arc counts once.
  int incident_arc_count(Vertex v) const;
  Graph underlying_simple() const;

  bool operator==(const DirectedColoredMultiGraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

// ---- permutation action and symmetric-difference kernels ----

Graph apply_permutation(const Graph& g, const Permutation& mu);
ColoredMultiGraph apply_permutation(const ColoredMultiGraph& m, const Permutation& mu);
DirectedColoredMultiGraph apply_permutation(const DirectedColoredMultiGraph& d, const Permutation& mu);

std::int64_t symdiff(const Graph& g, const Graph& h);
// |E △ μ(E)| for a plain graph.
std::int64_t symdiff_under(const Graph& g, const Permutation& mu);
// Per-color multiset symmetric difference between M and μ(M), summed.
std::int64_t colored_symdiff(const ColoredMultiGraph& m, const Permutation& mu);
std::int64_t directed_colored_symdiff(const DirectedColoredMultiGraph& d, const Permutation& mu);

// ---- local representation ----

class LocalRepresentation {
 public:
  explicit LocalRepresentation(const ColoredMultiGraph& m);
  // 1-based index of the i-th edge incident to v, or 0.
  std::size_t g1(Vertex v, int i) const;
  // The j-th edge (1-based) or nullopt when the graph has fewer edges.
  std::optional<ColoredEdge> g2(std::size_t j) const;
  // The i-th vertex (ascending) of degree j, or 0.
  Vertex g3(int i, int j) const;

 private:
  const ColoredMultiGraph* m_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::vector<Vertex>> by_degree_;
};

// Neighbor-list oracle with a query counter. Each call to neighbors() is one
// query. Instances are meant to be used by a single thread.
class LocalGraphOracle {
 public:
  using NeighborFn = std::function<std::vector<Vertex>(Vertex)>;
  LocalGraphOracle(int n, NeighborFn fn) : n_(n), fn_(std::move(fn)) {}
  explicit LocalGraphOracle(const Graph& g);

  int n() const { return n_; }
  std::vector<Vertex> neighbors(Vertex v);
  std::int64_t queries() const { return queries_; }
  void reset_counter() { queries_ = 0; }

 private:
  int n_;
  NeighborFn fn_;
  std::int64_t queries_ = 0;
};

// ---- small helpers shared by several modules ----

bool is_connected(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
// Induced subgraph on the listed vertices; vertex vs[i] becomes i+1.
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vs);
// Disjoint union, second graph shifted by g.n().
Graph disjoint_union(const Graph& g, const Graph& h);
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);

}  // namespace rso

#endif
