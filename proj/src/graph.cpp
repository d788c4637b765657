#include "rso/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "rso/error.hpp"

namespace rso {

namespace {

void require_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": size mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

std::string pair_str(Vertex u, Vertex v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Vertex> images) : img_(std::move(images)) {
  const int n = size();
  std::vector<char> seen(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    Vertex x = img_[i];
    if (x < 1 || x > n || seen[x]) {
      throw ValidationError("permutation: images do not form a bijection of 1.." +
                            std::to_string(n) + " (position " + std::to_string(i + 1) + ")");
    }
    seen[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, Vertex a, Vertex b) {
  if (a < 1 || a > n || b < 1 || b > n) throw ValidationError("transposition: vertex out of range");
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[a - 1], img[b - 1]);
  return Permutation(std::move(img));
}

Permutation Permutation::random(int n, std::mt19937_64& rng) {
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  // Explicit Fisher-Yates so the stream is stable across standard libraries.
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(img[i], img[pick(rng)]);
  }
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(img_.size());
  for (int i = 0; i < size(); ++i) inv[img_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  require_same_size(size(), inner.size(), "compose");
  std::vector<Vertex> out(img_.size());
  for (int i = 0; i < size(); ++i) out[i] = img_[inner.img_[i] - 1];
  return Permutation(std::move(out));
}

int Permutation::nonfixed_count() const {
  int c = 0;
  for (int i = 0; i < size(); ++i) c += (img_[i] != i + 1);
  return c;
}

std::vector<Vertex> Permutation::nonfixed() const {
  std::vector<Vertex> out;
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i + 1) out.push_back(i + 1);
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << img_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------- Graph

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw ValidationError("graph: negative vertex count");
  adj_.assign(n, {});
}

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n)
      throw ValidationError("graph: edge " + pair_str(a, b) + " has an endpoint outside 1.." +
                            std::to_string(n));
    if (a == b) throw ValidationError("graph: edge " + pair_str(a, b) + " is a self-loop");
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw ValidationError("graph: edge " + pair_str(dup->u, dup->v) + " appears twice");
  build_adjacency();
}

Graph Graph::from_pairs_dedup(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::pair<Vertex, Vertex>> norm;
  norm.reserve(edges.size());
  for (auto [a, b] : edges) norm.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  return Graph(n, norm);
}

void Graph::build_adjacency() {
  adj_.assign(n_, {});
  for (const auto& e : edges_) {
    adj_[e.u - 1].push_back(e.v);
    adj_[e.v - 1].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int d = n_;
  for (const auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  const auto& a = adj_[u - 1];
  return std::binary_search(a.begin(), a.end(), v);
}

// ---------------------------------------------------------- ColoredMultiGraph

ColoredMultiGraph::ColoredMultiGraph(int n, std::vector<ColoredEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ValidationError("colored graph: negative vertex count");
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    auto& e = edges_[j];
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
      throw ValidationError("colored graph: edge " + std::to_string(j + 1) + " " +
                            pair_str(e.u, e.v) + " has an endpoint outside 1.." +
                            std::to_string(n));
    if (e.color < 0)
      throw ValidationError("colored graph: edge " + std::to_string(j + 1) + " has negative color");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
}

ColoredMultiGraph ColoredMultiGraph::from_graph(const Graph& g, int color) {
  std::vector<ColoredEdge> es;
  es.reserve(g.edge_count());
  for (const auto& e : g.edges()) es.push_back({e.u, e.v, color});
  return ColoredMultiGraph(g.n(), std::move(es));
}

int ColoredMultiGraph::degree(Vertex v) const {
  int d = 0;
  for (const auto& e : edges_) {
    if (e.u == v) ++d;
    if (e.v == v) ++d;
  }
  return d;
}

int ColoredMultiGraph::max_degree() const {
  std::vector<int> deg(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return n_ ? *std::max_element(deg.begin() + 1, deg.end()) : 0;
}

int ColoredMultiGraph::max_color() const {
  int c = 0;
  for (const auto& e : edges_) c = std::max(c, e.color);
  return c;
}

std::vector<std::size_t> ColoredMultiGraph::incident_edges(Vertex v) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < edges_.size(); ++j)
    if (edges_[j].u == v || edges_[j].v == v) out.push_back(j);
  return out;
}

bool ColoredMultiGraph::is_eligible() const {
  std::vector<char> loop(n_ + 1, 0);
  std::map<std::tuple<Vertex, Vertex, int>, int> seen;
  for (const auto& e : edges_) {
    if (e.u == e.v) loop[e.u] = 1;
    if (++seen[{e.u, e.v, e.color}] > 1) return false;
  }
  for (int v = 1; v <= n_; ++v)
    if (!loop[v]) return false;
  return true;
}

Graph ColoredMultiGraph::underlying_simple() const {
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (const auto& e : edges_)
    if (e.u != e.v) ps.emplace_back(e.u, e.v);
  return Graph::from_pairs_dedup(n_, ps);
}

ColoredMultiGraph ColoredMultiGraph::with_edge_appended(ColoredEdge e) const {
  auto es = edges_;
  es.push_back(e);
  return ColoredMultiGraph(n_, std::move(es));
}

// -------------------------------------------------- DirectedColoredMultiGraph

DirectedColoredMultiGraph::DirectedColoredMultiGraph(int n, std::vector<Arc> arcs)
    : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw ValidationError("directed graph: negative vertex count");
  for (std::size_t j = 0; j < arcs_.size(); ++j) {
    const auto& a = arcs_[j];
    if (a.from < 1 || a.from > n || a.to < 1 || a.to > n)
      throw ValidationError("directed graph: arc " + std::to_string(j + 1) + " (" +
                            std::to_string(a.from) + "->" + std::to_string(a.to) +
                            ") has an endpoint outside 1.." + std::to_string(n));
    if (a.color < 0)
      throw ValidationError("directed graph: arc " + std::to_string(j + 1) + " has negative color");
  }
}

int DirectedColoredMultiGraph::incident_arc_count(Vertex v) const {
  int c = 0;
  for (const auto& a : arcs_) c += (a.from == v || a.to == v);
  return c;
}

Graph DirectedColoredMultiGraph::underlying_simple() const {
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (const auto& a : arcs_)
    if (a.from != a.to) ps.emplace_back(a.from, a.to);
  return Graph::from_pairs_dedup(n_, ps);
}

// ------------------------------------------------------------ permutation action

Graph apply_permutation(const Graph& g, const Permutation& mu) {
  require_same_size(g.n(), mu.size(), "apply_permutation");
  std::vector<std::pair<Vertex, Vertex>> ps;
  ps.reserve(g.edge_count());
  for (const auto& e : g.edges()) ps.emplace_back(mu(e.u), mu(e.v));
  return Graph(g.n(), ps);
}

ColoredMultiGraph apply_permutation(const ColoredMultiGraph& m, const Permutation& mu) {
  require_same_size(m.n(), mu.size(), "apply_permutation");
  std::vector<ColoredEdge> es;
  es.reserve(m.edge_count());
  for (const auto& e : m.edges()) es.push_back({mu(e.u), mu(e.v), e.color});
  return ColoredMultiGraph(m.n(), std::move(es));
}

DirectedColoredMultiGraph apply_permutation(const DirectedColoredMultiGraph& d,
                                            const Permutation& mu) {
  require_same_size(d.n(), mu.size(), "apply_permutation");
  std::vector<Arc> as;
  as.reserve(d.arc_count());
  for (const auto& a : d.arcs()) as.push_back({mu(a.from), mu(a.to), a.color});
  return DirectedColoredMultiGraph(d.n(), std::move(as));
}

std::int64_t symdiff(const Graph& g, const Graph& h) {
  require_same_size(g.n(), h.n(), "symdiff");
  // Both edge lists are sorted, so a merge walk counts the intersection.
  const auto& a = g.edges();
  const auto& b = h.edges();
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++common; ++i; ++j; }
  }
  return static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
}

std::int64_t symdiff_under(const Graph& g, const Permutation& mu) {
  require_same_size(g.n(), mu.size(), "symdiff");
  // |E △ μ(E)| = 2·|{e ∈ E : μ(e) ∉ E}| since both sets have the same size.
  std::int64_t missing = 0;
  for (const auto& e : g.edges())
    if (!g.has_edge(mu(e.u), mu(e.v))) ++missing;
  return 2 * missing;
}

namespace {

template <class Key>
std::int64_t multiset_symdiff(const std::vector<Key>& a, const std::vector<Key>& b) {
  std::map<Key, std::int64_t> diff;
  for (const auto& k : a) ++diff[k];
  for (const auto& k : b) --diff[k];
  std::int64_t s = 0;
  for (const auto& [k, c] : diff) s += c < 0 ? -c : c;
  return s;
}

}  // namespace

std::int64_t colored_symdiff(const ColoredMultiGraph& m, const Permutation& mu) {
  require_same_size(m.n(), mu.size(), "colored_symdiff");
  std::vector<std::tuple<int, Vertex, Vertex>> a, b;
  a.reserve(m.edge_count());
  b.reserve(m.edge_count());
  for (const auto& e : m.edges()) {
    a.emplace_back(e.color, e.u, e.v);
    Vertex x = mu(e.u), y = mu(e.v);
    b.emplace_back(e.color, std::min(x, y), std::max(x, y));
  }
  return multiset_symdiff(a, b);
}

std::int64_t directed_colored_symdiff(const DirectedColoredMultiGraph& d, const Permutation& mu) {
  require_same_size(d.n(), mu.size(), "directed_colored_symdiff");
  std::vector<std::tuple<int, Vertex, Vertex>> a, b;
  a.reserve(d.arc_count());
  b.reserve(d.arc_count());
  for (const auto& arc : d.arcs()) {
    a.emplace_back(arc.color, arc.from, arc.to);
    b.emplace_back(arc.color, mu(arc.from), mu(arc.to));
  }
  return multiset_symdiff(a, b);
}

// ------------------------------------------------------- local representation

LocalRepresentation::LocalRepresentation(const ColoredMultiGraph& m) : m_(&m) {
  incidence_.assign(m.n() + 1, {});
  std::vector<int> deg(m.n() + 1, 0);
  for (std::size_t j = 0; j < m.edge_count(); ++j) {
    const auto& e = m.edges()[j];
    incidence_[e.u].push_back(j + 1);
    if (e.v != e.u) incidence_[e.v].push_back(j + 1);
    ++deg[e.u];
    ++deg[e.v];
  }
  int maxd = 0;
  for (int v = 1; v <= m.n(); ++v) maxd = std::max(maxd, deg[v]);
  by_degree_.assign(maxd + 1, {});
  for (int v = 1; v <= m.n(); ++v) by_degree_[deg[v]].push_back(v);
}

std::size_t LocalRepresentation::g1(Vertex v, int i) const {
  if (v < 1 || v > m_->n() || i < 1) return 0;
  const auto& inc = incidence_[v];
  return static_cast<std::size_t>(i) <= inc.size() ? inc[i - 1] : 0;
}

std::optional<ColoredEdge> LocalRepresentation::g2(std::size_t j) const {
  if (j < 1 || j > m_->edge_count()) return std::nullopt;
  return m_->edges()[j - 1];
}

Vertex LocalRepresentation::g3(int i, int j) const {
  if (j < 0 || j >= static_cast<int>(by_degree_.size()) || i < 1) return 0;
  const auto& vs = by_degree_[j];
  return static_cast<std::size_t>(i) <= vs.size() ? vs[i - 1] : 0;
}

// --------------------------------------------------------------------- oracle

LocalGraphOracle::LocalGraphOracle(const Graph& g)
    : n_(g.n()), fn_([&g](Vertex v) { return g.neighbors(v); }) {}

std::vector<Vertex> LocalGraphOracle::neighbors(Vertex v) {
  ++queries_;
  if (v < 1 || v > n_) throw ValidationError("oracle: vertex " + std::to_string(v) + " out of range");
  return fn_(v);
}

// -------------------------------------------------------------------- helpers

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(g.n() + 1, 0);
  for (Vertex s = 1; s <= g.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (Vertex w : g.neighbors(comp[h]))
        if (!seen[w]) { seen[w] = 1; comp.push_back(w); }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) {
  return g.n() <= 1 || connected_components(g).size() == 1;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vs) {
  std::unordered_map<Vertex, Vertex> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = static_cast<Vertex>(i + 1);
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (Vertex w : g.neighbors(vs[i])) {
      auto it = idx.find(w);
      if (it != idx.end() && it->second > static_cast<Vertex>(i + 1))
        ps.emplace_back(static_cast<Vertex>(i + 1), it->second);
    }
  return Graph(static_cast<int>(vs.size()), ps);
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (const auto& e : g.edges()) ps.emplace_back(e.u, e.v);
  for (const auto& e : h.edges()) ps.emplace_back(e.u + g.n(), e.v + g.n());
  return Graph(g.n() + h.n(), ps);
}

Graph complete_graph(int n) {
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) ps.emplace_back(u, v);
  return Graph(n, ps);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<Vertex, Vertex>> ps;
  if (n >= 3)
    for (int u = 1; u <= n; ++u) ps.emplace_back(u, u % n + 1);
  return Graph(n, ps);
}

Graph path_graph(int n) {
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (int u = 1; u < n; ++u) ps.emplace_back(u, u + 1);
  return Graph(n, ps);
}

}  // namespace rso
