#include "rso/transforms.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/isomorphism.hpp"
#include "rso/serialize.hpp"

namespace rso {

nlohmann::json GadgetSet::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < gadgets.size(); ++i) {
    nlohmann::json e = rso::to_json(to_document(gadgets[i]));
    e["designated"] = {designated[i].u, designated[i].v};
    j.push_back(std::move(e));
  }
  return j;
}

void GadgetSet::validate() const {
  if (designated.size() != gadgets.size()) throw ValidationError("gadget set: designated edge count mismatch");
  for (std::size_t i = 0; i < gadgets.size(); ++i) {
    const auto& g = gadgets[i];
    const std::string tag = "gadget " + std::to_string(i + 1);
    if (!is_connected(g)) throw ValidationError(tag + " is not connected");
    if (nontrivial_automorphism(g)) throw ValidationError(tag + " has a non-trivial automorphism");
    const Edge& e = designated[i];
    if (!g.has_edge(e.u, e.v) || e.u >= e.v) throw ValidationError(tag + ": designated edge is not an edge");
    std::vector<std::pair<Vertex, Vertex>> rest;
    for (const auto& f : g.edges())
      if (!(f == e)) rest.emplace_back(f.u, f.v);
    if (!is_connected(Graph(g.n(), rest)))
      throw ValidationError(tag + ": removing the designated edge disconnects it");
    for (std::size_t j = 0; j < i; ++j)
      if (are_isomorphic(gadgets[j], g))
        throw ValidationError(tag + " is isomorphic to gadget " + std::to_string(j + 1));
  }
}

ColoredMultiGraph eligibility_pass(const ColoredMultiGraph& m, int d, int c) {
  if (m.max_degree() > d)
    throw ValidationError("eligibility_pass: max degree " + std::to_string(m.max_degree()) + " exceeds d = " +
                          std::to_string(d));
  if (m.max_color() > c)
    throw ValidationError("eligibility_pass: color " + std::to_string(m.max_color()) + " exceeds c = " +
                          std::to_string(c));
  std::map<std::pair<Vertex, Vertex>, int> copies;
  std::vector<ColoredEdge> out;
  out.reserve(m.edge_count() + m.n());
  for (const auto& e : m.edges()) {
    int i = ++copies[{e.u, e.v}];
    out.push_back({e.u, e.v, (i - 1) * d + e.color});
  }
  for (Vertex v = 1; v <= m.n(); ++v) out.push_back({v, v, d * c + 1});
  ColoredMultiGraph r(m.n(), std::move(out));
  if (!r.is_eligible())
    throw ValidationError("eligibility_pass: recoloring did not separate parallel edges (colors must be <= d)");
  return r;
}

Edge choose_designated_edge(const Graph& g) {
  for (const auto& e : g.edges()) {
    std::vector<std::pair<Vertex, Vertex>> rest;
    for (const auto& f : g.edges())
      if (!(f == e)) rest.emplace_back(f.u, f.v);
    if (is_connected(Graph(g.n(), rest))) return e;
  }
  throw ValidationError("gadget has no edge whose removal keeps it connected");
}

GadgetSet find_gadgets(int d, int count, int k, std::uint64_t seed, bool regular, std::int64_t budget) {
  if (k < 6) throw ValidationError("find_gadgets: no asymmetric graph has fewer than 6 vertices (k = " +
                                   std::to_string(k) + ")");
  if (regular && (d * k) % 2) throw ValidationError("find_gadgets: k*d must be even for regular gadgets");
  std::mt19937_64 rng(seed);
  GadgetSet set;
  for (std::int64_t tries = 0; tries < budget && static_cast<int>(set.size()) < count; ++tries) {
    std::optional<Graph> cand;
    if (regular) cand = random_regular_permutation_model(k, d, rng);
    else cand = random_gnp(k, 0.5, rng);
    if (!cand || cand->max_degree() > d || !is_connected(*cand)) continue;
    if (nontrivial_automorphism(*cand)) continue;
    bool fresh = true;
    for (const auto& g : set.gadgets)
      if (are_isomorphic(g, *cand)) { fresh = false; break; }
    if (!fresh) continue;
    Edge e;
    try {
      e = choose_designated_edge(*cand);
    } catch (const ValidationError&) {
      continue;
    }
    set.gadgets.push_back(*cand);
    set.designated.push_back(e);
  }
  if (static_cast<int>(set.size()) < count)
    throw BudgetExhausted("find_gadgets: found only " + std::to_string(set.size()) + " of " +
                          std::to_string(count) + " gadgets within the budget");
  return set;
}

Graph gadgetize(const ColoredMultiGraph& m, const GadgetSet& gadgets, const std::map<int, int>& color_map) {
  if (!m.is_eligible()) throw ValidationError("gadgetize: input multigraph is not eligible");
  if (gadgets.designated.size() != gadgets.gadgets.size())
    throw ValidationError("gadgetize: gadget set is missing designated edges");
  auto gadget_of = [&](int color) -> int {
    int idx;
    if (color_map.empty()) idx = color - 1;
    else {
      auto it = color_map.find(color);
      if (it == color_map.end()) throw ValidationError("gadgetize: color " + std::to_string(color) + " has no gadget");
      idx = it->second;
    }
    if (idx < 0 || idx >= static_cast<int>(gadgets.size()))
      throw ValidationError("gadgetize: color " + std::to_string(color) + " has no gadget");
    return idx;
  };
  int total = m.n();
  for (const auto& e : m.edges()) total += gadgets.gadgets[gadget_of(e.color)].n();
  std::vector<std::pair<Vertex, Vertex>> out;
  int offset = m.n();
  for (const auto& e : m.edges()) {
    int gi = gadget_of(e.color);
    const Graph& g = gadgets.gadgets[gi];
    const Edge& des = gadgets.designated[gi];
    for (const auto& f : g.edges())
      if (!(f == des)) out.emplace_back(offset + f.u, offset + f.v);
    out.emplace_back(std::min(e.u, e.v), offset + des.u);
    out.emplace_back(std::max(e.u, e.v), offset + des.v);
    offset += g.n();
  }
  return Graph(total, out);
}

ColoredMultiGraph directed_to_undirected(const DirectedColoredMultiGraph& d, int d_max) {
  std::set<std::tuple<Vertex, Vertex, int>> seen;
  for (const auto& a : d.arcs())
    if (!seen.insert({a.from, a.to, a.color}).second)
      throw ValidationError("directed_to_undirected: arc " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                            " repeated with color " + std::to_string(a.color));
  for (Vertex v = 1; v <= d.n(); ++v) {
    int c = d.incident_arc_count(v);
    if (c < 3 || c > d_max)
      throw ValidationError("directed_to_undirected: vertex " + std::to_string(v) + " has " + std::to_string(c) +
                            " incident arcs (need 3.." +
                            (d_max == std::numeric_limits<int>::max() ? std::string("d") : std::to_string(d_max)) + ")");
  }
  std::vector<ColoredEdge> es;
  es.reserve(2 * d.arc_count());
  Vertex aux = d.n();
  for (const auto& a : d.arcs()) {
    ++aux;
    es.push_back({a.from, aux, 2 * a.color - 1});
    es.push_back({aux, a.to, 2 * a.color});
  }
  return ColoredMultiGraph(d.n() + static_cast<int>(d.arc_count()), std::move(es));
}

ColoredMultiGraph make_regular_expanding(const Graph& g, int d_target, const Graph& expander) {
  const int n = g.n();
  if (expander.n() != n) throw ValidationError("make_regular_expanding: expander size mismatch");
  if (d_target < g.max_degree() + expander.max_degree())
    throw ValidationError("make_regular_expanding: d_target below maxdeg(G) + maxdeg(expander)");
  if ((static_cast<std::int64_t>(n) * d_target) % 2)
    throw ValidationError("make_regular_expanding: n * d_target must be even");
  std::vector<ColoredEdge> es;
  std::vector<int> deg(n + 1, 0);
  for (const auto& e : g.edges()) { es.push_back({e.u, e.v, 1}); ++deg[e.u]; ++deg[e.v]; }
  for (const auto& e : expander.edges()) { es.push_back({e.u, e.v, 2}); ++deg[e.u]; ++deg[e.v]; }
  // Stubs of deficient vertices ordered by (deficit, id); stub t pairs with stub t + D.
  std::vector<std::pair<int, Vertex>> order;
  for (Vertex v = 1; v <= n; ++v)
    if (deg[v] < d_target) order.emplace_back(d_target - deg[v], v);
  std::sort(order.begin(), order.end());
  std::vector<Vertex> stubs;
  for (auto [def, v] : order)
    for (int i = 0; i < def; ++i) stubs.push_back(v);
  const std::size_t half = stubs.size() / 2;
  for (std::size_t t = 0; t < half; ++t) es.push_back({stubs[t], stubs[t + half], 2});
  return ColoredMultiGraph(n, std::move(es));
}

Graph superimpose(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw ValidationError("superimpose: size mismatch");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : g.edges()) es.emplace_back(e.u, e.v);
  for (const auto& e : h.edges()) es.emplace_back(e.u, e.v);
  return Graph::from_pairs_dedup(g.n(), es);
}

Vertex cloud_vertex(int n, Vertex v, Vertex u) {
  if (u == v || u < 1 || v < 1 || u > n || v > n) throw ValidationError("cloud_vertex: invalid pair");
  return (v - 1) * (n - 1) + (u < v ? u : u - 1);
}

ColoredMultiGraph degree_reduce_dense(const Graph& g, const Graph& cloud_expander) {
  const int n = g.n();
  if (n < 3) throw ValidationError("degree_reduce_dense: need n >= 3");
  if (cloud_expander.n() != n - 1) throw ValidationError("degree_reduce_dense: expander must have n-1 vertices");
  std::vector<ColoredEdge> es;
  for (Vertex v = 1; v <= n; ++v) {
    const Vertex base = (v - 1) * (n - 1);
    for (const auto& e : cloud_expander.edges()) es.push_back({base + e.u, base + e.v, 1});
  }
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex u = v + 1; u <= n; ++u)
      es.push_back({cloud_vertex(n, v, u), cloud_vertex(n, u, v), g.has_edge(u, v) ? 2 : 0});
  return ColoredMultiGraph(n * (n - 1), std::move(es));
}

}  // namespace rso
