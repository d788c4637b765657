#include "rso/three_step.hpp"

#include <algorithm>
#include <set>

#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/isomorphism.hpp"
#include "rso/serialize.hpp"

namespace rso {

// ------------------------------------------------------------------ params

Permutation ThreeStepParams::perm(int i) const {
  if (i < 1 || i > components()) throw ValidationError("three-step: component index " + std::to_string(i) + " out of range");
  if (code) return code_based_perm(*code, i);
  return perms.at(i - 1);
}

std::optional<int> ThreeStepParams::index_of(const Permutation& p) const {
  if (code) {
    Bits w;
    try {
      w = perm_to_word(p);
    } catch (const ValidationError&) {
      return std::nullopt;
    }
    auto idx = code->decode_exact(w);
    if (!idx || *idx > components()) return std::nullopt;
    return static_cast<int>(*idx);
  }
  for (int i = 0; i < components() && i < static_cast<int>(perms.size()); ++i)
    if (perms[i] == p) return i + 1;
  return std::nullopt;
}

void ThreeStepParams::validate() const {
  if (ell < 1 || n < 2 * ell || n % (2 * ell)) throw ValidationError("three-step: n must be a positive multiple of 2*ell");
  if (g1.n() != ell || g2.n() != ell) throw ValidationError("three-step: base graphs must have ell vertices");
  if (code) {
    if (2 * code->L != ell) throw ValidationError("three-step: code length L must satisfy 2L = ell");
    if (components() > code->size()) throw ValidationError("three-step: more components than codewords");
  } else {
    if (static_cast<int>(perms.size()) < components()) throw ValidationError("three-step: not enough permutations");
    for (const auto& q : perms)
      if (q.size() != ell) throw ValidationError("three-step: permutation on the wrong domain");
  }
}

nlohmann::json ThreeStepParams::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["ell"] = ell;
  j["dprime"] = dprime;
  j["seed"] = seed;
  j["g1"] = rso::to_json(to_document(g1));
  j["g2"] = rso::to_json(to_document(g2));
  if (code) j["code"] = code->to_json();
  else {
    auto arr = nlohmann::json::array();
    for (int i = 0; i < components(); ++i) arr.push_back(perms[i].images());
    j["perms"] = arr;
  }
  return j;
}

ThreeStepParams ThreeStepParams::from_json(const nlohmann::json& j) {
  ThreeStepParams p;
  try {
    p.n = j.at("n").get<int>();
    p.ell = j.at("ell").get<int>();
    p.dprime = j.value("dprime", 0);
    p.seed = j.value("seed", std::uint64_t{0});
    p.g1 = graph_from_document(document_from_json(j.at("g1")));
    p.g2 = graph_from_document(document_from_json(j.at("g2")));
    if (j.contains("code")) {
      const auto& c = j.at("code");
      BinaryCode code;
      code.k = c.at("k").get<int>();
      code.L = c.at("L").get<int>();
      for (const auto& row : c.at("generator")) {
        Bits b;
        for (char ch : row.get<std::string>()) b.push_back(ch == '1' ? 1 : 0);
        if (static_cast<int>(b.size()) != code.L) throw ParseError("code generator row has the wrong length");
        code.generator.push_back(b);
      }
      if (static_cast<int>(code.generator.size()) != code.k) throw ParseError("code generator has the wrong row count");
      code.min_distance = c.value("min_distance", 0);
      code.distance_verified = c.value("distance_verified", false);
      p.code = code;
    } else {
      for (const auto& arr : j.at("perms")) p.perms.emplace_back(arr.get<std::vector<Vertex>>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("three-step params: ") + ex.what());
  }
  p.validate();
  return p;
}

// -------------------------------------------------------------- generators

ColoredMultiGraph two_cycle_matching_graph(int m, int dprime, std::uint64_t seed) {
  if (m < 2 || dprime < 0) throw ValidationError("two_cycle_matching_graph: need m >= 2, d' >= 0");
  std::vector<ColoredEdge> es;
  for (int i = 1; i <= m; ++i) es.push_back({i, i % m + 1, 1});
  for (int i = 1; i <= m; ++i) es.push_back({m + i, m + i % m + 1, 2});
  std::mt19937_64 rng(seed);
  for (int j = 1; j <= dprime; ++j) {
    auto sigma = Permutation::random(m, rng);
    for (int i = 1; i <= m; ++i) es.push_back({i, m + sigma(i), j + 2});
  }
  return ColoredMultiGraph(2 * m, std::move(es));
}

SmallRsoResult find_rso_small(int ell, int d, std::uint64_t seed, std::int64_t budget, const SmallRsoOptions& opt) {
  if (ell < 1 || d < 0) throw ValidationError("find_rso_small: invalid size or degree");
  std::mt19937_64 rng(seed);
  const double p = d >= ell - 1 ? 0.5 : std::min(0.5, static_cast<double>(d) / (ell - 1) * 1.1);
  SmallRsoResult res;
  for (std::int64_t t = 0; t < budget; ++t) {
    ++res.candidates;
    std::optional<Graph> cand;
    if (opt.regular) cand = random_regular_permutation_model(ell, d, rng);
    else cand = random_gnp(ell, p, rng);
    if (!cand || cand->max_degree() > d || cand->min_degree() < opt.min_degree) continue;
    if (!is_connected(*cand) || !is_self_ordered(*cand).self_ordered) continue;
    if (opt.accept && !opt.accept(*cand)) continue;
    RobustnessReport rep;
    if (opt.exact && ell <= 9) rep = robustness_exact(*cand, 9);
    else {
      AdversarialOptions ao;
      ao.samples = opt.adversarial_samples;
      ao.seed = seed + static_cast<std::uint64_t>(t);
      rep = robustness_adversarial(*cand, ao);
    }
    if (rep.gamma_upper <= opt.threshold) continue;
    res.graph = *cand;
    res.report = rep;
    return res;
  }
  throw BudgetExhausted("find_rso_small: no acceptable graph on " + std::to_string(ell) + " vertices within " +
                        std::to_string(budget) + " candidates");
}

// ---------------------------------------------------------------- assembly

Graph component_graph(const Graph& g1, const Graph& g2, const Permutation& pi) {
  const int ell = g1.n();
  if (g2.n() != ell || pi.size() != ell) throw ValidationError("component_graph: size mismatch");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : g1.edges()) es.emplace_back(e.u, e.v);
  for (const auto& e : g2.edges()) es.emplace_back(ell + e.u, ell + e.v);
  for (Vertex v = 1; v <= ell; ++v) es.emplace_back(v, ell + pi(v));
  return Graph(2 * ell, es);
}

Graph assemble(const ThreeStepParams& p) {
  p.validate();
  const int block = 2 * p.ell;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 1; i <= p.components(); ++i) {
    Graph c = component_graph(p.g1, p.g2, p.perm(i));
    const int off = (i - 1) * block;
    for (const auto& e : c.edges()) es.emplace_back(off + e.u, off + e.v);
  }
  return Graph(p.n, es);
}

std::vector<Vertex> local_neighbors(const ThreeStepParams& p, Vertex v) {
  if (v < 1 || v > p.n) throw ValidationError("local_neighbors: vertex out of range");
  const int block = 2 * p.ell;
  const int i = (v - 1) / block + 1;
  const int x = (v - 1) % block + 1;
  const int off = (i - 1) * block;
  const Permutation pi = p.perm(i);
  std::vector<Vertex> out;
  if (x <= p.ell) {
    for (Vertex w : p.g1.neighbors(x)) out.push_back(off + w);
    out.push_back(off + p.ell + pi(x));
  } else {
    const int y = x - p.ell;
    for (Vertex w : p.g2.neighbors(y)) out.push_back(off + p.ell + w);
    for (Vertex u = 1; u <= p.ell; ++u)
      if (pi(u) == y) out.push_back(off + u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------- path finder

PathFinderGraph path_finder_graph(int ell_h) {
  if (ell_h < 3 || ell_h > 20) throw ValidationError("path_finder_graph: ell_h must be in 3..20");
  PathFinderGraph pf;
  pf.ell_h = ell_h;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (std::uint32_t x = 0; x < (1u << ell_h); ++x)
    for (int i = 1; i <= ell_h; ++i) {
      es.emplace_back(pf.id(x, i), pf.id(x, i % ell_h + 1));
      std::uint32_t y = x ^ (1u << (i - 1));
      if (x < y) es.emplace_back(pf.id(x, i), pf.id(y, i));
    }
  pf.graph = Graph(pf.size(), es);
  return pf;
}

std::vector<Vertex> PathFinderGraph::find_path(Vertex u, Vertex v) const {
  if (u < 1 || u > size() || v < 1 || v > size()) throw ValidationError("find_path: vertex out of range");
  auto [z, k] = coords(u);
  auto [y, j] = coords(v);
  std::vector<Vertex> path{u};
  // Go around the cycle, flipping each differing bit when standing on it.
  while (z != y) {
    if ((z ^ y) >> (k - 1) & 1u) {
      z ^= 1u << (k - 1);
      path.push_back(id(z, k));
      if (z == y) break;
    }
    k = k % ell_h + 1;
    path.push_back(id(z, k));
  }
  // Then along the cycle to position j in the shorter direction.
  int fwd = ((j - k) % ell_h + ell_h) % ell_h;
  int step = fwd <= ell_h - fwd ? 1 : -1;
  while (k != j) {
    k = (k - 1 + step + ell_h) % ell_h + 1;
    path.push_back(id(z, k));
  }
  return path;
}

// ---------------------------------------------------------------- augment

Vertex AugmentedGraph::pf_to_gn(Vertex t, int components, int two_ell) const {
  const int comp = (t - 1) % components;
  const int pos = (t - 1) / components + 1;
  return comp * two_ell + pos;
}

std::optional<Vertex> AugmentedGraph::gn_to_pf(Vertex v, int components, int two_ell) const {
  const int comp = (v - 1) / two_ell;
  const int pos = (v - 1) % two_ell + 1;
  const Vertex t = (pos - 1) * components + comp + 1;
  if (t > pf.size()) return std::nullopt;
  return t;
}

int default_path_finder_dim(int n) {
  int best = 0;
  for (int h = 3; h <= 20; ++h)
    if ((1LL << h) * h <= n) best = h;
  if (!best) throw ValidationError("path finder: n too small for a 3-dimensional path-finder graph");
  return best;
}

AugmentedGraph augment_for_local_ordering(const Graph& gn, const ThreeStepParams& p, std::uint64_t gadget_seed,
                                          int ell_h) {
  p.validate();
  if (gn.n() != p.n) throw ValidationError("augment: graph size does not match params");
  AugmentedGraph a;
  a.n = p.n;
  if (ell_h == 0) ell_h = default_path_finder_dim(p.n);
  a.pf = path_finder_graph(ell_h);
  const int comps = p.components();
  if (a.pf.size() > p.n || a.pf.size() < comps)
    throw ValidationError("augment: path-finder size must lie between the component count and n");

  std::vector<ColoredEdge> es;
  for (const auto& e : gn.edges()) es.push_back({e.u, e.v, a.gn_color});
  for (const auto& e : a.pf.graph.edges())
    es.push_back({a.pf_to_gn(e.u, comps, 2 * p.ell), a.pf_to_gn(e.v, comps, 2 * p.ell), 2});
  ColoredMultiGraph raw(p.n, std::move(es));
  const int d = raw.max_degree();
  a.colored = eligibility_pass(raw, d, 2);
  a.loop_color = 2 * d + 1;

  std::set<int> used;
  for (const auto& e : a.colored.edges()) used.insert(e.color);
  for (int c : used)
    if (c != a.gn_color && c != a.loop_color) a.pf_colors.push_back(c);
  int idx = 0;
  for (int c : used) a.color_to_gadget[c] = idx++;

  a.gadgets = find_gadgets(4, static_cast<int>(used.size()), 6, gadget_seed, false);
  a.gadget_size = 6;
  int gmax = 0;
  for (const auto& g : a.gadgets.gadgets) gmax = std::max(gmax, g.max_degree());
  a.degree_threshold = gmax;
  for (Vertex v = 1; v <= p.n; ++v)
    if (a.colored.degree(v) <= gmax)
      throw ValidationError("augment: vertex " + std::to_string(v) +
                            " would not be distinguishable from gadget vertices by degree");
  a.graph = gadgetize(a.colored, a.gadgets, a.color_to_gadget);
  for (std::size_t j = 0; j < a.colored.edge_count(); ++j) {
    const auto& e = a.colored.edges()[j];
    a.edge_index[{e.u, e.v, e.color}] = j + 1;
  }
  return a;
}

}  // namespace rso
