#include "rso/pt_reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "rso/error.hpp"
#include "rso/isomorphism.hpp"
#include "rso/local_order.hpp"

namespace rso {

StringProperty code_property(const BinaryCode& c) {
  return {"codeword of a [" + std::to_string(c.L) + "," + std::to_string(c.k) + "] binary code",
          [c](const Bits& s) { return static_cast<int>(s.size()) == c.L && c.decode_exact(s).has_value(); }};
}

nlohmann::json QueryLog::to_json() const {
  nlohmann::json j;
  j["graph_queries"] = graph_queries;
  j["string_queries"] = string_queries;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : entries)
    es.push_back({{"kind", e.kind}, {"u", e.u}, {"v", e.v}, {"string_queries", e.string_queries},
                  {"gadget_pair", e.gadget_pair}});
  j["entries"] = std::move(es);
  return j;
}

nlohmann::json ReverseResult::to_json() const {
  return {{"accept", accept},
          {"reason", reason},
          {"graph_queries", graph_queries},
          {"string_queries", string_queries},
          {"local_calls", local_calls},
          {"pivot", pivot}};
}

// ------------------------------------------------------------ bounded degree

Graph encode_string_bd(const Bits& s, const Graph& gn) {
  const int n = gn.n();
  if (static_cast<int>(s.size()) != n)
    throw ValidationError("encode_string_bd: string length " + std::to_string(s.size()) + " differs from n = " +
                          std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : gn.edges()) es.emplace_back(e.u, e.v);
  for (Vertex i = 1; i <= n; ++i) {
    es.emplace_back(i, n + i);
    es.emplace_back(i, 2 * n + i);
    if (s[i - 1]) es.emplace_back(n + i, 2 * n + i);
  }
  return Graph(3 * n, es);
}

namespace {

// Checks the pendant structure of an alleged G'_s and returns, per base vertex,
// whether its two pendant vertices are adjacent.
struct BdSplit {
  std::vector<Vertex> base;          // vertices of degree >= 3, increasing
  std::map<Vertex, int> bit;         // base vertex -> triangle (1) or wedge (0)
};

BdSplit split_bd(const Graph& g, int n) {
  if (g.n() != 3 * n) throw Rejected("decode: graph has " + std::to_string(g.n()) + " vertices, expected 3n");
  BdSplit out;
  std::vector<int> owner(g.n() + 1, 0);
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (g.degree(v) < 3) continue;
    out.base.push_back(v);
  }
  if (static_cast<int>(out.base.size()) != n)
    throw Rejected("decode: " + std::to_string(out.base.size()) + " vertices of degree >= 3, expected " +
                   std::to_string(n));
  for (Vertex v : out.base) {
    std::vector<Vertex> low;
    for (Vertex w : g.neighbors(v))
      if (g.degree(w) <= 2) low.push_back(w);
    if (low.size() != 2) throw Rejected("decode: base vertex " + std::to_string(v) + " lacks two pendant vertices");
    for (Vertex w : low) {
      if (owner[w]) throw Rejected("decode: pendant vertex " + std::to_string(w) + " is shared");
      owner[w] = v;
    }
    const int d1 = g.degree(low[0]), d2 = g.degree(low[1]);
    const bool joined = g.has_edge(low[0], low[1]);
    if (d1 == 1 && d2 == 1) out.bit[v] = 0;
    else if (d1 == 2 && d2 == 2 && joined) out.bit[v] = 1;
    else throw Rejected("decode: pendant vertices of " + std::to_string(v) + " form neither a wedge nor a triangle");
  }
  return out;
}

}  // namespace

Bits decode_graph_bd(const Graph& gprime, const BdBase& base, BdDecodeMode mode) {
  if (!base.graph) throw ValidationError("decode_graph_bd: base graph missing");
  const Graph& gn = *base.graph;
  const int n = gn.n();
  BdSplit sp = split_bd(gprime, n);
  std::vector<Vertex> phi(gprime.n() + 1, 0);  // base vertex of G' -> vertex of G_n
  if (mode == BdDecodeMode::Exact) {
    Graph h = induced_subgraph(gprime, sp.base);
    auto iso = find_isomorphism(h, gn);
    if (!iso) throw Rejected("decode: base part is not isomorphic to G_n");
    for (std::size_t t = 0; t < sp.base.size(); ++t) phi[sp.base[t]] = (*iso)(static_cast<Vertex>(t + 1));
  } else {
    if (!base.params) throw ValidationError("decode_graph_bd: local mode needs three-step parameters");
    LocalGraphOracle raw(gprime);
    LocalGraphOracle filtered = filtered_oracle(raw, 2);
    std::unique_ptr<LocalOrderer> lo =
        base.aug ? std::make_unique<LocalOrderer>(*base.params, *base.aug, filtered)
                 : std::make_unique<LocalOrderer>(*base.params, filtered);
    std::vector<char> hit(n + 1, 0);
    for (Vertex v : sp.base) {
      Vertex i = lo->order(v);
      if (i < 1 || i > n || hit[i]) throw Rejected("decode: local ordering is not a bijection onto G_n");
      hit[i] = 1;
      phi[v] = i;
    }
    for (Vertex v : sp.base) {
      std::vector<Vertex> mapped;
      for (Vertex w : gprime.neighbors(v))
        if (gprime.degree(w) >= 3) mapped.push_back(phi[w]);
      std::sort(mapped.begin(), mapped.end());
      if (mapped != gn.neighbors(phi[v])) throw Rejected("decode: ordered base part differs from G_n");
    }
  }
  Bits s(n, 0);
  for (Vertex v : sp.base) s[phi[v] - 1] = static_cast<std::uint8_t>(sp.bit[v]);
  return s;
}

BdQueryAdapter::BdQueryAdapter(const Graph& gn, std::function<int(int)> string_oracle)
    : gn_(&gn), s_(std::move(string_oracle)) {}

int BdQueryAdapter::bit(int i, QueryLogEntry& e) {
  ++e.string_queries;
  ++log_.string_queries;
  e.gadget_pair = true;
  return s_(i) ? 1 : 0;
}

std::vector<Vertex> BdQueryAdapter::neighbors(Vertex v) {
  const int n = gn_->n();
  if (v < 1 || v > 3 * n) throw ValidationError("adapter: vertex out of range");
  QueryLogEntry e{"neighbors", v, 0, 0, false};
  ++log_.graph_queries;
  std::vector<Vertex> out;
  if (v <= n) {
    out = gn_->neighbors(v);
    out.push_back(n + v);
    out.push_back(2 * n + v);
  } else {
    const int i = (v - 1) % n + 1;
    const Vertex twin = v <= 2 * n ? 2 * n + i : n + i;
    out.push_back(i);
    if (bit(i, e)) out.push_back(twin);
  }
  std::sort(out.begin(), out.end());
  if (log_.record) log_.entries.push_back(e);
  return out;
}

bool BdQueryAdapter::adjacent(Vertex u, Vertex v) {
  const int n = gn_->n();
  if (u < 1 || u > 3 * n || v < 1 || v > 3 * n) throw ValidationError("adapter: vertex out of range");
  if (u > v) std::swap(u, v);
  QueryLogEntry e{"adjacent", u, v, 0, false};
  ++log_.graph_queries;
  bool out = false;
  if (v <= n) out = gn_->has_edge(u, v);
  else if (u <= n) out = (v == n + u || v == 2 * n + u);
  else if (u <= 2 * n && v == u + n) out = bit(u - n, e) == 1;
  if (log_.record) log_.entries.push_back(e);
  return out;
}

StringTester code_tester(const BinaryCode& c, int checks) {
  if (c.k > 63) throw ValidationError("code_tester: k must be at most 63");
  // Positions whose generator columns are linearly independent, found greedily.
  std::vector<int> positions;
  std::vector<std::uint64_t> basis;  // reduced column vectors, one per position
  std::vector<int> pivot_bit;
  for (int p = 0; p < c.L && static_cast<int>(positions.size()) < c.k; ++p) {
    std::uint64_t col = 0;
    for (int t = 0; t < c.k; ++t) col |= static_cast<std::uint64_t>(c.generator[t][p] & 1) << t;
    std::uint64_t r = col;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (r >> pivot_bit[b] & 1ULL) r ^= basis[b];
    if (!r) continue;
    positions.push_back(p);
    basis.push_back(r);
    pivot_bit.push_back(std::countr_zero(r));
  }
  if (static_cast<int>(positions.size()) != c.k) throw ValidationError("code_tester: generator is not full rank");
  return [c, positions, checks](const std::function<int(int)>& bit, std::mt19937_64& rng) {
    // Solve <m, col_p> = word_p over GF(2) by Gauss-Jordan elimination.
    const int k = c.k;
    std::vector<std::uint64_t> rows;  // augmented: bits 0..k-1 coefficients, bit k value
    for (int p : positions) {
      std::uint64_t row = 0;
      for (int t = 0; t < k; ++t) row |= static_cast<std::uint64_t>(c.generator[t][p] & 1) << t;
      row |= static_cast<std::uint64_t>(bit(p + 1) & 1) << k;
      rows.push_back(row);
    }
    for (int t = 0; t < k; ++t) {
      int piv = -1;
      for (int r = t; r < k; ++r)
        if (rows[r] >> t & 1ULL) { piv = r; break; }
      if (piv < 0) return false;
      std::swap(rows[t], rows[piv]);
      for (int r = 0; r < k; ++r)
        if (r != t && (rows[r] >> t & 1ULL)) rows[r] ^= rows[t];
    }
    std::int64_t msg = 0;
    for (int t = 0; t < k; ++t)
      if (rows[t] >> k & 1ULL) msg |= std::int64_t{1} << t;
    const Bits word = c.encode(msg + 1);
    std::uniform_int_distribution<int> pos(0, c.L - 1);
    for (int q = 0; q < checks; ++q) {
      int p = pos(rng);
      if (bit(p + 1) != word[p]) return false;
    }
    return true;
  };
}

namespace {

struct Abort {
  std::string reason;
};

}  // namespace

ReverseResult reverse_reduction_bd(const StringTester& tester, LocalGraphOracle& gprime,
                                   const ThreeStepParams& params, const AugmentedGraph& aug,
                                   const ReverseParams& rp) {
  const int n = aug.graph.n();
  if (gprime.n() != 3 * n) throw ValidationError("reverse_reduction_bd: oracle must have 3N vertices");
  if (!(rp.eps > 0)) throw ValidationError("reverse_reduction_bd: eps must be positive");
  const int samples = rp.samples > 0 ? rp.samples : static_cast<int>(std::ceil(10.0 / rp.eps));
  ReverseResult res;
  const std::int64_t q0 = gprime.queries();
  std::mt19937_64 rng(rp.seed);

  LocalGraphOracle base = filtered_oracle(gprime, 2);
  LocalOrderer lo(params, aug, base);

  auto nb = [&](Vertex v) { return gprime.neighbors(v); };
  // Pendant pair of v when v looks like a base vertex of some G'_s.
  auto pendants = [&](Vertex v) -> std::optional<std::pair<Vertex, Vertex>> {
    auto ns = nb(v);
    if (ns.size() <= 2) return std::nullopt;
    std::vector<std::pair<Vertex, std::vector<Vertex>>> low;
    for (Vertex w : ns) {
      auto nw = nb(w);
      if (nw.size() <= 2) low.emplace_back(w, std::move(nw));
    }
    if (low.size() != 2) return std::nullopt;
    const auto& [a, na] = low[0];
    const auto& [b, nbb] = low[1];
    if (na.size() == 1 && nbb.size() == 1) return std::make_pair(a, b);
    if (na.size() == 2 && nbb.size() == 2 && std::count(na.begin(), na.end(), b))
      return std::make_pair(a, b);
    return std::nullopt;
  };

  auto finish = [&](bool ok, std::string why) {
    res.accept = ok;
    res.reason = std::move(why);
    res.graph_queries = gprime.queries() - q0;
    return res;
  };

  // Pivot: a random vertex or one of its neighbors.
  std::uniform_int_distribution<int> any(1, 3 * n);
  const Vertex r = any(rng);
  std::vector<Vertex> cands{r};
  for (Vertex w : nb(r)) cands.push_back(w);
  for (Vertex c : cands)
    if (pendants(c)) { res.pivot = c; break; }
  if (!res.pivot) return finish(false, "no pivot near vertex " + std::to_string(r));

  std::unordered_map<Vertex, std::optional<Vertex>> memo;
  auto a_prime = [&](Vertex i) -> std::optional<Vertex> {
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    std::optional<Vertex> out;
    try {
      ++res.local_calls;
      Vertex v = lo.reversed(i, res.pivot);
      if (pendants(v)) {
        ++res.local_calls;
        if (lo.order(v) == i) out = v;
      }
    } catch (const Rejected&) {
    } catch (const ValidationError&) {
    }
    memo[i] = out;
    return out;
  };

  std::uniform_int_distribution<int> idx(1, n);
  // Test 1: A' is defined on sampled indices.
  for (int t = 0; t < samples; ++t) {
    Vertex i = idx(rng);
    if (!a_prime(i)) return finish(false, "domain test: index " + std::to_string(i) + " not located");
  }
  // Test 2: neighborhoods agree with the base graph under A'.
  for (int t = 0; t < samples; ++t) {
    Vertex i = idx(rng);
    auto vi = a_prime(i);
    if (!vi) return finish(false, "neighborhood test: index " + std::to_string(i) + " not located");
    std::vector<Vertex> want;
    for (Vertex j : aug.graph.neighbors(i)) {
      auto vj = a_prime(j);
      if (!vj) return finish(false, "neighborhood test: index " + std::to_string(j) + " not located");
      want.push_back(*vj);
    }
    std::sort(want.begin(), want.end());
    std::vector<Vertex> have = base.neighbors(*vi);
    std::sort(have.begin(), have.end());
    if (want != have) return finish(false, "neighborhood test: mismatch at index " + std::to_string(i));
  }
  // Test 3: emulate the string tester.
  auto bit = [&](int i) -> int {
    ++res.string_queries;
    if (i < 1 || i > n) throw Abort{"tester queried position " + std::to_string(i) + " out of range"};
    auto v = a_prime(i);
    if (!v) throw Abort{"emulation: index " + std::to_string(i) + " not located"};
    auto pr = pendants(*v);
    if (!pr) throw Abort{"emulation: pendant pair of index " + std::to_string(i) + " not found"};
    auto na = nb(pr->first);
    return std::count(na.begin(), na.end(), pr->second) ? 1 : 0;
  };
  try {
    bool ok = tester(bit, rng);
    return finish(ok, ok ? "accepted" : "string tester rejected");
  } catch (const Abort& a) {
    return finish(false, a.reason);
  }
}

// -------------------------------------------------------------------- dense

Graph encode_string_dense(const Bits& s, const Graph& gm, const Graph& g49m) {
  const int m = gm.n();
  if (g49m.n() != 49 * m) throw ValidationError("encode_string_dense: second graph must have 49m vertices");
  if (static_cast<std::int64_t>(s.size()) != static_cast<std::int64_t>(m) * m)
    throw ValidationError("encode_string_dense: string length must be m^2 = " + std::to_string(m * m));
  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : gm.edges()) es.emplace_back(e.u, e.v);
  for (const auto& e : g49m.edges()) es.emplace_back(m + e.u, m + e.v);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (s[static_cast<std::size_t>(i - 1) * m + (j - 1)]) es.emplace_back(i, m + j);
  return Graph(50 * m, es);
}

Bits decode_graph_dense(const Graph& gprime, const Graph& gm, const Graph& g49m) {
  const int m = gm.n();
  const int n = 50 * m;
  if (gprime.n() != n) throw Rejected("decode_dense: graph must have 50m vertices");
  std::vector<Vertex> by_deg(n);
  for (int i = 0; i < n; ++i) by_deg[i] = i + 1;
  std::stable_sort(by_deg.begin(), by_deg.end(),
                   [&](Vertex a, Vertex b) { return gprime.degree(a) < gprime.degree(b); });
  if (gprime.degree(by_deg[m - 1]) >= gprime.degree(by_deg[m]))
    throw Rejected("decode_dense: no degree gap separates the two sides");
  std::vector<Vertex> small(by_deg.begin(), by_deg.begin() + m);
  std::vector<Vertex> large(by_deg.begin() + m, by_deg.end());
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  auto iso_small = find_isomorphism(induced_subgraph(gprime, small), gm);
  if (!iso_small) throw Rejected("decode_dense: low-degree side is not isomorphic to G_m");
  auto iso_large = find_isomorphism(induced_subgraph(gprime, large), g49m);
  if (!iso_large) throw Rejected("decode_dense: high-degree side is not isomorphic to G_49m");
  std::vector<Vertex> img(n, 0);
  for (int t = 0; t < m; ++t) img[small[t] - 1] = (*iso_small)(t + 1);
  for (int t = 0; t < 49 * m; ++t) img[large[t] - 1] = m + (*iso_large)(t + 1);
  Permutation phi(img);
  Bits s(static_cast<std::size_t>(m) * m, 0);
  for (int t = 0; t < m; ++t)
    for (Vertex w : gprime.neighbors(small[t])) {
      const Vertex j = phi(w);
      if (j > m && j <= 2 * m) s[static_cast<std::size_t>(phi(small[t]) - 1) * m + (j - m - 1)] = 1;
    }
  if (!(apply_permutation(gprime, phi) == encode_string_dense(s, gm, g49m)))
    throw Rejected("decode_dense: graph is not an encoding of any string");
  return s;
}

}  // namespace rso
