#include "rso/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "rso/error.hpp"
#include "rso/isomorphism.hpp"

namespace rso {

Graph random_dense(int n, std::uint64_t seed) {
  if (n < 0) throw ValidationError("random_dense: n must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (rng() & 1ULL) es.emplace_back(u, v);
  return Graph(n, es);
}

namespace {

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// The r-th (0-based, lexicographic) h-subset of {1..n}.
std::vector<int> unrank_subset(int n, int h, std::uint64_t r) {
  std::vector<int> out;
  int c = 1;
  while (static_cast<int>(out.size()) < h) {
    const std::uint64_t with = binom(n - c, h - static_cast<int>(out.size()) - 1);
    if (r < with) {
      out.push_back(c);
    } else {
      r -= with;
    }
    ++c;
  }
  return out;
}

Rational abs_r(const Rational& r) { return r < 0 ? -r : r; }

}  // namespace

TwoSourceFunction inner_product_table(int ell) {
  if (ell < 1 || ell > 12) throw ValidationError("inner_product_table: ell must be in 1..12");
  const int n = (1 << ell) - 1;
  TwoSourceFunction f(n, n);
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) f.set(x - 1, y - 1, parity(static_cast<std::uint32_t>(x & y)));
  return f;
}

std::uint32_t small_bias_generator(int ell, std::uint32_t x) {
  if (ell < 2 || ell > 12) throw ValidationError("small_bias_generator: ell must be in 2..12");
  auto bit = [&](int t) { return (x >> (t - 1)) & 1u; };
  const std::uint32_t e1 = bit(1) & bit(2);
  const std::uint32_t e2 = bit(ell - 1) & bit(ell);
  return x | (e1 << ell) | (e2 << (ell + 1));
}

TwoSourceFunction small_bias_bipartite(int ell) {
  const int nx = (1 << ell) - 1;
  const int ny = (1 << (ell + 2)) - 1;
  std::set<std::uint32_t> images;
  for (std::uint32_t x = 1; x <= static_cast<std::uint32_t>(nx); ++x) {
    const std::uint32_t g = small_bias_generator(ell, x);
    if (g == 0) throw ValidationError("small_bias_bipartite: generator maps a nonzero string to zero");
    if (!images.insert(g).second) throw ValidationError("small_bias_bipartite: generator is not injective");
  }
  TwoSourceFunction b(nx, ny);
  for (int x = 1; x <= nx; ++x)
    for (int y = 1; y <= ny; ++y)
      b.set(x - 1, y - 1, parity(small_bias_generator(ell, static_cast<std::uint32_t>(x)) & static_cast<std::uint32_t>(y)));
  return b;
}

TwoSourceFunction search_small_nmE(int n, Rational eps_target, std::uint64_t seed, std::int64_t budget, NmMode mode,
                                   std::int64_t samples) {
  if (n < 2) throw ValidationError("search_small_nmE: N must be at least 2");
  if (budget < 1) throw ValidationError("search_small_nmE: budget must be positive");
  std::mt19937_64 rng(seed);
  const double k = std::log2(static_cast<double>(n));
  for (std::int64_t c = 0; c < budget; ++c) {
    TwoSourceFunction f(n, n);
    for (auto& b : f.table) b = static_cast<std::uint8_t>(rng() & 1ULL);
    Rational qo = quasi_orthogonality_error(f);
    if (qo > eps_target) continue;
    NmReport nm = nm_extractor_error(f, k, mode, seed + static_cast<std::uint64_t>(c), samples);
    if (nm.eps > eps_target) continue;
    f.eps_qo = qo;
    f.eps_nm = nm.eps;
    f.nm_mode = nm.mode;
    f.nm_seed = nm.seed;
    f.k = k;
    return f;
  }
  throw BudgetExhausted("search_small_nmE: no table with both errors <= " + to_string(eps_target) + " among " +
                        std::to_string(budget) + " candidates");
}

TwoSourceFunction make_quasi_orthogonal(const TwoSourceFunction& f, Rational eps, std::vector<int>* kept_rows,
                                        std::vector<int>* kept_cols) {
  std::vector<int> rows(f.n1), cols(f.n2);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  const Rational half(1, 2);
  auto biased = [&](int w, int total) { return total > 0 && abs_r(Rational(w, total) - half) > eps; };
  auto row_w = [&](int x) { int w = 0; for (int y : cols) w += f(x, y); return w; };
  auto col_w = [&](int y) { int w = 0; for (int x : rows) w += f(x, y); return w; };

  // Pass 1 and 2: single rows, then single columns.
  std::vector<int> next;
  for (int x : rows)
    if (!biased(row_w(x), static_cast<int>(cols.size()))) next.push_back(x);
  rows.swap(next);
  next.clear();
  for (int y : cols)
    if (!biased(col_w(y), static_cast<int>(rows.size()))) next.push_back(y);
  cols.swap(next);

  // Pass 3 and 4: a maximal set of disjoint violating pairs, scanned in
  // lexicographic order, is dropped.
  auto drop_pairs = [&](std::vector<int>& mine, const std::vector<int>& other, bool by_row) {
    std::vector<char> gone(mine.size(), 0);
    for (std::size_t a = 0; a < mine.size(); ++a) {
      if (gone[a]) continue;
      for (std::size_t b = a + 1; b < mine.size(); ++b) {
        if (gone[b]) continue;
        int d = 0;
        for (int o : other) d += by_row ? f(mine[a], o) != f(mine[b], o) : f(o, mine[a]) != f(o, mine[b]);
        if (!other.empty() && half - Rational(d, static_cast<int>(other.size())) > eps) {
          gone[a] = gone[b] = 1;
          break;
        }
      }
    }
    std::vector<int> keep;
    for (std::size_t a = 0; a < mine.size(); ++a)
      if (!gone[a]) keep.push_back(mine[a]);
    mine.swap(keep);
  };
  drop_pairs(rows, cols, true);
  drop_pairs(cols, rows, false);

  const std::size_t side = std::min(rows.size(), cols.size());
  rows.resize(side);
  cols.resize(side);
  if (kept_rows) *kept_rows = rows;
  if (kept_cols) *kept_cols = cols;
  TwoSourceFunction out = f.restrict(rows, cols);
  out.eps_qo.reset();
  out.eps_nm.reset();
  out.nm_mode.clear();
  out.nm_seed.reset();
  out.k = f.k;
  return out;
}

TwoSourceFunction enforce_linear_degrees(const TwoSourceFunction& f, double eps_prime) {
  if (f.n1 != f.n2) throw ValidationError("enforce_linear_degrees: domain must be square");
  if (eps_prime < 0 || eps_prime >= 1) throw ValidationError("enforce_linear_degrees: eps' must lie in [0, 1)");
  const int n = f.n1;
  const int m = static_cast<int>(std::ceil(eps_prime * n - 1e-12));
  if (m >= n) throw ValidationError("enforce_linear_degrees: ceil(eps' * N) must be below N");
  TwoSourceFunction out = f;
  out.eps_qo.reset();
  out.eps_nm.reset();
  out.nm_mode.clear();
  out.nm_seed.reset();
  for (int i = 1; i <= m; ++i)
    for (int z = 0; z < n; ++z) out.set(z, (z + i) % n, 1);
  for (int x = 0; x < n; ++x)
    if (out.row_weight(x) < m || out.col_weight(x) < m)
      throw ValidationError("enforce_linear_degrees: a row or column stayed below the target weight");
  return out;
}

Graph nmE_graph(const TwoSourceFunction& f) {
  if (f.n1 != f.n2) throw ValidationError("nmE_graph: domain must be square");
  const int n = f.n1;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j) es.emplace_back(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f(i, j)) es.emplace_back(i + 1, n + j + 1);
  return Graph(2 * n, es);
}

Graph tri_graph(const TwoSourceFunction& f, const TwoSourceFunction& b) {
  if (f.n1 != f.n2) throw ValidationError("tri_graph: extractor domain must be square");
  if (b.n1 != f.n1) throw ValidationError("tri_graph: B must have as many rows as the extractor domain");
  const int n = f.n1, m = b.n2;
  auto v0 = [&](int i) { return static_cast<Vertex>(i + 1); };
  auto v1 = [&](int i) { return static_cast<Vertex>(n + i + 1); };
  auto v2 = [&](int j) { return static_cast<Vertex>(2 * n + j + 1); };
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f(i, j)) es.emplace_back(v0(j), v1(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (b(i, j)) {
        es.emplace_back(v0(i), v2(j));
        es.emplace_back(v1(i), v2(j));
      }
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) es.emplace_back(v1(i), v1(k));
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) es.emplace_back(v2(j), v2(k));
  return Graph(2 * n + m, es);
}

Graph bipartite_graph(const TwoSourceFunction& f) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int x = 0; x < f.n1; ++x)
    for (int y = 0; y < f.n2; ++y)
      if (f(x, y)) es.emplace_back(x + 1, f.n1 + y + 1);
  return Graph(f.n1 + f.n2, es);
}

RestrictedRobustness bipartite_restricted_robustness(const TwoSourceFunction& f, NmMode mode, std::uint64_t seed,
                                                     std::int64_t samples) {
  if (f.n1 < 2 || f.n2 < 2) throw ValidationError("restricted robustness: each side needs at least 2 vertices");
  RestrictedRobustness rep;
  const std::int64_t total = static_cast<std::int64_t>(f.n1) * f.n2;
  const Rational half(1, 2);
  bool have = false;
  auto offer = [&](const Permutation& a, const Permutation& b) {
    std::int64_t diff = 0;
    for (int x = 0; x < f.n1; ++x)
      for (int y = 0; y < f.n2; ++y) diff += f(x, y) != f(a(x + 1) - 1, b(y + 1) - 1);
    Rational r(diff, total);
    ++rep.pairs_examined;
    if (!have || r < rep.min_ratio) rep.min_ratio = r;
    if (!have || r > rep.max_ratio) rep.max_ratio = r;
    Rational dev = abs_r(r - half);
    if (!have || dev > rep.deviation) {
      rep.deviation = dev;
      rep.row_perm = a;
      rep.col_perm = b;
    }
    have = true;
  };
  if (mode == NmMode::Exact) {
    if (f.n1 > 7 || f.n2 > 7) throw ValidationError("restricted robustness: exact mode needs sides of size <= 7");
    rep.mode = "exact";
    auto da = all_derangements(f.n1);
    auto db = all_derangements(f.n2);
    for (const auto& a : da)
      for (const auto& b : db) offer(a, b);
    return rep;
  }
  rep.mode = "sampled";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  auto derangement = [&](int n) {
    for (;;) {
      auto p = Permutation::random(n, rng);
      if (p.nonfixed_count() == n) return p;
    }
  };
  for (std::int64_t s = 0; s < samples; ++s) {
    auto a = derangement(f.n1);
    auto b = derangement(f.n2);
    offer(a, b);
  }
  return rep;
}

ReversalReport reversal_check(const TwoSourceFunction& f, double slack, NmMode mode, std::uint64_t seed,
                              std::int64_t samples) {
  if (f.n1 != f.n2) throw ValidationError("reversal_check: sides must have equal size");
  ReversalReport rep;
  RestrictedRobustness rr = bipartite_restricted_robustness(f, mode, seed, samples);
  rep.restricted_eps = rr.deviation;
  if (!(rr.deviation < Rational(1, 2))) {
    rep.diagnostic = "restricted robustness deviation " + to_string(rr.deviation) +
                     " is not below 1/2; the graph is not robust in the restricted sense, check skipped";
    return rep;
  }
  NmReport nm = nm_extractor_error(f, std::log2(static_cast<double>(f.n1)), mode, seed, samples);
  rep.checked = true;
  rep.nm_eps = nm.eps;
  const double e = to_double(rr.deviation);
  rep.bound = e + std::sqrt(2 * e) + slack;
  rep.holds = to_double(nm.eps) <= rep.bound;
  rep.diagnostic = "nm error " + to_string(nm.eps) + " vs bound " + std::to_string(rep.bound);
  return rep;
}

TamperingReport tampering_counterexample(const TwoSourceFunction& e, NmMode both_mode, std::uint64_t seed,
                                       std::int64_t samples) {
  if (e.n2 != 2 * e.n1) throw ValidationError("tampering_counterexample: E must have N rows and 2N columns");
  const int n = e.n1;
  TamperingReport rep;
  rep.eprime = TwoSourceFunction(2 * n, 2 * n);
  for (int b = 0; b < 2; ++b)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < 2 * n; ++y) rep.eprime.set(b * n + x, y, e(x, y));
  std::vector<Vertex> img(2 * n);
  for (int b = 0; b < 2; ++b)
    for (int x = 0; x < n; ++x) img[b * n + x] = (1 - b) * n + x + 1;
  rep.one_sided = nm_distance(rep.eprime, Permutation(img), Permutation::identity(2 * n));
  rep.both_sided = nm_extractor_error(rep.eprime, std::log2(2.0 * n), both_mode, seed, samples);
  return rep;
}

// ------------------------------------------------------- efficient ordering

nlohmann::json EfficientSoGraph::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["s"] = s;
  j["ell"] = ell;
  j["n"] = graph.n();
  j["s2_pairs"] = s2_pairs;
  j["r1_subsets"] = r1_subsets;
  j["r2_pairs"] = r2_pairs;
  return j;
}

std::string efficient_so_infeasibility(int m, int s) {
  std::vector<std::string> bad;
  if (s < 5) bad.push_back("s >= 5 (so that s-1 < ceil(ell/2) separates S1 from R1)");
  const int ell = s * (s - 1) / 2;
  const std::int64_t lhs = 2LL * (4LL * m - ell), rhs = 8LL * (m - s);
  if (lhs > rhs)
    bad.push_back("degree cap 2(4m - ell) <= 8(m - s) fails: " + std::to_string(lhs) + " > " + std::to_string(rhs));
  if (ell > 0 && ell < 64 && binom(ell, (ell + 1) / 2) < static_cast<std::uint64_t>(std::max(0, m - s)))
    bad.push_back("subset count C(ell, ceil(ell/2)) >= m - s fails");
  if (m - s < 9) bad.push_back("m - s >= 9 (R2 pairs come from a circulant with offsets 1..4)");
  if (ell > 4 * m) bad.push_back("ell <= 4m fails");
  std::string out;
  for (const auto& b : bad) out += (out.empty() ? "" : "; ") + b;
  return out;
}

EfficientSoGraph efficient_so_graph(const Graph& g1, const Graph& g2, int s) {
  const int m = g1.n();
  if (g2.n() != 4 * m) throw ValidationError("efficient_so_graph: G2 must have 4m vertices");
  std::string bad = efficient_so_infeasibility(m, s);
  if (!bad.empty()) throw ValidationError("efficient_so_graph: infeasible parameters: " + bad);
  EfficientSoGraph p;
  p.g1 = g1;
  p.g2 = g2;
  p.m = m;
  p.s = s;
  p.ell = s * (s - 1) / 2;
  const int ell = p.ell, r1 = m - s, r2 = 4 * m - ell;
  for (int a = 1; a <= s; ++a)
    for (int b = a + 1; b <= s; ++b) p.s2_pairs.emplace_back(a, b);
  const int h = (ell + 1) / 2;
  const std::uint64_t total = binom(ell, h);
  for (int j = 0; j < r1; ++j) {
    const auto r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * total / r1);
    p.r1_subsets.push_back(unrank_subset(ell, h, r));
  }
  for (int o = 1; o <= 4 && static_cast<int>(p.r2_pairs.size()) < r2; ++o)
    for (int i = 1; i <= r1 && static_cast<int>(p.r2_pairs.size()) < r2; ++i) {
      int k = (i - 1 + o) % r1 + 1;
      p.r2_pairs.emplace_back(std::min(i, k), std::max(i, k));
    }

  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : g1.edges()) es.emplace_back(e.u, e.v);
  for (const auto& e : g2.edges()) es.emplace_back(m + e.u, m + e.v);
  for (int t = 1; t <= ell; ++t) {
    es.emplace_back(p.s2_pairs[t - 1].first, m + t);
    es.emplace_back(p.s2_pairs[t - 1].second, m + t);
  }
  for (int j = 1; j <= r1; ++j)
    for (int t : p.r1_subsets[j - 1]) es.emplace_back(s + j, m + t);
  for (int t = 1; t <= r2; ++t) {
    es.emplace_back(s + p.r2_pairs[t - 1].first, m + ell + t);
    es.emplace_back(s + p.r2_pairs[t - 1].second, m + ell + t);
  }
  p.graph = Graph(5 * m, es);
  int max1 = 0, min2 = 5 * m;
  for (Vertex v = 1; v <= m; ++v) max1 = std::max(max1, p.graph.degree(v));
  for (Vertex v = m + 1; v <= 5 * m; ++v) min2 = std::min(min2, p.graph.degree(v));
  if (max1 >= min2)
    throw ValidationError("efficient_so_graph: degree gap fails, max G1-side degree " + std::to_string(max1) +
                          " >= min G2-side degree " + std::to_string(min2));
  return p;
}

EfficientSoGraph efficient_so_graph_random(int m, int s, std::uint64_t seed) {
  std::string bad = efficient_so_infeasibility(m, s);
  if (!bad.empty()) throw ValidationError("efficient_so_graph: infeasible parameters: " + bad);
  std::seed_seq sq{seed, std::uint64_t{1}};
  std::mt19937_64 mix(sq);
  const std::uint64_t s1 = mix(), s2 = mix();
  return efficient_so_graph(random_dense(m, s1), random_dense(4 * m, s2), s);
}

Permutation recover_ordering(const Graph& gp, const EfficientSoGraph& p) {
  const int m = p.m, s = p.s, ell = p.ell, n = 5 * m;
  const Graph& g = p.graph;
  if (gp.n() != n || gp.edge_count() != g.edge_count()) throw Rejected("recover_ordering: size or edge count differs");

  // Step 1: the m lowest-degree vertices form the G1 side.
  std::vector<Vertex> by_deg(n);
  std::iota(by_deg.begin(), by_deg.end(), 1);
  std::stable_sort(by_deg.begin(), by_deg.end(), [&](Vertex a, Vertex b) { return gp.degree(a) < gp.degree(b); });
  if (gp.degree(by_deg[m - 1]) >= gp.degree(by_deg[m])) throw Rejected("recover_ordering: no degree gap between sides");
  std::vector<char> side1(n + 1, 0);
  for (int i = 0; i < m; ++i) side1[by_deg[i]] = 1;

  // Step 2: S1 has few neighbors on the G2 side.
  std::vector<Vertex> s1;
  for (Vertex v = 1; v <= n; ++v) {
    if (!side1[v]) continue;
    int c = 0;
    for (Vertex w : gp.neighbors(v)) c += !side1[w];
    if (c < (ell + 1) / 2) {
      if (c != s - 1) throw Rejected("recover_ordering: vertex with an unexpected S1 signature");
      s1.push_back(v);
    }
  }
  if (static_cast<int>(s1.size()) != s) throw Rejected("recover_ordering: S1 has the wrong size");
  std::vector<char> in_s1(n + 1, 0);
  for (Vertex v : s1) in_s1[v] = 1;

  // Step 3: S2 = G2-side vertices adjacent to S1, each with exactly two such neighbors.
  std::vector<Vertex> s2;
  for (Vertex v = 1; v <= n; ++v) {
    if (side1[v]) continue;
    int c = 0;
    for (Vertex w : gp.neighbors(v)) c += in_s1[w];
    if (c == 0) continue;
    if (c != 2) throw Rejected("recover_ordering: S2 vertex without exactly two S1 neighbors");
    s2.push_back(v);
  }
  if (static_cast<int>(s2.size()) != ell) throw Rejected("recover_ordering: S2 has the wrong size");
  std::vector<char> in_s2(n + 1, 0);
  for (Vertex v : s2) in_s2[v] = 1;

  std::map<std::pair<int, int>, int> pair_index;
  for (int t = 1; t <= ell; ++t) pair_index[p.s2_pairs[t - 1]] = t;
  std::map<std::vector<int>, int> subset_index;
  for (int j = 1; j <= m - s; ++j) subset_index[p.r1_subsets[j - 1]] = j;
  std::map<std::pair<int, int>, int> r2_index;
  for (int t = 1; t <= 4 * m - ell; ++t) r2_index[p.r2_pairs[t - 1]] = t;

  // Step 4: backtrack over orderings of S1, pruned by degree and adjacency.
  std::vector<Vertex> phi(n + 1, 0);
  std::vector<Vertex> assign(s + 1, 0);  // S1 position -> G' vertex
  std::vector<char> used(n + 1, 0);
  bool done = false;

  auto try_complete = [&]() -> bool {
    std::vector<Vertex> f(n + 1, 0);
    std::vector<int> pos_of(n + 1, 0);
    for (int a = 1; a <= s; ++a) { f[assign[a]] = a; pos_of[assign[a]] = a; }
    for (Vertex y : s2) {
      std::vector<int> ps;
      for (Vertex w : gp.neighbors(y))
        if (in_s1[w]) ps.push_back(pos_of[w]);
      std::sort(ps.begin(), ps.end());
      auto it = pair_index.find({ps[0], ps[1]});
      if (it == pair_index.end()) return false;
      f[y] = m + it->second;
    }
    for (Vertex z = 1; z <= n; ++z) {
      if (!side1[z] || in_s1[z]) continue;
      std::vector<int> ts;
      for (Vertex w : gp.neighbors(z))
        if (in_s2[w]) ts.push_back(f[w] - m);
      std::sort(ts.begin(), ts.end());
      auto it = subset_index.find(ts);
      if (it == subset_index.end()) return false;
      f[z] = s + it->second;
    }
    // The G1 side must map onto G1 exactly.
    std::vector<char> hit(m + 1, 0);
    for (Vertex z = 1; z <= n; ++z)
      if (side1[z]) {
        if (hit[f[z]]) return false;
        hit[f[z]] = 1;
      }
    for (Vertex z = 1; z <= n; ++z) {
      if (!side1[z]) continue;
      int d1 = 0;
      for (Vertex w : gp.neighbors(z))
        if (side1[w]) {
          ++d1;
          if (!p.g1.has_edge(f[z], f[w])) return false;
        }
      if (d1 != p.g1.degree(f[z])) return false;
    }
    phi = f;
    return true;
  };

  std::function<void(int)> rec = [&](int a) {
    if (done) return;
    if (a > s) {
      done = try_complete();
      return;
    }
    for (Vertex x : s1) {
      if (used[x] || gp.degree(x) != g.degree(a)) continue;
      bool ok = true;
      for (int b = 1; b < a && ok; ++b) ok = gp.has_edge(x, assign[b]) == g.has_edge(a, b);
      if (!ok) continue;
      used[x] = 1;
      assign[a] = x;
      rec(a + 1);
      used[x] = 0;
      if (done) return;
    }
  };
  rec(1);
  if (!done) throw Rejected("recover_ordering: no ordering of S1 yields G1");

  // Step 5: R2 by its pair of R1 neighbors.
  for (Vertex z = 1; z <= n; ++z) {
    if (side1[z] || in_s2[z]) continue;
    std::vector<int> ps;
    for (Vertex w : gp.neighbors(z))
      if (side1[w] && !in_s1[w]) ps.push_back(phi[w] - s);
    if (ps.size() != 2) throw Rejected("recover_ordering: R2 vertex without exactly two R1 neighbors");
    std::sort(ps.begin(), ps.end());
    auto it = r2_index.find({ps[0], ps[1]});
    if (it == r2_index.end()) throw Rejected("recover_ordering: R2 vertex with an unknown R1 pair");
    phi[z] = m + ell + it->second;
  }
  std::vector<Vertex> img(phi.begin() + 1, phi.end());
  Permutation out;
  try {
    out = Permutation(img);
  } catch (const ValidationError&) {
    throw Rejected("recover_ordering: recovered map is not a bijection");
  }
  if (!(apply_permutation(gp, out) == g)) throw Rejected("recover_ordering: recovered map is not an isomorphism");
  return out;
}

Graph combine_dense(const Graph& g1, const Graph& g2, const std::vector<std::pair<Vertex, Vertex>>& cross,
                    int min_gap) {
  const int n1 = g1.n();
  std::vector<std::pair<Vertex, Vertex>> es;
  for (const auto& e : g1.edges()) es.emplace_back(e.u, e.v);
  for (const auto& e : g2.edges()) es.emplace_back(n1 + e.u, n1 + e.v);
  for (auto [u, v] : cross) {
    if (u < 1 || u > n1 || v < 1 || v > g2.n()) throw ValidationError("combine_dense: cross edge out of range");
    es.emplace_back(u, n1 + v);
  }
  Graph g(n1 + g2.n(), es);
  int max1 = 0, min2 = g.n();
  for (Vertex v = 1; v <= n1; ++v) max1 = std::max(max1, g.degree(v));
  for (Vertex v = n1 + 1; v <= g.n(); ++v) min2 = std::min(min2, g.degree(v));
  if (g2.n() > 0 && n1 > 0 && min2 - max1 < min_gap)
    throw ValidationError("combine_dense: degree gap " + std::to_string(min2 - max1) + " below " +
                          std::to_string(min_gap) + " (max first-side degree " + std::to_string(max1) +
                          ", min second-side degree " + std::to_string(min2) + ")");
  return g;
}

}  // namespace rso
