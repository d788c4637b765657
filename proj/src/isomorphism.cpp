#include "rso/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "rso/error.hpp"

namespace rso {

namespace {

using ColorKey = std::pair<int, std::vector<int>>;

// Joint refinement of several graphs so that colors are comparable across them.
std::vector<std::vector<int>> joint_refine(const std::vector<const Graph*>& gs,
                                           const std::vector<std::vector<int>>& init) {
  std::vector<std::vector<int>> col(gs.size());
  {
    std::map<int, int> remap;
    for (std::size_t k = 0; k < gs.size(); ++k) {
      col[k].resize(gs[k]->n());
      for (int v = 0; v < gs[k]->n(); ++v) {
        int c = init[k].empty() ? 0 : init[k][v];
        remap.emplace(c, 0);
        col[k][v] = c;
      }
    }
    int idx = 0;
    for (auto& [c, i] : remap) i = idx++;
    for (auto& cv : col)
      for (auto& c : cv) c = remap[c];
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<ColorKey, int> keys;
    std::vector<std::vector<ColorKey>> sig(gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) {
      sig[k].resize(gs[k]->n());
      for (int v = 0; v < gs[k]->n(); ++v) {
        std::vector<int> nb;
        nb.reserve(gs[k]->degree(v + 1));
        for (Vertex w : gs[k]->neighbors(v + 1)) nb.push_back(col[k][w - 1]);
        std::sort(nb.begin(), nb.end());
        sig[k][v] = {col[k][v], std::move(nb)};
        keys.emplace(sig[k][v], 0);
      }
    }
    int idx = 0;
    for (auto& [key, i] : keys) i = idx++;
    for (std::size_t k = 0; k < gs.size(); ++k)
      for (int v = 0; v < gs[k]->n(); ++v) col[k][v] = keys[sig[k][v]];
    if (keys.size() == classes) break;
    classes = keys.size();
  }
  return col;
}

struct BitAdj {
  int n = 0, words = 0;
  std::vector<std::uint64_t> bits;
  explicit BitAdj(const Graph& g) : n(g.n()), words((g.n() + 63) / 64) {
    bits.assign(static_cast<std::size_t>(n) * words, 0);
    for (const auto& e : g.edges()) {
      set(e.u - 1, e.v - 1);
      set(e.v - 1, e.u - 1);
    }
  }
  void set(int a, int b) { bits[static_cast<std::size_t>(a) * words + b / 64] |= 1ULL << (b % 64); }
  bool has(int a, int b) const {
    return bits[static_cast<std::size_t>(a) * words + b / 64] >> (b % 64) & 1ULL;
  }
};

}  // namespace

std::vector<int> refine_colors(const Graph& g, std::vector<int> initial) {
  return joint_refine({&g}, {std::move(initial)})[0];
}

void for_each_isomorphism(const Graph& g, const Graph& h,
                          const std::function<bool(const Permutation&)>& visit,
                          const IsoOptions& opt) {
  const int n = g.n();
  if (h.n() != n || g.edge_count() != h.edge_count()) return;
  if (!opt.g_colors.empty() && static_cast<int>(opt.g_colors.size()) != n)
    throw ValidationError("isomorphism: g_colors has wrong length");
  if (!opt.h_colors.empty() && static_cast<int>(opt.h_colors.size()) != n)
    throw ValidationError("isomorphism: h_colors has wrong length");
  if (opt.g_colors.empty() != opt.h_colors.empty())
    throw ValidationError("isomorphism: initial colors must be given for both graphs");
  if (n == 0) {
    visit(Permutation::identity(0));
    return;
  }

  auto cols = joint_refine({&g, &h}, {opt.g_colors, opt.h_colors});
  const auto& cg = cols[0];
  const auto& ch = cols[1];
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return;
  }

  // Candidate lists per color class in h.
  int ncol = 0;
  for (int c : cg) ncol = std::max(ncol, c + 1);
  for (int c : ch) ncol = std::max(ncol, c + 1);
  std::vector<std::vector<int>> members(ncol);
  for (int v = 0; v < n; ++v) members[ch[v]].push_back(v);

  // Static order on g: start from the rarest class, then repeatedly take the
  // vertex with most already-ordered neighbors (ties: smaller class, lower id).
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> placed_nb(n, 0);
  std::vector<char> placed(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best < 0) { best = v; continue; }
      auto key = [&](int x) {
        return std::make_tuple(-placed_nb[x], static_cast<int>(members[cg[x]].size()), x);
      };
      if (key(v) < key(best)) best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (Vertex w : g.neighbors(best + 1)) ++placed_nb[w - 1];
  }

  BitAdj ag(g), ah(h);
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  bool stop = false;

  std::function<void(int)> rec = [&](int depth) {
    if (stop) return;
    if (depth == n) {
      std::vector<Vertex> img(n);
      for (int v = 0; v < n; ++v) img[v] = map[v] + 1;
      if (!visit(Permutation(std::move(img)))) stop = true;
      return;
    }
    const int x = order[depth];
    for (int y : members[cg[x]]) {
      if (used[y]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        int a = order[k];
        if (ag.has(x, a) != ah.has(y, map[a])) ok = false;
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = 1;
      rec(depth + 1);
      used[y] = 0;
      map[x] = -1;
      if (stop) return;
    }
  };
  rec(0);
}

std::optional<Permutation> find_isomorphism(const Graph& g, const Graph& h, const IsoOptions& opt) {
  std::optional<Permutation> out;
  for_each_isomorphism(g, h, [&](const Permutation& p) { out = p; return false; }, opt);
  return out;
}

bool are_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

std::optional<Permutation> nontrivial_automorphism(const Graph& g, const IsoOptions& opt) {
  IsoOptions o = opt;
  if (o.g_colors.empty() != o.h_colors.empty()) {
    if (o.h_colors.empty()) o.h_colors = o.g_colors;
    else o.g_colors = o.h_colors;
  }
  std::optional<Permutation> out;
  for_each_isomorphism(
      g, g,
      [&](const Permutation& p) {
        if (p.is_identity()) return true;
        out = p;
        return false;
      },
      o);
  return out;
}

}  // namespace rso

namespace rso {

void for_each_induced_embedding(const Graph& pattern, const Graph& host,
                                const std::function<bool(Vertex, Vertex)>& allowed,
                                const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const int k = pattern.n();
  const int n = host.n();
  if (k > n) return;
  // Pattern order: BFS from the vertex with the highest degree, restarting per component.
  std::vector<Vertex> order;
  std::vector<Vertex> parent(k + 1, 0);
  std::vector<char> seen(k + 1, 0);
  while (static_cast<int>(order.size()) < k) {
    Vertex root = 0;
    for (Vertex x = 1; x <= k; ++x)
      if (!seen[x] && (root == 0 || pattern.degree(x) > pattern.degree(root))) root = x;
    seen[root] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    for (; head < order.size(); ++head)
      for (Vertex w : pattern.neighbors(order[head]))
        if (!seen[w]) { seen[w] = 1; parent[w] = order[head]; order.push_back(w); }
  }
  BitAdj hp(host);
  std::vector<Vertex> map(k, 0);
  std::vector<char> used(n + 1, 0);
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  bool stop = false;
  std::function<void(int)> rec = [&](int depth) {
    if (stop) return;
    if (depth == k) {
      if (!visit(map)) stop = true;
      return;
    }
    const Vertex x = order[depth];
    const std::vector<Vertex>& cands = parent[x] ? host.neighbors(map[parent[x] - 1]) : all;
    for (Vertex y : cands) {
      if (used[y] || !allowed(x, y)) continue;
      bool ok = true;
      for (int t = 0; t < depth && ok; ++t) {
        Vertex a = order[t];
        if (pattern.has_edge(x, a) != hp.has(y - 1, map[a - 1] - 1)) ok = false;
      }
      if (!ok) continue;
      map[x - 1] = y;
      used[y] = 1;
      rec(depth + 1);
      used[y] = 0;
      map[x - 1] = 0;
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace rso
