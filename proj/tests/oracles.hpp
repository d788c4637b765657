#ifndef RSO_TEST_ORACLES_HPP
#define RSO_TEST_ORACLES_HPP

// Brute-force reference implementations used by the unit tests. They read
// graphs only through their edge lists and share no code with the library
// kernels they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "rso/graph.hpp"
#include "rso/rational.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(const rso::Graph& g) {
  Matrix a(g.n() + 1, std::vector<int>(g.n() + 1, 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

// images[v-1] = mu(v); counts pairs {u,v} that are edges in exactly one of E, mu(E).
inline std::int64_t symdiff_under(const rso::Graph& g, const std::vector<int>& images) {
  const int n = g.n();
  Matrix a = adjacency(g);
  Matrix b(n + 1, std::vector<int>(n + 1, 0));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (a[u][v]) b[images[u - 1]][images[v - 1]] = 1;
  std::int64_t d = 0;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) d += a[u][v] != b[u][v];
  return d;
}

inline int moved(const std::vector<int>& images) {
  int c = 0;
  for (std::size_t i = 0; i < images.size(); ++i) c += images[i] != static_cast<int>(i + 1);
  return c;
}

// Minimum over non-identity permutations of symdiff / moved, by full enumeration.
inline rso::Rational gamma(const rso::Graph& g) {
  std::vector<int> p(g.n());
  std::iota(p.begin(), p.end(), 1);
  rso::Rational best(-1);
  while (std::next_permutation(p.begin(), p.end())) {
    rso::Rational r(symdiff_under(g, p), moved(p));
    if (best < rso::Rational(0) || r < best) best = r;
  }
  return best;
}

// Colored multigraph: multiset of (min, max, color) triples.
inline std::map<std::tuple<int, int, int>, int> multiset(const rso::ColoredMultiGraph& m,
                                                         const std::vector<int>& images) {
  std::map<std::tuple<int, int, int>, int> s;
  for (const auto& e : m.edges()) {
    int u = images[e.u - 1], v = images[e.v - 1];
    ++s[{std::min(u, v), std::max(u, v), e.color}];
  }
  return s;
}

inline std::int64_t colored_symdiff(const rso::ColoredMultiGraph& m, const std::vector<int>& images) {
  std::vector<int> id(m.n());
  std::iota(id.begin(), id.end(), 1);
  auto a = multiset(m, id), b = multiset(m, images);
  std::int64_t d = 0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    d += std::abs(c - (it == b.end() ? 0 : it->second));
  }
  for (const auto& [k, c] : b)
    if (!a.count(k)) d += c;
  return d;
}

inline rso::Rational colored_gamma(const rso::ColoredMultiGraph& m) {
  std::vector<int> p(m.n());
  std::iota(p.begin(), p.end(), 1);
  rso::Rational best(-1);
  while (std::next_permutation(p.begin(), p.end())) {
    rso::Rational r(colored_symdiff(m, p), moved(p));
    if (best < rso::Rational(0) || r < best) best = r;
  }
  return best;
}

inline std::int64_t directed_symdiff(const rso::DirectedColoredMultiGraph& d, const std::vector<int>& images) {
  std::map<std::tuple<int, int, int>, int> a, b;
  for (const auto& x : d.arcs()) {
    ++a[{x.from, x.to, x.color}];
    ++b[{images[x.from - 1], images[x.to - 1], x.color}];
  }
  std::int64_t s = 0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    s += std::abs(c - (it == b.end() ? 0 : it->second));
  }
  for (const auto& [k, c] : b)
    if (!a.count(k)) s += c;
  return s;
}

inline rso::Rational directed_gamma(const rso::DirectedColoredMultiGraph& d) {
  std::vector<int> p(d.n());
  std::iota(p.begin(), p.end(), 1);
  rso::Rational best(-1);
  while (std::next_permutation(p.begin(), p.end())) {
    rso::Rational r(directed_symdiff(d, p), moved(p));
    if (best < rso::Rational(0) || r < best) best = r;
  }
  return best;
}

inline bool asymmetric(const rso::Graph& g) {
  std::vector<int> p(g.n());
  std::iota(p.begin(), p.end(), 1);
  while (std::next_permutation(p.begin(), p.end()))
    if (symdiff_under(g, p) == 0) return false;
  return true;
}

// min over non-empty S, |S| <= n/2, of |N(S) \ S| / |S|.
inline rso::Rational vertex_expansion(const rso::Graph& g) {
  const int n = g.n();
  Matrix a = adjacency(g);
  rso::Rational best(n + 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (2 * size > n) continue;
    int boundary = 0;
    for (int v = 1; v <= n; ++v) {
      if (mask >> (v - 1) & 1) continue;
      for (int u = 1; u <= n; ++u)
        if ((mask >> (u - 1) & 1) && a[u][v]) {
          ++boundary;
          break;
        }
    }
    best = std::min(best, rso::Rational(boundary, size));
  }
  return best;
}

// Minimum over bijections phi of |E(G) delta phi(E(H))|.
inline std::int64_t iso_distance(const rso::Graph& g, const rso::Graph& h) {
  const int n = g.n();
  Matrix a = adjacency(g), b = adjacency(h);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::int64_t best = -1;
  do {
    std::int64_t d = 0;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) d += a[p[u - 1]][p[v - 1]] != b[u][v];
    if (best < 0 || d < best) best = d;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace oracle

#endif
