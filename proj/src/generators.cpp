#include "rso/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rso/error.hpp"

namespace rso {

Graph random_gnp(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng)) es.emplace_back(u, v);
  return Graph(n, es);
}

std::vector<std::pair<Vertex, Vertex>> random_perfect_matching(int n, std::mt19937_64& rng) {
  if (n % 2) throw ValidationError("perfect matching needs an even vertex count");
  auto p = Permutation::random(n, rng).images();
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int i = 0; i < n; i += 2) out.emplace_back(std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1]));
  return out;
}

std::optional<Graph> random_regular_permutation_model(int n, int d, std::mt19937_64& rng) {
  if (d < 0 || d >= n) throw ValidationError("random regular graph: need 0 <= d < n");
  if (d % 2 && n % 2) throw ValidationError("random regular graph: n*d must be even");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int j = 0; j < d / 2; ++j) {
    auto p = Permutation::random(n, rng);
    for (Vertex v = 1; v <= n; ++v) es.emplace_back(v, p(v));
  }
  if (d % 2) {
    auto m = random_perfect_matching(n, rng);
    es.insert(es.end(), m.begin(), m.end());
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto& [a, b] : es) {
    if (a == b) return std::nullopt;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) return std::nullopt;
  }
  return Graph(n, es);
}

}  // namespace rso
