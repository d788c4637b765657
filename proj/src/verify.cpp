#include "rso/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "rso/error.hpp"
#include "rso/isomorphism.hpp"

namespace rso {

std::string to_string(ScanMode m) { return m == ScanMode::Exact ? "exact" : "adversarial-sampled"; }

nlohmann::json RobustnessReport::to_json() const {
  nlohmann::json j;
  j["gamma_exact"] = gamma_exact ? nlohmann::json(rso::to_string(*gamma_exact)) : nlohmann::json(nullptr);
  j["gamma_upper"] = rso::to_string(gamma_upper);
  j["witness"] = witness.images();
  j["mode"] = rso::to_string(mode);
  j["permutations_examined"] = permutations_examined;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json ExpansionReport::to_json() const {
  auto opt_rat = [](const std::optional<Rational>& r) {
    return r ? nlohmann::json(rso::to_string(*r)) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["gamma_combinatorial"] = opt_rat(gamma_combinatorial);
  j["gamma_lower"] = opt_rat(gamma_lower);
  j["gamma_upper"] = opt_rat(gamma_upper);
  j["lambda1"] = lambda1 ? nlohmann::json(*lambda1) : nlohmann::json(nullptr);
  j["lambda2"] = lambda2 ? nlohmann::json(*lambda2) : nlohmann::json(nullptr);
  j["mode"] = mode;
  j["witness"] = witness;
  return j;
}

namespace {

// Running minimum of cost/moved with deterministic tie-breaking.
struct Best {
  std::int64_t cost = 0;
  std::int64_t moved = 0;  // 0 means "nothing recorded yet"
  std::vector<Vertex> witness;

  bool offer(std::int64_t c, std::int64_t m, const std::vector<Vertex>& img) {
    if (m == 0) return false;
    if (moved != 0) {
      // c/m vs cost/moved
      std::int64_t lhs = c * moved, rhs = cost * m;
      if (lhs > rhs) return false;
      if (lhs == rhs && !(img < witness)) return false;
    }
    cost = c;
    moved = m;
    witness = img;
    return true;
  }
};

RobustnessReport to_report(const Best& b, ScanMode mode, std::int64_t examined) {
  RobustnessReport r;
  r.mode = mode;
  r.permutations_examined = examined;
  if (b.moved) {
    r.gamma_upper = Rational(b.cost, b.moved);
    r.witness = Permutation(b.witness);
  }
  if (mode == ScanMode::Exact && b.moved) r.gamma_exact = r.gamma_upper;
  return r;
}

// Visit the permutations of lexicographic rank [first, last) as 1-based image
// vectors, skipping the identity.
template <class Fn>
std::int64_t for_rank_range(int n, std::uint64_t first, std::uint64_t last, Fn&& fn) {
  if (first >= last) return 0;
  std::vector<Vertex> img = permutation_from_rank(n, first).images();
  std::int64_t examined = 0;
  for (std::uint64_t r = first; r < last; ++r) {
    if (r != 0) {
      fn(img);
      ++examined;
    }
    std::next_permutation(img.begin(), img.end());
  }
  return examined;
}

int count_moved(const std::vector<Vertex>& img) {
  int c = 0;
  for (std::size_t i = 0; i < img.size(); ++i) c += (img[i] != static_cast<Vertex>(i + 1));
  return c;
}

void check_cap(int n, int n_limit) {
  if (n > n_limit)
    throw ValidationError("exact scan: n = " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(n_limit));
  if (n > 20) throw ValidationError("exact scan: n! overflows for n > 20");
  if (n < 2) throw ValidationError("exact scan: need at least 2 vertices for a non-trivial permutation");
}

template <class RangeFn>
RobustnessReport run_partitioned(int n, int threads, RangeFn&& range_fn) {
  const std::uint64_t total = factorial(n);
  threads = std::max(1, threads);
  std::vector<RobustnessReport> parts(threads);
  std::vector<std::thread> pool;
  auto bounds = [&](int t) { return total / threads * t + std::min<std::uint64_t>(t, total % threads); };
  for (int t = 0; t < threads; ++t) {
    auto job = [&, t] { parts[t] = range_fn(bounds(t), bounds(t + 1)); };
    if (threads == 1) job();
    else pool.emplace_back(job);
  }
  for (auto& th : pool) th.join();
  RobustnessReport out = parts[0];
  for (int t = 1; t < threads; ++t) out = merge_reports(out, parts[t]);
  return out;
}

// Encoded multiset keys of a colored or directed edge list, sorted.
std::int64_t sorted_multiset_diff(std::vector<std::int64_t>& a, std::vector<std::int64_t>& b) {
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++common; ++i; ++j; }
  }
  return static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
}

}  // namespace

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Permutation permutation_from_rank(int n, std::uint64_t r) {
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<Vertex> img;
  img.reserve(n);
  for (int i = n; i >= 1; --i) {
    std::uint64_t f = factorial(i - 1);
    std::size_t idx = static_cast<std::size_t>(r / f);
    r %= f;
    img.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(img));
}

RobustnessReport merge_reports(const RobustnessReport& a, const RobustnessReport& b) {
  RobustnessReport out;
  const RobustnessReport* pick = nullptr;
  if (a.witness.size() == 0) pick = &b;
  else if (b.witness.size() == 0) pick = &a;
  else if (a.gamma_upper < b.gamma_upper) pick = &a;
  else if (b.gamma_upper < a.gamma_upper) pick = &b;
  else pick = (b.witness < a.witness) ? &b : &a;
  out = *pick;
  out.permutations_examined = a.permutations_examined + b.permutations_examined;
  if (a.mode == ScanMode::Exact && b.mode == ScanMode::Exact && out.witness.size() > 0)
    out.gamma_exact = out.gamma_upper;
  if (!out.seed) out.seed = a.seed ? a.seed : b.seed;
  return out;
}

RobustnessReport robustness_exact_range(const Graph& g, std::uint64_t first, std::uint64_t last) {
  const int n = g.n();
  if (n > 20) throw ValidationError("exact scan: n too large");
  last = std::min(last, factorial(n));
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u - 1] |= 1u << (e.v - 1);
    adj[e.v - 1] |= 1u << (e.u - 1);
  }
  const auto& edges = g.edges();
  Best best;
  auto examined = for_rank_range(n, first, last, [&](const std::vector<Vertex>& img) {
    std::int64_t missing = 0;
    for (const auto& e : edges) missing += !((adj[img[e.u - 1] - 1] >> (img[e.v - 1] - 1)) & 1u);
    best.offer(2 * missing, count_moved(img), img);
  });
  return to_report(best, ScanMode::Exact, examined);
}

RobustnessReport robustness_exact(const Graph& g, int n_limit, int threads) {
  check_cap(g.n(), n_limit);
  return run_partitioned(g.n(), threads, [&](std::uint64_t a, std::uint64_t b) {
    return robustness_exact_range(g, a, b);
  });
}

RobustnessReport colored_robustness_exact(const ColoredMultiGraph& m, int n_limit, int threads) {
  const int n = m.n();
  check_cap(n, n_limit);
  const std::int64_t nn = n + 1;
  auto key = [&](int c, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::int64_t>(c) * nn + u) * nn + v;
  };
  std::vector<std::int64_t> base;
  for (const auto& e : m.edges()) base.push_back(key(e.color, e.u, e.v));
  std::sort(base.begin(), base.end());
  return run_partitioned(n, threads, [&](std::uint64_t a, std::uint64_t b) {
    Best best;
    std::vector<std::int64_t> img_keys(m.edge_count());
    std::vector<std::int64_t> base_copy = base;
    auto ex = for_rank_range(n, a, std::min(b, factorial(n)), [&](const std::vector<Vertex>& img) {
      for (std::size_t j = 0; j < m.edge_count(); ++j) {
        const auto& e = m.edges()[j];
        img_keys[j] = key(e.color, img[e.u - 1], img[e.v - 1]);
      }
      best.offer(sorted_multiset_diff(base_copy, img_keys), count_moved(img), img);
    });
    return to_report(best, ScanMode::Exact, ex);
  });
}

RobustnessReport directed_colored_robustness_exact(const DirectedColoredMultiGraph& d, int n_limit,
                                                   int threads) {
  const int n = d.n();
  check_cap(n, n_limit);
  const std::int64_t nn = n + 1;
  auto key = [&](int c, Vertex u, Vertex v) { return (static_cast<std::int64_t>(c) * nn + u) * nn + v; };
  std::vector<std::int64_t> base;
  for (const auto& a : d.arcs()) base.push_back(key(a.color, a.from, a.to));
  std::sort(base.begin(), base.end());
  return run_partitioned(n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    Best best;
    std::vector<std::int64_t> img_keys(d.arc_count());
    std::vector<std::int64_t> base_copy = base;
    auto ex = for_rank_range(n, lo, std::min(hi, factorial(n)), [&](const std::vector<Vertex>& img) {
      for (std::size_t j = 0; j < d.arc_count(); ++j) {
        const auto& a = d.arcs()[j];
        img_keys[j] = key(a.color, img[a.from - 1], img[a.to - 1]);
      }
      best.offer(sorted_multiset_diff(base_copy, img_keys), count_moved(img), img);
    });
    return to_report(best, ScanMode::Exact, ex);
  });
}

// ----------------------------------------------------------------- adversarial

namespace {

// 2 * #{e in E : μ(e) not in E}, touching only edges at moved vertices.
std::int64_t sparse_symdiff(const Graph& g, const std::vector<Vertex>& img, const std::vector<Vertex>& moved) {
  std::int64_t missing = 0;
  for (Vertex x : moved) {
    for (Vertex w : g.neighbors(x)) {
      bool w_moved = img[w - 1] != w;
      if (w_moved && w < x) continue;  // counted from w's side
      if (!g.has_edge(img[x - 1], img[w - 1])) ++missing;
    }
  }
  return 2 * missing;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RobustnessReport robustness_adversarial(const Graph& g, const AdversarialOptions& opt) {
  const int n = g.n();
  if (n < 2) throw ValidationError("adversarial scan: need at least 2 vertices");
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  Best best;
  std::int64_t examined = 0;

  auto offer_sparse = [&](const std::vector<Vertex>& moved) {
    best.offer(sparse_symdiff(g, img, moved), static_cast<std::int64_t>(moved.size()), img);
    ++examined;
  };

  // Transpositions.
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) {
      std::swap(img[a - 1], img[b - 1]);
      offer_sparse({a, b});
      std::swap(img[a - 1], img[b - 1]);
    }
  // 3-cycles, both orientations.
  if (n >= 3 && n <= opt.three_cycle_cap) {
    for (Vertex a = 1; a <= n; ++a)
      for (Vertex b = a + 1; b <= n; ++b)
        for (Vertex c = b + 1; c <= n; ++c) {
          img[a - 1] = b; img[b - 1] = c; img[c - 1] = a;
          offer_sparse({a, b, c});
          img[a - 1] = c; img[b - 1] = a; img[c - 1] = b;
          offer_sparse({a, b, c});
          img[a - 1] = a; img[b - 1] = b; img[c - 1] = c;
        }
  }
  // Block swaps.
  for (std::size_t i = 0; i < opt.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < opt.blocks.size(); ++j) {
      const auto& A = opt.blocks[i];
      const auto& B = opt.blocks[j];
      if (A.size() != B.size() || A.empty()) continue;
      std::vector<Vertex> moved;
      for (std::size_t t = 0; t < A.size(); ++t) {
        if (A[t] < 1 || A[t] > n || B[t] < 1 || B[t] > n)
          throw ValidationError("adversarial scan: block vertex out of range");
        img[A[t] - 1] = B[t];
        img[B[t] - 1] = A[t];
        if (A[t] != B[t]) { moved.push_back(A[t]); moved.push_back(B[t]); }
      }
      if (Permutation(img).nonfixed_count() > 0) offer_sparse(moved);
      std::iota(img.begin(), img.end(), 1);
    }
  for (const auto& p : opt.extra) {
    if (p.size() != n) throw ValidationError("adversarial scan: extra permutation has wrong size");
    if (p.is_identity()) continue;
    img = p.images();
    offer_sparse(p.nonfixed());
    std::iota(img.begin(), img.end(), 1);
  }

  // Seeded random permutations in fixed blocks of 1024 so that the stream does
  // not depend on the thread count.
  constexpr std::int64_t kBlock = 1024;
  const std::int64_t nblocks = (opt.samples + kBlock - 1) / kBlock;
  const int threads = std::max(1, opt.threads);
  std::vector<Best> partial(threads);
  std::vector<std::int64_t> counts(threads, 0);
  auto worker = [&](int t) {
    std::vector<Vertex> local(n);
    for (std::int64_t blk = t; blk < nblocks; blk += threads) {
      std::mt19937_64 rng(splitmix(opt.seed ^ splitmix(static_cast<std::uint64_t>(blk))));
      std::int64_t end = std::min(opt.samples, (blk + 1) * kBlock);
      for (std::int64_t s = blk * kBlock; s < end; ++s) {
        local = Permutation::random(n, rng).images();
        std::vector<Vertex> moved;
        for (Vertex v = 1; v <= n; ++v)
          if (local[v - 1] != v) moved.push_back(v);
        if (moved.empty()) continue;
        partial[t].offer(sparse_symdiff(g, local, moved), static_cast<std::int64_t>(moved.size()), local);
        ++counts[t];
      }
    }
  };
  if (threads == 1) worker(0);
  else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (int t = 0; t < threads; ++t) {
    if (partial[t].moved) best.offer(partial[t].cost, partial[t].moved, partial[t].witness);
    examined += counts[t];
  }

  auto r = to_report(best, ScanMode::AdversarialSampled, examined);
  r.seed = opt.seed;
  return r;
}

// --------------------------------------------------------------- asymmetry

SelfOrderResult is_self_ordered(const Graph& g) {
  SelfOrderResult r;
  r.automorphism = nontrivial_automorphism(g);
  r.self_ordered = !r.automorphism.has_value();
  return r;
}

std::optional<Graph> first_asymmetric_graph(int n) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
  const std::uint64_t total = 1ULL << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1ULL) es.push_back(slots[i]);
    Graph g(n, es);
    if (is_self_ordered(g).self_ordered) return g;
  }
  return std::nullopt;
}

// --------------------------------------------------------------- expansion

ExpansionReport expansion_combinatorial(const Graph& g, int n_limit) {
  const int n = g.n();
  if (n > n_limit)
    throw ValidationError("expansion: n = " + std::to_string(n) + " exceeds the exact cap " +
                          std::to_string(n_limit));
  if (n > 62) throw ValidationError("expansion: n too large for subset enumeration");
  if (n < 2) throw ValidationError("expansion: need at least 2 vertices");
  ExpansionReport rep;
  rep.mode = "exact";
  const int half = n / 2;
  std::vector<int> cnt(n, 0);       // number of S-neighbors of each vertex
  std::vector<char> in(n, 0);
  int size = 0, boundary = 0;
  std::int64_t best_num = 0, best_den = 0;
  std::uint64_t best_mask = 0, mask = 0;
  const std::uint64_t steps = (1ULL << n) - 1;
  for (std::uint64_t i = 1; i <= steps; ++i) {
    int v = __builtin_ctzll(i);  // Gray code: flip bit v
    if (!in[v]) {
      in[v] = 1;
      ++size;
      if (cnt[v] > 0) --boundary;
      for (Vertex w : g.neighbors(v + 1)) {
        int x = w - 1;
        if (cnt[x]++ == 0 && !in[x]) ++boundary;
      }
    } else {
      in[v] = 0;
      --size;
      for (Vertex w : g.neighbors(v + 1)) {
        int x = w - 1;
        if (--cnt[x] == 0 && !in[x]) --boundary;
      }
      if (cnt[v] > 0) ++boundary;
    }
    mask ^= 1ULL << v;
    if (size == 0 || size > half) continue;
    if (best_den == 0 || static_cast<std::int64_t>(boundary) * best_den < best_num * size) {
      best_num = boundary;
      best_den = size;
      best_mask = mask;
    }
  }
  rep.gamma_combinatorial = Rational(best_num, best_den);
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1ULL) rep.witness.push_back(v + 1);
  return rep;
}

ExpansionReport expansion_sampled(const Graph& g, std::int64_t samples, std::uint64_t seed) {
  const int n = g.n();
  if (n < 2) throw ValidationError("expansion: need at least 2 vertices");
  ExpansionReport rep;
  rep.mode = "sampled";
  const int half = n / 2;
  rep.gamma_lower = is_connected(g) ? Rational(1, half) : Rational(0);
  std::mt19937_64 rng(seed);
  std::int64_t best_num = -1, best_den = 1;
  std::vector<char> in(n + 1, 0);
  auto evaluate = [&](const std::vector<Vertex>& s) {
    std::fill(in.begin(), in.end(), 0);
    for (Vertex v : s) in[v] = 1;
    std::vector<char> nb(n + 1, 0);
    std::int64_t b = 0;
    for (Vertex v : s)
      for (Vertex w : g.neighbors(v))
        if (!in[w] && !nb[w]) { nb[w] = 1; ++b; }
    std::int64_t sz = static_cast<std::int64_t>(s.size());
    if (best_num < 0 || b * best_den < best_num * sz) {
      best_num = b;
      best_den = sz;
      rep.witness = s;
      std::sort(rep.witness.begin(), rep.witness.end());
    }
  };
  std::uniform_int_distribution<int> pick_v(1, n), pick_size(1, half);
  for (std::int64_t s = 0; s < samples; ++s) {
    int target = pick_size(rng);
    std::vector<Vertex> set;
    if (s % 2 == 0) {
      // BFS ball grown from a random vertex, random tie order.
      std::fill(in.begin(), in.end(), 0);
      std::vector<Vertex> frontier{pick_v(rng)};
      in[frontier[0]] = 1;
      for (std::size_t h = 0; h < frontier.size() && static_cast<int>(set.size()) < target; ++h) {
        set.push_back(frontier[h]);
        auto nbs = g.neighbors(frontier[h]);
        std::shuffle(nbs.begin(), nbs.end(), rng);
        for (Vertex w : nbs)
          if (!in[w]) { in[w] = 1; frontier.push_back(w); }
      }
    } else {
      std::vector<Vertex> all(n);
      std::iota(all.begin(), all.end(), 1);
      std::shuffle(all.begin(), all.end(), rng);
      set.assign(all.begin(), all.begin() + target);
    }
    evaluate(set);
  }
  if (best_num >= 0) rep.gamma_upper = Rational(best_num, best_den);
  return rep;
}

ExpansionReport expansion_spectral(const Graph& g, int iterations, std::uint64_t seed) {
  const int n = g.n();
  ExpansionReport rep;
  rep.mode = "spectral";
  if (n == 0) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  auto mul = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (int v = 0; v < n; ++v)
      for (Vertex w : g.neighbors(v + 1)) y[v] += x[w - 1];
    return y;
  };
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  auto normalize = [&](std::vector<double>& x) {
    double s = std::sqrt(dot(x, x));
    if (s > 0)
      for (double& v : x) v /= s;
    return s;
  };
  // Top eigenvector: iterate with A + I from a positive start, which avoids
  // the sign oscillation of bipartite graphs.
  std::vector<double> v1(n);
  for (double& x : v1) x = unif(rng);
  normalize(v1);
  for (int it = 0; it < iterations; ++it) {
    auto y = mul(v1);
    for (int i = 0; i < n; ++i) y[i] += v1[i];
    normalize(y);
    double diff = 0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(y[i] - v1[i]));
    v1 = std::move(y);
    if (diff < 1e-13) break;
  }
  rep.lambda1 = dot(v1, mul(v1));
  // Second magnitude: power iteration with A^2 restricted to v1's complement.
  std::vector<double> x(n);
  for (double& t : x) t = unif(rng) - 1.0;
  auto project = [&](std::vector<double>& z) {
    double c = dot(z, v1);
    for (int i = 0; i < n; ++i) z[i] -= c * v1[i];
  };
  project(x);
  if (normalize(x) == 0) {
    rep.lambda2 = 0.0;
    return rep;
  }
  double est = 0;
  for (int it = 0; it < iterations; ++it) {
    auto y = mul(mul(x));
    project(y);
    double prev = est;
    est = std::sqrt(std::max(0.0, dot(x, y)));
    if (normalize(y) == 0) { est = 0; break; }
    x = std::move(y);
    if (it > 2 && std::abs(est - prev) < 1e-12) break;
  }
  rep.lambda2 = est;
  return rep;
}

// ------------------------------------------------------- isomorphism distance

IsoDistance far_from_isomorphic(const Graph& g, const Graph& h, DistanceMode mode, std::int64_t samples,
                                std::uint64_t seed) {
  const int n = g.n();
  if (h.n() != n) throw ValidationError("far_from_isomorphic: size mismatch");
  IsoDistance out;
  // Degree-sequence lower bound: every differing edge changes two degrees by one.
  {
    std::vector<int> dg(n), dh(n);
    for (int v = 1; v <= n; ++v) { dg[v - 1] = g.degree(v); dh[v - 1] = h.degree(v); }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) s += std::abs(dg[i] - dh[i]);
    std::int64_t me = std::abs(static_cast<std::int64_t>(g.edge_count()) - static_cast<std::int64_t>(h.edge_count()));
    out.lower = std::max(me, (s + 1) / 2);
  }
  const std::int64_t eg = static_cast<std::int64_t>(g.edge_count());
  const std::int64_t eh = static_cast<std::int64_t>(h.edge_count());
  auto dist = [&](const std::vector<Vertex>& img) {
    std::int64_t common = 0;
    for (const auto& e : h.edges()) common += g.has_edge(img[e.u - 1], img[e.v - 1]);
    return eg + eh - 2 * common;
  };
  if (mode == DistanceMode::Exact) {
    if (n > 9) throw ValidationError("far_from_isomorphic: exact mode needs n <= 9");
    std::vector<Vertex> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::int64_t best = -1;
    std::vector<Vertex> wit;
    do {
      std::int64_t d = dist(img);
      if (best < 0 || d < best) { best = d; wit = img; }
    } while (std::next_permutation(img.begin(), img.end()));
    out.lower = out.upper = best;
    out.exact = true;
    out.witness = Permutation(wit);
    return out;
  }
  // Sampled: seeded random starts each followed by transposition hill-climbing.
  std::mt19937_64 rng(seed);
  std::int64_t best = -1;
  std::vector<Vertex> wit;
  if (auto iso = find_isomorphism(h, g)) {
    best = 0;
    wit = iso->images();
  }
  for (std::int64_t s = 0; s < samples && best != 0; ++s) {
    auto img = Permutation::random(n, rng).images();
    std::int64_t d = dist(img);
    bool improved = true;
    while (improved && n <= 200) {
      improved = false;
      for (int a = 0; a < n && !improved; ++a)
        for (int b = a + 1; b < n && !improved; ++b) {
          std::swap(img[a], img[b]);
          std::int64_t d2 = dist(img);
          if (d2 < d) { d = d2; improved = true; }
          else std::swap(img[a], img[b]);
        }
    }
    if (best < 0 || d < best) { best = d; wit = img; }
  }
  out.upper = best;
  out.witness = Permutation(wit);
  out.exact = (out.upper == out.lower);
  return out;
}

// ---------------------------------------------------------- two-source tables

Rational quasi_orthogonality_error(const TwoSourceFunction& f, bool two_sided_pairs) {
  if (f.n1 < 1 || f.n2 < 1) throw ValidationError("quasi-orthogonality: empty table");
  Rational eps(0);
  const Rational half(1, 2);
  auto bias = [&](int weight, int total) {
    Rational p(weight, total);
    Rational d = p - half;
    return d < 0 ? -d : d;
  };
  for (int x = 0; x < f.n1; ++x) eps = std::max(eps, bias(f.row_weight(x), f.n2));
  for (int y = 0; y < f.n2; ++y) eps = std::max(eps, bias(f.col_weight(y), f.n1));
  auto pair_term = [&](int disagree, int total) {
    Rational v = half - Rational(disagree, total);
    if (two_sided_pairs && v < 0) v = -v;
    return v;
  };
  for (int a = 0; a < f.n1; ++a)
    for (int b = a + 1; b < f.n1; ++b) {
      int d = 0;
      for (int y = 0; y < f.n2; ++y) d += f(a, y) != f(b, y);
      eps = std::max(eps, pair_term(d, f.n2));
    }
  for (int a = 0; a < f.n2; ++a)
    for (int b = a + 1; b < f.n2; ++b) {
      int d = 0;
      for (int x = 0; x < f.n1; ++x) d += f(x, a) != f(x, b);
      eps = std::max(eps, pair_term(d, f.n1));
    }
  return eps;
}

std::vector<Permutation> all_derangements(int n) {
  std::vector<Permutation> out;
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = img[i] != i + 1;
    if (ok) out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Rational nm_distance(const TwoSourceFunction& f, const Permutation& tf, const Permutation& tg,
                     const std::vector<int>& xs_in, const std::vector<int>& ys_in) {
  std::vector<int> xs = xs_in, ys = ys_in;
  if (xs.empty()) { xs.resize(f.n1); std::iota(xs.begin(), xs.end(), 0); }
  if (ys.empty()) { ys.resize(f.n2); std::iota(ys.begin(), ys.end(), 0); }
  // c[alpha][beta]: number of (x,y) with F(x,y)=alpha and F(f(x),g(y))=beta.
  std::int64_t c[2][2] = {{0, 0}, {0, 0}};
  for (int x : xs)
    for (int y : ys) c[f(x, y)][f(tf(x + 1) - 1, tg(y + 1) - 1)]++;
  std::int64_t total = static_cast<std::int64_t>(xs.size()) * static_cast<std::int64_t>(ys.size());
  std::int64_t s = std::abs(c[0][0] - c[1][0]) + std::abs(c[0][1] - c[1][1]);
  return Rational(s, 2 * total);
}

NmReport nm_extractor_error(const TwoSourceFunction& f, double k, NmMode mode, std::uint64_t seed,
                            std::int64_t samples) {
  if (f.n1 != f.n2) throw ValidationError("nm_extractor_error: domain must be square");
  const int n = f.n1;
  if (n < 2) throw ValidationError("nm_extractor_error: need N >= 2 for a derangement");
  NmReport rep;
  const bool uniform = k >= std::log2(static_cast<double>(n)) - 1e-12;
  const int support = uniform ? n : std::max(1, static_cast<int>(std::ceil(std::pow(2.0, k))));
  bool have = false;
  auto offer = [&](const Rational& e, const Permutation& a, const Permutation& b) {
    ++rep.pairs_examined;
    if (!have || rep.eps < e) {
      rep.eps = e;
      rep.f = a;
      rep.g = b;
      have = true;
    }
  };
  if (mode == NmMode::Exact) {
    if (n > 6) throw ValidationError("nm_extractor_error: exact mode needs N <= 6");
    if (!uniform) throw ValidationError("nm_extractor_error: exact mode scans uniform sources only");
    rep.mode = "exact";
    auto ders = all_derangements(n);
    for (const auto& a : ders)
      for (const auto& b : ders) offer(nm_distance(f, a, b), a, b);
    return rep;
  }
  rep.mode = "sampled";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  auto random_derangement = [&] {
    for (;;) {
      auto p = Permutation::random(n, rng);
      if (p.nonfixed_count() == n) return p;
    }
  };
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::int64_t s = 0; s < samples; ++s) {
    auto a = random_derangement();
    auto b = random_derangement();
    std::vector<int> xs, ys;
    if (!uniform) {
      auto px = all, py = all;
      std::shuffle(px.begin(), px.end(), rng);
      std::shuffle(py.begin(), py.end(), rng);
      xs.assign(px.begin(), px.begin() + support);
      ys.assign(py.begin(), py.begin() + support);
    }
    offer(nm_distance(f, a, b, xs, ys), a, b);
  }
  return rep;
}

}  // namespace rso
