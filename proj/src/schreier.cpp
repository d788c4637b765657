#include "rso/schreier.hpp"

#include <algorithm>

#include "rso/error.hpp"

namespace rso {

void PermutationFamily::validate() const {
  if (perms.empty()) throw ValidationError("permutation family is empty");
  for (const auto& p : perms)
    if (p.size() != n()) throw ValidationError("permutation family: permutations act on different sets");
}

DirectedColoredMultiGraph primary_graph(const PermutationFamily& p) {
  p.validate();
  std::vector<Arc> arcs;
  for (int i = 0; i < p.d(); ++i)
    for (Vertex v = 1; v <= p.n(); ++v) arcs.push_back({v, p.perms[i](v), i + 1});
  return DirectedColoredMultiGraph(p.n(), std::move(arcs));
}

Vertex pair_vertex(int n, Vertex u, Vertex v) {
  if (u == v) throw ValidationError("pair_vertex: u == v");
  return (u - 1) * (n - 1) + (v < u ? v : v - 1);
}

ColoredMultiGraph secondary_graph(const PermutationFamily& p) {
  p.validate();
  const int n = p.n();
  std::vector<ColoredEdge> es;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = 1; v <= n; ++v) {
      if (u == v) continue;
      for (int i = 0; i < p.d(); ++i) {
        const auto& pi = p.perms[i];
        es.push_back({pair_vertex(n, u, v), pair_vertex(n, pi(u), pi(v)), i + 1});
      }
    }
  return ColoredMultiGraph(n * (n - 1), std::move(es));
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // Fermat: a^(p-2)
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Vertex projective_point_id(std::int64_t p, std::int64_t x, std::int64_t y) {
  x = mod(x, p);
  y = mod(y, p);
  if (x != 0) return static_cast<Vertex>(y * inv_mod(x, p) % p + 1);
  if (y == 0) throw ValidationError("projective point (0,0) is not a point");
  return static_cast<Vertex>(p + 1);
}

PermutationFamily sl2_projective_perms(std::int64_t p, const std::vector<Mat2>& matrices) {
  if (p < 3 || !is_prime(p)) throw ValidationError("sl2: p = " + std::to_string(p) + " is not an odd prime");
  if (p > 46340) throw ValidationError("sl2: p too large");
  PermutationFamily fam;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const auto& m = matrices[k];
    if (mod(m[0] * m[3] - m[1] * m[2], p) != 1)
      throw ValidationError("sl2: matrix " + std::to_string(k + 1) + " does not have determinant 1 mod p");
    std::vector<Vertex> img(p + 1);
    for (std::int64_t i = 0; i <= p; ++i) {
      std::int64_t x = i < p ? 1 : 0;
      std::int64_t y = i < p ? i : 1;
      img[i] = projective_point_id(p, m[0] * x + m[1] * y, m[2] * x + m[3] * y);
    }
    fam.perms.emplace_back(std::move(img));  // constructor rejects non-bijections
  }
  return fam;
}

SchreierPair sl2_default(std::int64_t p) {
  auto fam = sl2_projective_perms(p, {Mat2{1, 1, 0, 1}, Mat2{0, 1, -1, 0}});
  return {primary_graph(fam), secondary_graph(fam)};
}

namespace {

// Transpositions plus seeded random permutations, scored with the directed
// colored kernel. Used when the primary is too large for a full scan.
RobustnessReport directed_adversarial(const DirectedColoredMultiGraph& d, std::int64_t samples, std::uint64_t seed) {
  const int n = d.n();
  RobustnessReport best;
  best.mode = ScanMode::AdversarialSampled;
  best.seed = seed;
  bool have = false;
  auto offer = [&](const Permutation& mu) {
    ++best.permutations_examined;
    Rational r(directed_colored_symdiff(d, mu), mu.nonfixed_count());
    if (!have || r < best.gamma_upper || (r == best.gamma_upper && mu < best.witness)) {
      best.gamma_upper = r;
      best.witness = mu;
      have = true;
    }
  };
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b) offer(Permutation::transposition(n, a, b));
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < samples; ++s) {
    auto mu = Permutation::random(n, rng);
    if (!mu.is_identity()) offer(mu);
  }
  return best;
}

}  // namespace

SufficientConditionReport check_sufficient_condition(const PermutationFamily& p, const SufficientConditionOptions& opt) {
  p.validate();
  SufficientConditionReport rep;
  const Graph sec = secondary_graph(p).underlying_simple();
  const Graph pri = primary_graph(p).underlying_simple();
  if (sec.n() <= opt.expansion_cap) {
    rep.secondary_expansion = expansion_combinatorial(sec, opt.expansion_cap);
    rep.secondary_gamma = *rep.secondary_expansion.gamma_combinatorial;
  } else {
    rep.secondary_expansion = expansion_sampled(sec, opt.samples, opt.seed);
    rep.secondary_gamma = *rep.secondary_expansion.gamma_lower;
  }
  const auto prim = primary_graph(p);
  if (p.n() <= opt.robustness_cap) rep.primary_robustness = directed_colored_robustness_exact(prim, opt.robustness_cap, opt.threads);
  else rep.primary_robustness = directed_adversarial(prim, opt.samples, opt.seed);

  if (pri.n() <= 20) rep.primary_expansion = expansion_combinatorial(pri, 20);
  else rep.primary_expansion = expansion_sampled(pri, opt.samples, opt.seed);

  rep.hypothesis_vacuous = rep.secondary_gamma == Rational(0);
  if (!rep.hypothesis_vacuous) {
    // In adversarial mode gamma_upper is only an upper bound, so a pass there is
    // evidence rather than proof; the exact branch is a genuine check.
    rep.robustness_implication = rep.primary_robustness.gamma_upper >= rep.secondary_gamma;
    Rational target = std::min(Rational(1, 4), rep.secondary_gamma / 3);
    if (rep.primary_expansion.gamma_combinatorial)
      rep.expansion_implication = *rep.primary_expansion.gamma_combinatorial >= target;
    else
      rep.expansion_implication = rep.primary_expansion.gamma_upper.value_or(Rational(0)) >= target;
  }
  return rep;
}

}  // namespace rso
