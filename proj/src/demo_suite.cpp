#include "rso/demo_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "rso/dense.hpp"
#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/isomorphism.hpp"
#include "rso/local_order.hpp"
#include "rso/permutations.hpp"
#include "rso/pt_reduction.hpp"
#include "rso/schreier.hpp"
#include "rso/three_step.hpp"
#include "rso/transforms.hpp"
#include "rso/verify.hpp"

namespace rso {

namespace {

using Clock = std::chrono::steady_clock;

// Wall-clock budget in seconds, indexed by criterion.
constexpr double kBudget[16] = {0, 10, 60, 120, 30, 300, 300, 120, 5, 5, 600, 120, 300, 120, 300, 300};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string rs(const Rational& r) { return to_string(r); }

Graph random_pair_graph(int n, double p, std::mt19937_64& rng) { return random_gnp(n, p, rng); }

// ------------------------------------------------------------------ 1
CriterionResult asymmetry_frontier() {
  CriterionResult r{1, "asymmetry frontier", false, 0, 10, "", {}};
  bool none_small = true;
  for (int n = 2; n <= 5; ++n)
    if (first_asymmetric_graph(n)) none_small = false;
  auto g6 = first_asymmetric_graph(6);
  Rational gamma{0};
  if (g6) gamma = *robustness_exact(*g6).gamma_exact;
  r.property_holds = none_small && g6 && gamma > Rational(0);
  r.detail = std::string("none on 2..5 vertices: ") + (none_small ? "yes" : "no") + ", 6-vertex graph with " +
             (g6 ? std::to_string(g6->edge_count()) : std::string("?")) + " edges, gamma = " + rs(gamma);
  r.data = {{"none_on_2_to_5", none_small}, {"gamma_6", rs(gamma)}};
  return r;
}

// ------------------------------------------------------------------ 2
CriterionResult exact_oracle(int threads) {
  CriterionResult r{2, "exact robustness oracle at n = 9", false, 0, 60, "", {}};
  std::mt19937_64 rng(9);
  Graph g = random_gnp(9, 0.45, rng);
  const auto t0 = Clock::now();
  RobustnessReport single = robustness_exact(g, 9, 1);
  const double single_s = std::chrono::duration<double>(Clock::now() - t0).count();
  // Partitioned three ways by hand, then merged in both orders.
  const std::uint64_t total = factorial(9);
  RobustnessReport a = robustness_exact_range(g, 0, total / 3);
  RobustnessReport b = robustness_exact_range(g, total / 3, 2 * total / 3);
  RobustnessReport c = robustness_exact_range(g, 2 * total / 3, total);
  RobustnessReport m1 = merge_reports(merge_reports(a, b), c);
  RobustnessReport m2 = merge_reports(c, merge_reports(b, a));
  RobustnessReport threaded = robustness_exact(g, 9, std::max(2, threads));
  const auto js = single.to_json();
  const bool same = js == m1.to_json() && js == m2.to_json() && js == threaded.to_json();
  r.property_holds = single.permutations_examined == 362879 && same && single_s <= 60;
  r.detail = "gamma = " + rs(*single.gamma_exact) + ", " + std::to_string(single.permutations_examined) +
             " permutations in " + fmt("%.2f", single_s) + " s, partitioned reports identical: " +
             (same ? "yes" : "no");
  r.data = {{"report", js}, {"single_thread_seconds", single_s}, {"partitions_identical", same}};
  return r;
}

// ------------------------------------------------------------------ 3
CriterionResult gadget_check() {
  CriterionResult r{3, "gadget de-coloring on a 20-vertex instance", false, 0, 120, "", {}};
  ColoredMultiGraph m(2, {{1, 2, 1}, {1, 1, 2}, {2, 2, 3}});
  const int k = 6;
  Rational gamma = *colored_robustness_exact(m).gamma_exact;
  GadgetSet gs = find_gadgets(4, 3, k, 2024, false);
  Graph g = gadgetize(m, gs);
  AdversarialOptions ao;
  ao.samples = 100000;
  ao.seed = 3;
  for (int j = 0; j < 3; ++j) {
    std::vector<Vertex> block;
    for (int t = 1; t <= k; ++t) block.push_back(2 + j * k + t);
    ao.blocks.push_back(block);
  }
  RobustnessReport rep = robustness_adversarial(g, ao);
  const Rational bound = gamma / (3 * k);
  r.property_holds = m.is_eligible() && g.n() == 20 && rep.gamma_upper >= bound;
  r.detail = "colored gamma = " + rs(gamma) + ", " + std::to_string(g.n()) + " vertices, best ratio found " +
             rs(rep.gamma_upper) + " >= " + rs(bound) + " over " + std::to_string(rep.permutations_examined) +
             " permutations";
  r.data = {{"colored_gamma", rs(gamma)}, {"bound", rs(bound)}, {"adversarial", rep.to_json()}};
  return r;
}

// ------------------------------------------------------------------ 4
CriterionResult directed_check() {
  CriterionResult r{4, "directed to undirected transformation", false, 0, 30, "", {}};
  PermutationFamily fam{{Permutation({2, 3, 1}), Permutation::transposition(3, 1, 2)}};
  DirectedColoredMultiGraph d = primary_graph(fam);
  Rational g_dir = *directed_colored_robustness_exact(d).gamma_exact;
  ColoredMultiGraph u = directed_to_undirected(d);
  Rational g_und = *colored_robustness_exact(u).gamma_exact;
  r.property_holds = g_und >= g_dir / 2 && u.n() == 9;
  r.detail = "directed gamma = " + rs(g_dir) + ", transformed (" + std::to_string(u.n()) + " vertices) gamma = " +
             rs(g_und) + ", required >= " + rs(g_dir / 2);
  r.data = {{"directed_gamma", rs(g_dir)}, {"undirected_gamma", rs(g_und)}};
  return r;
}

// ------------------------------------------------------------------ 5
CriterionResult schreier_check(int threads) {
  CriterionResult r{5, "SL2(p) Schreier graphs for p = 5, 7", false, 0, 300, "", {}};
  bool ok = true;
  std::ostringstream det;
  for (std::int64_t p : {5, 7}) {
    PermutationFamily fam = sl2_projective_perms(p, {Mat2{1, 1, 0, 1}, Mat2{0, 1, -1, 0}});
    SufficientConditionOptions o;
    o.robustness_cap = 9;
    o.expansion_cap = 30;
    o.samples = 20000;
    o.seed = static_cast<std::uint64_t>(p);
    o.threads = threads;
    SufficientConditionReport rep = check_sufficient_condition(fam, o);
    const Graph sec = secondary_graph(fam).underlying_simple();
    const bool connected = is_connected(sec);
    const bool exact_exp = rep.secondary_expansion.gamma_combinatorial.has_value();
    const Rational pg = rep.primary_robustness.gamma_exact.value_or(Rational(0));
    const bool primary_exact = rep.primary_robustness.gamma_exact.has_value();
    const bool here = primary_exact && pg > Rational(0) && connected && rep.secondary_gamma > Rational(0) &&
                      (p != 5 || exact_exp) && rep.robustness_implication;
    ok = ok && here;
    det << (p == 5 ? "" : "; ") << "p=" << p << ": primary gamma " << rs(pg) << ", secondary " << sec.n() << " vertices "
        << (connected ? "connected" : "disconnected") << " expansion " << (exact_exp ? "" : ">= ")
        << rs(rep.secondary_gamma) << (exact_exp ? " (exact)" : " (lower bound)");
    r.data[std::to_string(p)] = {{"primary_gamma", rs(pg)},
                                 {"secondary_expansion", rep.secondary_expansion.to_json()},
                                 {"connected", connected},
                                 {"robustness_implication", rep.robustness_implication}};
  }
  r.property_holds = ok;
  r.detail = det.str();
  return r;
}

// ------------------------------------------------------------------ 6
CriterionResult three_step_check() {
  CriterionResult r{6, "three-step assembly at ell = 7", false, 0, 300, "", {}};
  SmallRsoOptions o;
  o.exact = true;
  SmallRsoResult a = find_rso_small(7, 3, 1, 100000, o);
  SmallRsoOptions o2 = o;
  o2.accept = [&](const Graph& g) { return !are_isomorphic(g, a.graph); };
  SmallRsoResult b = find_rso_small(7, 3, 2, 100000, o2);
  ThreeStepParams p;
  p.n = 4 * 2 * 7;
  p.ell = 7;
  p.dprime = 3;
  p.g1 = a.graph;
  p.g2 = b.graph;
  p.perms = greedy_far_collection(7, 4, 0.5, 3);
  p.seed = 3;
  p.validate();
  Graph gn = assemble(p);

  std::vector<Graph> comps;
  for (int i = 1; i <= p.components(); ++i) comps.push_back(component_graph(p.g1, p.g2, p.perm(i)));
  bool pairwise = true, asym = true, distinct = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (nontrivial_automorphism(comps[i])) asym = false;
    for (std::size_t j = i + 1; j < comps.size(); ++j)
      if (are_isomorphic(comps[i], comps[j])) pairwise = false;
  }
  for (int i = 1; i <= p.components(); ++i)
    if (p.index_of(p.perm(i)) != i) distinct = false;

  AdversarialOptions ao;
  ao.samples = 100000;
  ao.seed = 6;
  for (int c = 0; c < p.components(); ++c) {
    std::vector<Vertex> block;
    for (int t = 1; t <= 14; ++t) block.push_back(c * 14 + t);
    ao.blocks.push_back(block);
  }
  RobustnessReport rep = robustness_adversarial(gn, ao);
  r.property_holds = pairwise && asym && distinct && rep.gamma_upper >= Rational(1, 10);
  r.detail = std::string("components pairwise non-isomorphic: ") + (pairwise ? "yes" : "no") +
             ", asymmetric: " + (asym ? "yes" : "no") + ", indices distinct: " + (distinct ? "yes" : "no") +
             ", gamma_upper = " + rs(rep.gamma_upper) + " >= 1/10";
  r.data = {{"params", p.to_json()}, {"adversarial", rep.to_json()}};
  return r;
}

// ------------------------------------------------------------------ 7
CriterionResult local_check() {
  CriterionResult r{7, "local algorithms round-trip at n = 1024", false, 0, 120, "", {}};
  SmallRsoOptions o;
  o.exact = false;
  o.regular = true;
  o.adversarial_samples = 2000;
  SmallRsoResult a = find_rso_small(16, 3, 11, 100000, o);
  SmallRsoOptions o2 = o;
  o2.accept = [&](const Graph& g) { return !are_isomorphic(g, a.graph); };
  SmallRsoResult b = find_rso_small(16, 4, 12, 100000, o2);
  ThreeStepParams p;
  p.n = 1024;
  p.ell = 16;
  p.dprime = 3;
  p.g1 = a.graph;
  p.g2 = b.graph;
  p.code = make_small_code(5, 5.0 / 8, 3);
  p.seed = 1;
  p.validate();
  Graph gn = assemble(p);
  AugmentedGraph aug = augment_for_local_ordering(gn, p, 77);
  const std::int64_t budget = static_cast<std::int64_t>(kLocalQueryConstant) * p.ell * p.ell * p.ell;

  int wrong = 0, calls = 0;
  std::int64_t max_order = 0, max_rev = 0;
  for (int copy = 0; copy < 100; ++copy) {
    std::mt19937_64 rng(1000 + copy);
    Permutation mu = Permutation::random(aug.graph.n(), rng);
    Permutation inv = mu.inverse();
    Graph h = apply_permutation(aug.graph, mu);
    LocalGraphOracle orc(h);
    LocalOrderer lo(p, aug, orc);
    std::uniform_int_distribution<int> any(1, h.n());
    std::uniform_int_distribution<int> orig(1, p.n);
    std::vector<Vertex> sample{any(rng), any(rng), mu(orig(rng))};
    for (Vertex v : sample) {
      try {
        Vertex i = lo.order(v);
        max_order = std::max(max_order, lo.last_queries());
        if (i != inv(v)) ++wrong;
        Vertex back = lo.reversed(i, any(rng));
        max_rev = std::max(max_rev, lo.last_queries());
        if (back != v) ++wrong;
      } catch (const std::exception&) {
        ++wrong;
      }
      calls += 2;
    }
  }
  r.property_holds = wrong == 0 && max_order <= budget && max_rev <= budget;
  r.detail = std::to_string(calls) + " calls on " + std::to_string(aug.graph.n()) + "-vertex copies, " +
             std::to_string(wrong) + " wrong; max queries " + std::to_string(max_order) + " (order), " +
             std::to_string(max_rev) + " (reversed) <= " + std::to_string(kLocalQueryConstant) + " * ell^3 = " +
             std::to_string(budget);
  r.data = {{"query_constant", kLocalQueryConstant},
            {"ell", p.ell},
            {"n", p.n},
            {"augmented_vertices", aug.graph.n()},
            {"max_order_queries", max_order},
            {"max_reversed_queries", max_rev},
            {"wrong", wrong}};
  return r;
}

// ------------------------------------------------------------------ 8
CriterionResult permutation_check() {
  CriterionResult r{8, "code-based permutation collection", false, 0, 5, "", {}};
  BinaryCode c = make_small_code(6, 6.0 / 16, 8);
  std::vector<Permutation> ps;
  for (std::int64_t i = 1; i <= c.size(); ++i) ps.push_back(code_based_perm(c, i));
  bool identity = true, bound = true;
  int min_dist = -1;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const int d = perm_distance(ps[i], ps[j]);
      if (d != 2 * hamming(c.encode(static_cast<std::int64_t>(i) + 1), c.encode(static_cast<std::int64_t>(j) + 1)))
        identity = false;
      if (d < 2 * c.min_distance) bound = false;
      if (min_dist < 0 || d < min_dist) min_dist = d;
    }
  r.property_holds = ps.size() == 64 && c.distance_verified && identity && bound;
  r.detail = std::to_string(ps.size()) + " permutations on [" + std::to_string(2 * c.L) +
             "], distance = 2 * hamming for all pairs: " + (identity ? "yes" : "no") + ", min distance " +
             std::to_string(min_dist) + " >= 2 * " + std::to_string(c.min_distance) + " (verified)";
  r.data = {{"code", c.to_json()}, {"min_perm_distance", min_dist}};
  return r;
}

// ------------------------------------------------------------------ 9
CriterionResult quasi_orthogonality_check() {
  CriterionResult r{9, "quasi-orthogonality of small tables", false, 0, 5, "", {}};
  Rational e2 = quasi_orthogonality_error(inner_product_table(2));
  TwoSourceFunction b = small_bias_bipartite(4);
  Rational eb = quasi_orthogonality_error(b);
  r.property_holds = e2 == Rational(1, 6) && b.n1 == 15 && b.n2 == 63 && eb <= Rational(3, 10);
  r.detail = "inner product on 2 bits: " + rs(e2) + " (expected 1/6); small-bias table " + std::to_string(b.n1) +
             "x" + std::to_string(b.n2) + ": " + rs(eb) + " <= 3/10";
  r.data = {{"ip2", rs(e2)}, {"small_bias", rs(eb)}};
  return r;
}

TwoSourceFunction searched_six() {
  return search_small_nmE(6, Rational(35, 100), 1, 10000, NmMode::Exact);
}

// ------------------------------------------------------------------ 10
CriterionResult nm_graphs_check() {
  CriterionResult r{10, "extractor search and dense graphs", false, 0, 600, "", {}};
  TwoSourceFunction f6 = searched_six();
  const bool found = f6.eps_nm && *f6.eps_nm <= Rational(35, 100);

  // N = 4 table: seeded search, accepting the first table whose graph is robust.
  Rational g4{0};
  std::uint64_t seed4 = 0;
  for (std::uint64_t s = 1; s <= 64 && g4 == Rational(0); ++s) {
    TwoSourceFunction f4;
    try {
      f4 = search_small_nmE(4, Rational(1, 2), s, 1000, NmMode::Exact);
    } catch (const BudgetExhausted&) {
      continue;
    }
    Rational g = *robustness_exact(nmE_graph(f4)).gamma_exact;
    if (g > Rational(0)) {
      g4 = g;
      seed4 = s;
    }
  }

  TwoSourceFunction f3 = search_small_nmE(7, Rational(45, 100), 10, 10000, NmMode::Sampled, 4000);
  TwoSourceFunction b3 = small_bias_bipartite(3);
  Graph tri = tri_graph(f3, b3);
  AdversarialOptions ao;
  ao.samples = 100000;
  ao.seed = 10;
  std::vector<Vertex> v0, v1;
  for (int i = 1; i <= 7; ++i) {
    v0.push_back(i);
    v1.push_back(7 + i);
  }
  ao.blocks = {v0, v1};
  RobustnessReport rt = robustness_adversarial(tri, ao);
  r.property_holds = found && g4 > Rational(0) && tri.n() == 45 && rt.gamma_upper >= Rational(1);
  r.detail = "N=6 table eps_nm = " + (f6.eps_nm ? rs(*f6.eps_nm) : std::string("?")) + " (exact); N=4 graph gamma = " +
             rs(g4) + " (seed " + std::to_string(seed4) + "); 45-vertex three-part graph gamma_upper = " +
             rs(rt.gamma_upper);
  r.data = {{"eps_nm_6", f6.eps_nm ? rs(*f6.eps_nm) : ""},
            {"eps_qo_6", f6.eps_qo ? rs(*f6.eps_qo) : ""},
            {"gamma_4", rs(g4)},
            {"seed_4", seed4},
            {"tri_adversarial", rt.to_json()}};
  return r;
}

// ------------------------------------------------------------------ 11
CriterionResult reversal_check_criterion() {
  CriterionResult r{11, "reversal check and tampering counterexample", false, 0, 120, "", {}};
  TwoSourceFunction f6 = searched_six();
  ReversalReport rev = reversal_check(f6, 0.1, NmMode::Exact);
  int half = 0;
  std::vector<std::string> vals;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    std::mt19937_64 rng(s);
    TwoSourceFunction e(3, 6);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 6; ++y) e.set(x, y, static_cast<int>(rng() & 1));
    TamperingReport ap = tampering_counterexample(e, NmMode::Exact);
    vals.push_back(rs(ap.one_sided));
    if (ap.one_sided == Rational(1, 2)) ++half;
  }
  r.property_holds = rev.checked && rev.holds && half == 5;
  std::string joined;
  for (const auto& v : vals) joined += (joined.empty() ? "" : ",") + v;
  r.detail = std::string("reversal ") + (rev.checked ? (rev.holds ? "holds" : "fails") : "not checked") +
             " (restricted eps " + rs(rev.restricted_eps) + ", nm eps " + rs(rev.nm_eps) + ", bound " +
             fmt("%.3f", rev.bound) + "); one-sided tampering distances: " + joined;
  r.data = {{"restricted_eps", rs(rev.restricted_eps)}, {"nm_eps", rs(rev.nm_eps)}, {"bound", rev.bound},
            {"tampering", vals}};
  return r;
}

// ------------------------------------------------------------------ 12
CriterionResult recovery_check() {
  CriterionResult r{12, "ordering recovery on the designated dense graph", false, 0, 300, "", {}};
  EfficientSoGraph p = efficient_so_graph_random(100, 9, 12);
  const Graph& g = p.graph;
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    std::mt19937_64 rng(500 + t);
    Permutation mu = Permutation::random(g.n(), rng);
    try {
      if (recover_ordering(apply_permutation(g, mu), p) == mu.inverse()) ++ok;
    } catch (const std::exception&) {
    }
  }
  // Corrupt the S1 signature: drop or add one S1-S2 edge.
  int rejected = 0;
  std::mt19937_64 rng(77);
  for (int t = 0; t < 10; ++t) {
    const int j = static_cast<int>(rng() % p.s2_pairs.size());
    const Vertex s2v = p.m + 1 + j;
    auto [a, b] = p.s2_pairs[j];
    std::vector<std::pair<Vertex, Vertex>> es;
    for (const auto& e : g.edges()) es.emplace_back(e.u, e.v);
    if (t % 2 == 0) {
      const Vertex drop = (t / 2) % 2 ? b : a;
      std::erase(es, std::make_pair(std::min(drop, s2v), std::max(drop, s2v)));
    } else {
      Vertex c = 1;
      while (c == a || c == b) ++c;
      es.emplace_back(c, s2v);
    }
    Graph bad(g.n(), es);
    Permutation mu = Permutation::random(g.n(), rng);
    try {
      recover_ordering(apply_permutation(bad, mu), p);
    } catch (const Rejected&) {
      ++rejected;
    }
  }
  r.property_holds = ok == 50 && rejected == 10;
  r.detail = std::to_string(g.n()) + "-vertex graph; recovered " + std::to_string(ok) + "/50 permutations, rejected " +
             std::to_string(rejected) + "/10 corruptions";
  r.data = {{"recovered", ok}, {"rejected", rejected}, {"vertices", g.n()}};
  return r;
}

// ------------------------------------------------------------------ 13
struct ToyBase {
  ThreeStepParams params;
  AugmentedGraph aug;
};

ToyBase toy_base() {
  SmallRsoOptions o;
  o.exact = true;
  o.min_degree = 2;
  SmallRsoResult a = find_rso_small(8, 3, 21, 100000, o);
  SmallRsoOptions o2 = o;
  o2.accept = [&](const Graph& g) { return !are_isomorphic(g, a.graph); };
  SmallRsoResult b = find_rso_small(8, 4, 22, 100000, o2);
  ToyBase t;
  t.params.n = 64;
  t.params.ell = 8;
  t.params.dprime = 3;
  t.params.g1 = a.graph;
  t.params.g2 = b.graph;
  t.params.code = make_small_code(2, 0.5, 5);
  t.params.seed = 5;
  t.params.validate();
  t.aug = augment_for_local_ordering(assemble(t.params), t.params, 31, 4);
  return t;
}

CriterionResult reductions_check() {
  CriterionResult r{13, "reductions between string and graph properties", false, 0, 120, "", {}};
  ToyBase tb = toy_base();
  const Graph& gstar = tb.aug.graph;
  const int big_n = gstar.n();
  std::mt19937_64 rng(13);

  int bd_ok = 0, bd_total = 0;
  for (int t = 0; t < 3; ++t) {
    Bits s(big_n);
    for (auto& x : s) x = static_cast<std::uint8_t>(rng() & 1);
    Graph gs = encode_string_bd(s, gstar);
    Permutation mu = t == 0 ? Permutation::identity(gs.n()) : Permutation::random(gs.n(), rng);
    Graph h = apply_permutation(gs, mu);
    BdBase base{&gstar, &tb.params, &tb.aug};
    for (BdDecodeMode mode : {BdDecodeMode::Exact, BdDecodeMode::Local}) {
      ++bd_total;
      try {
        if (decode_graph_bd(h, base, mode) == s) ++bd_ok;
      } catch (const std::exception&) {
      }
    }
  }

  auto g6 = *first_asymmetric_graph(6);
  Graph g294 = random_dense(294, 13);
  int dense_ok = 0;
  for (int t = 0; t < 3; ++t) {
    Bits s(36);
    for (auto& x : s) x = static_cast<std::uint8_t>(rng() & 1);
    Graph gs = encode_string_dense(s, g6, g294);
    Permutation mu = t == 0 ? Permutation::identity(gs.n()) : Permutation::random(gs.n(), rng);
    try {
      if (decode_graph_dense(apply_permutation(gs, mu), g6, g294) == s) ++dense_ok;
    } catch (const std::exception&) {
    }
  }

  // Query adapter: every graph query reads at most one bit, and reads one
  // exactly when the answer depends on a pendant pair.
  Bits s(big_n);
  for (auto& x : s) x = static_cast<std::uint8_t>(rng() & 1);
  BdQueryAdapter ad(gstar, [&](int i) { return static_cast<int>(s[i - 1]); });
  std::uniform_int_distribution<int> any(1, 3 * big_n), base_idx(1, big_n);
  for (int q = 0; q < 3000; ++q) {
    if (q % 3 == 0) ad.neighbors(any(rng));
    else if (q % 3 == 1) ad.adjacent(any(rng), any(rng));
    else {
      const int i = base_idx(rng);
      ad.adjacent(big_n + i, 2 * big_n + i);
    }
  }
  bool log_ok = ad.log().string_queries <= ad.log().graph_queries;
  std::int64_t equal_entries = 0;
  for (const auto& e : ad.log().entries) {
    if (e.string_queries > 1) log_ok = false;
    if (e.string_queries == 1) {
      ++equal_entries;
      if (!e.gadget_pair) log_ok = false;
    }
    if (e.gadget_pair && e.string_queries != 1) log_ok = false;
  }

  // Distance identity, exhaustively over all string pairs.
  bool dist_ok = true;
  for (int bits : {6, 4}) {
    Graph small_base = bits == 6 ? g6 : path_graph(2);
    Graph big = bits == 6 ? Graph() : random_dense(98, 1);
    std::vector<Graph> enc;
    for (int x = 0; x < (1 << bits); ++x) {
      Bits w(bits);
      for (int t = 0; t < bits; ++t) w[t] = static_cast<std::uint8_t>(x >> t & 1);
      enc.push_back(bits == 6 ? encode_string_bd(w, small_base) : encode_string_dense(w, small_base, big));
    }
    for (int x = 0; x < (1 << bits); ++x)
      for (int y = 0; y < (1 << bits); ++y)
        if (symdiff(enc[x], enc[y]) != std::popcount(static_cast<unsigned>(x ^ y))) dist_ok = false;
  }

  r.property_holds = bd_ok == bd_total && dense_ok == 3 && log_ok && dist_ok;
  r.detail = "bounded-degree round trips " + std::to_string(bd_ok) + "/" + std::to_string(bd_total) +
             " (base of " + std::to_string(big_n) + " vertices), dense " + std::to_string(dense_ok) +
             "/3, adapter log " + (log_ok ? "consistent" : "inconsistent") + " (" + std::to_string(equal_entries) +
             " of " + std::to_string(ad.log().graph_queries) + " queries read a bit), distance identity " +
             (dist_ok ? "holds" : "fails");
  r.data = {{"bd_round_trips", bd_ok}, {"dense_round_trips", dense_ok}, {"log_ok", log_ok},
            {"graph_queries", ad.log().graph_queries}, {"string_queries", ad.log().string_queries},
            {"distance_identity", dist_ok}};
  return r;
}

// ------------------------------------------------------------------ 14
CriterionResult superimpose_check() {
  CriterionResult r{14, "superimposing a bounded-degree graph", false, 0, 300, "", {}};
  int holds = 0, nontrivial = 0;
  for (int t = 0; t < 50; ++t) {
    std::mt19937_64 rng(1400 + t);
    const int n = 6 + t % 3;
    Graph g = random_pair_graph(n, 0.5, rng);
    Graph h = random_pair_graph(n, 0.25, rng);
    Rational gg = *robustness_exact(g).gamma_exact;
    Rational gu = *robustness_exact(superimpose(g, h)).gamma_exact;
    if (gu >= gg - h.max_degree()) ++holds;
    if (gg - h.max_degree() > Rational(0)) ++nontrivial;
  }
  r.property_holds = holds == 50;
  r.detail = std::to_string(holds) + "/50 pairs satisfy the bound (" + std::to_string(nontrivial) +
             " with a positive right-hand side)";
  r.data = {{"holds", holds}, {"positive_rhs", nontrivial}};
  return r;
}

// ------------------------------------------------------------------ 15
CriterionResult random_dense_check() {
  CriterionResult r{15, "random dense graphs", false, 0, 300, "", {}};
  int small_ok = 0;
  for (std::uint64_t s = 1; s <= 20; ++s)
    if (*robustness_exact(random_dense(7, s)).gamma_exact > Rational(0)) ++small_ok;
  int big_ok = 0;
  Rational worst{-1};
  for (std::uint64_t s = 1; s <= 20; ++s) {
    Graph g = random_dense(32, 100 + s);
    AdversarialOptions ao;
    ao.samples = 20000;
    ao.seed = s;
    RobustnessReport rep = robustness_adversarial(g, ao);
    if (to_double(rep.gamma_upper) >= 0.05 * 32) ++big_ok;
    if (worst < Rational(0) || rep.gamma_upper < worst) worst = rep.gamma_upper;
  }
  r.property_holds = small_ok >= 18 && big_ok >= 18;
  r.detail = "n=7: " + std::to_string(small_ok) + "/20 seeds with gamma > 0 (need 18); n=32: " +
             std::to_string(big_ok) + "/20 seeds with gamma_upper >= 1.6 (need 18), smallest " + rs(worst);
  r.data = {{"n7_positive", small_ok}, {"n32_passing", big_ok}, {"n32_smallest", rs(worst)}};
  return r;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
  const std::vector<std::function<CriterionResult()>> all = {
      asymmetry_frontier,
      [&] { return exact_oracle(opt.threads); },
      gadget_check,
      directed_check,
      [&] { return schreier_check(opt.threads); },
      three_step_check,
      local_check,
      permutation_check,
      quasi_orthogonality_check,
      nm_graphs_check,
      reversal_check_criterion,
      recovery_check,
      reductions_check,
      superimpose_check,
      random_dense_check,
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = all[i]();
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.property_holds = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.budget_seconds = kBudget[id];
    if (opt.on_result) opt.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %2d  %s  (%.2f s of %.0f s)", r.pass() ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds, r.budget_seconds);
  return std::string(head) + "  " + r.detail;
}

nlohmann::json suite_manifest(const std::vector<CriterionResult>& results) {
  nlohmann::json j;
  j["local_query_constant"] = kLocalQueryConstant;
  nlohmann::json arr = nlohmann::json::array();
  int passed = 0;
  for (const auto& r : results) {
    arr.push_back({{"id", r.id},
                   {"title", r.title},
                   {"pass", r.pass()},
                   {"property_holds", r.property_holds},
                   {"seconds", r.seconds},
                   {"budget_seconds", r.budget_seconds},
                   {"detail", r.detail},
                   {"data", r.data}});
    passed += r.pass();
  }
  j["criteria"] = std::move(arr);
  j["passed"] = passed;
  j["total"] = static_cast<int>(results.size());
  return j;
}

}  // namespace rso
