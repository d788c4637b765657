#ifndef RSO_TEST_TOY_BASE_HPP
#define RSO_TEST_TOY_BASE_HPP

#include "rso/isomorphism.hpp"
#include "rso/three_step.hpp"

// A 64-vertex three-step graph with code-based permutations, augmented with a
// 64-vertex path-finder graph and gadgets. Built once per test binary.
struct ToyBase {
  rso::ThreeStepParams params;
  rso::AugmentedGraph aug;
};

inline const ToyBase& toy_base() {
  static const ToyBase t = [] {
    using namespace rso;
    SmallRsoOptions o;
    o.exact = true;
    o.min_degree = 2;
    SmallRsoResult a = find_rso_small(8, 3, 21, 100000, o);
    SmallRsoOptions o2 = o;
    o2.accept = [&](const Graph& g) { return !are_isomorphic(g, a.graph); };
    SmallRsoResult b = find_rso_small(8, 4, 22, 100000, o2);
    ToyBase tb;
    tb.params.n = 64;
    tb.params.ell = 8;
    tb.params.dprime = 3;
    tb.params.g1 = a.graph;
    tb.params.g2 = b.graph;
    tb.params.code = make_small_code(2, 0.5, 5);
    tb.params.seed = 5;
    tb.params.validate();
    tb.aug = augment_for_local_ordering(assemble(tb.params), tb.params, 31, 4);
    return tb;
  }();
  return t;
}

#endif
