#ifndef RSO_GENERATORS_HPP
#define RSO_GENERATORS_HPP

#include <optional>
#include <random>

#include "rso/graph.hpp"

namespace rso {

// Each pair independently with probability p.
Graph random_gnp(int n, double p, std::mt19937_64& rng);

// Permutation model: d/2 uniform permutations contribute edges {v, π(v)}; odd d
// adds a uniform perfect matching (n must be even). Returns nullopt when the
// draw has a self-loop or a repeated pair.
std::optional<Graph> random_regular_permutation_model(int n, int d, std::mt19937_64& rng);

// Uniform perfect matching on 1..n (n even), as a list of pairs.
std::vector<std::pair<Vertex, Vertex>> random_perfect_matching(int n, std::mt19937_64& rng);

}  // namespace rso

#endif
