#ifndef RSO_PERMUTATIONS_HPP
#define RSO_PERMUTATIONS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"

namespace rso {

int perm_distance(const Permutation& a, const Permutation& b);

// Pairwise distance at least ceil(delta * ell), built one permutation at a
// time from a seeded stream of uniform candidates. The first member is the
// identity. Throws BudgetExhausted when `budget` candidates are used up.
std::vector<Permutation> greedy_far_collection(int ell, int m, double delta, std::uint64_t seed,
                                               std::int64_t budget = 100000);

using Bits = std::vector<std::uint8_t>;

// Linear code over GF(2) given by k generator rows of length L.
struct BinaryCode {
  int k = 0;
  int L = 0;
  std::vector<Bits> generator;
  int min_distance = 0;
  bool distance_verified = false;  // exhaustive scan over all codewords

  std::int64_t size() const { return std::int64_t{1} << k; }
  // Codeword of message i in 1..2^k; bit t of (i-1) selects generator row t.
  Bits encode(std::int64_t i) const;
  // Message index of a codeword, or nullopt when it is not a codeword.
  std::optional<std::int64_t> decode_exact(const Bits& word) const;
  nlohmann::json to_json() const;
};

int hamming(const Bits& a, const Bits& b);

// Random full-rank generator with L = ceil(k / rate_target). For k <= 12 the
// minimum distance is computed exhaustively; above that it is a sampled upper
// bound and distance_verified stays false.
BinaryCode make_small_code(int k, double rate_target, std::uint64_t seed);
BinaryCode repetition_code(int L);

// Permutation on [2L] swapping 2j-1 and 2j exactly where bit j of C(i) is 1.
Permutation code_based_perm(const BinaryCode& c, std::int64_t i);
// Reads the codeword back from a code-based permutation (no decoding).
Bits perm_to_word(const Permutation& p);

}  // namespace rso

#endif
