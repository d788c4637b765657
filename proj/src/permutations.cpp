#include "rso/permutations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rso/error.hpp"

namespace rso {

int perm_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ValidationError("perm_distance: size mismatch");
  int d = 0;
  for (Vertex v = 1; v <= a.size(); ++v) d += a(v) != b(v);
  return d;
}

std::vector<Permutation> greedy_far_collection(int ell, int m, double delta, std::uint64_t seed, std::int64_t budget) {
  if (ell < 1 || m < 1) throw ValidationError("greedy_far_collection: need ell >= 1 and m >= 1");
  const int need = static_cast<int>(std::ceil(delta * ell - 1e-12));
  std::vector<Permutation> out{Permutation::identity(ell)};
  std::mt19937_64 rng(seed);
  std::int64_t used = 0;
  while (static_cast<int>(out.size()) < m) {
    if (used++ >= budget)
      throw BudgetExhausted("greedy_far_collection: only " + std::to_string(out.size()) + " of " + std::to_string(m) +
                            " permutations found within the budget");
    auto cand = Permutation::random(ell, rng);
    bool ok = true;
    for (const auto& p : out)
      if (perm_distance(p, cand) < need) { ok = false; break; }
    if (ok) out.push_back(std::move(cand));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (perm_distance(out[i], out[j]) < need) throw ValidationError("greedy_far_collection: verification failed");
  return out;
}

int hamming(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw ValidationError("hamming: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

Bits BinaryCode::encode(std::int64_t i) const {
  if (i < 1 || i > size()) throw ValidationError("encode: message index " + std::to_string(i) + " out of range");
  Bits w(L, 0);
  const std::int64_t msg = i - 1;
  for (int t = 0; t < k; ++t)
    if (msg >> t & 1)
      for (int j = 0; j < L; ++j) w[j] ^= generator[t][j];
  return w;
}

std::optional<std::int64_t> BinaryCode::decode_exact(const Bits& word) const {
  if (static_cast<int>(word.size()) != L) return std::nullopt;
  // Gaussian elimination on [G^T | word]: solve msg * G = word.
  std::vector<Bits> rows(L, Bits(k + 1, 0));
  for (int j = 0; j < L; ++j) {
    for (int t = 0; t < k; ++t) rows[j][t] = generator[t][j];
    rows[j][k] = word[j];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < k && r < L; ++c) {
    int sel = -1;
    for (int i = r; i < L; ++i)
      if (rows[i][c]) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    for (int i = 0; i < L; ++i)
      if (i != r && rows[i][c])
        for (int t = 0; t <= k; ++t) rows[i][t] ^= rows[r][t];
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < L; ++i)
    if (rows[i][k]) return std::nullopt;
  std::int64_t msg = 0;
  for (int i = 0; i < r; ++i)
    if (rows[i][k]) msg |= std::int64_t{1} << pivot_col[i];
  if (encode(msg + 1) != word) return std::nullopt;
  return msg + 1;
}

nlohmann::json BinaryCode::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["L"] = L;
  auto rows = nlohmann::json::array();
  for (const auto& g : generator) {
    std::string s;
    for (auto b : g) s.push_back(b ? '1' : '0');
    rows.push_back(s);
  }
  j["generator"] = rows;
  j["min_distance"] = min_distance;
  j["distance_verified"] = distance_verified;
  return j;
}

namespace {

int gf2_rank(std::vector<Bits> rows) {
  int r = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != r && rows[i][c])
        for (int t = 0; t < cols; ++t) rows[i][t] ^= rows[r][t];
    ++r;
  }
  return r;
}

void compute_distance(BinaryCode& c, std::uint64_t seed) {
  // For a linear code the minimum distance is the minimum nonzero weight.
  int best = c.L;
  if (c.k <= 12) {
    for (std::int64_t i = 2; i <= c.size(); ++i) {
      auto w = c.encode(i);
      best = std::min(best, static_cast<int>(std::count(w.begin(), w.end(), 1)));
    }
    c.distance_verified = true;
  } else {
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::uniform_int_distribution<std::int64_t> pick(2, c.size());
    for (int s = 0; s < 20000; ++s) {
      auto w = c.encode(pick(rng));
      best = std::min(best, static_cast<int>(std::count(w.begin(), w.end(), 1)));
    }
    c.distance_verified = false;
  }
  c.min_distance = best;
}

}  // namespace

BinaryCode make_small_code(int k, double rate_target, std::uint64_t seed) {
  if (k < 1 || k > 40) throw ValidationError("make_small_code: k must be in 1..40");
  if (!(rate_target > 0 && rate_target <= 1)) throw ValidationError("make_small_code: rate must be in (0,1]");
  BinaryCode c;
  c.k = k;
  c.L = static_cast<int>(std::ceil(k / rate_target - 1e-9));
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw BudgetExhausted("make_small_code: no full-rank generator found");
    c.generator.assign(k, Bits(c.L, 0));
    for (auto& row : c.generator)
      for (auto& b : row) b = coin(rng) ? 1 : 0;
    if (gf2_rank(c.generator) == k) break;
  }
  compute_distance(c, seed);
  return c;
}

BinaryCode repetition_code(int L) {
  if (L < 1) throw ValidationError("repetition_code: L must be positive");
  BinaryCode c;
  c.k = 1;
  c.L = L;
  c.generator = {Bits(L, 1)};
  compute_distance(c, 0);
  return c;
}

Permutation code_based_perm(const BinaryCode& c, std::int64_t i) {
  auto w = c.encode(i);
  std::vector<Vertex> img(2 * c.L);
  for (int j = 1; j <= c.L; ++j) {
    img[2 * j - 2] = 2 * j - 1 + w[j - 1];
    img[2 * j - 1] = 2 * j - w[j - 1];
  }
  return Permutation(std::move(img));
}

Bits perm_to_word(const Permutation& p) {
  if (p.size() % 2) throw ValidationError("perm_to_word: odd domain");
  Bits w(p.size() / 2, 0);
  for (int j = 1; j <= p.size() / 2; ++j) {
    Vertex a = p(2 * j - 1);
    if (a == 2 * j - 1 && p(2 * j) == 2 * j) w[j - 1] = 0;
    else if (a == 2 * j && p(2 * j) == 2 * j - 1) w[j - 1] = 1;
    else throw ValidationError("perm_to_word: not a code-based permutation");
  }
  return w;
}

}  // namespace rso
