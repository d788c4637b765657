#ifndef RSO_PT_REDUCTION_HPP
#define RSO_PT_REDUCTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"
#include "rso/permutations.hpp"
#include "rso/three_step.hpp"

namespace rso {

struct StringProperty {
  std::string name;
  std::function<bool(const Bits&)> contains;
};
// Membership in the code (strings of length C.L that are codewords).
StringProperty code_property(const BinaryCode& c);

struct QueryLogEntry {
  std::string kind;          // "neighbors" or "adjacent"
  Vertex u = 0, v = 0;
  int string_queries = 0;
  bool gadget_pair = false;  // answer depends on a pair {n+i, 2n+i}
};
struct QueryLog {
  std::int64_t graph_queries = 0;
  std::int64_t string_queries = 0;
  std::vector<QueryLogEntry> entries;  // kept only when recording is on
  bool record = true;

  nlohmann::json to_json() const;
};

// ------------------------------------------------------------ bounded degree

// G_n plus, for each i, vertices n+i and 2n+i joined to i, and to each other
// when s_i = 1.
Graph encode_string_bd(const Bits& s, const Graph& gn);

// How the base copy of G_n is recognized and ordered by the decoder.
struct BdBase {
  const Graph* graph = nullptr;                 // G_n (or G*)
  const ThreeStepParams* params = nullptr;      // set for local ordering
  const AugmentedGraph* aug = nullptr;          // set when the base is G*
};
enum class BdDecodeMode { Exact, Local };
// Recovers s from an isomorphic copy of some G'_s, or throws Rejected.
Bits decode_graph_bd(const Graph& gprime, const BdBase& base, BdDecodeMode mode);

// Answers queries on G'_s from G_n and a string oracle, logging how many
// string bits each graph query needed.
class BdQueryAdapter {
 public:
  BdQueryAdapter(const Graph& gn, std::function<int(int)> string_oracle);
  int n() const { return 3 * gn_->n(); }
  std::vector<Vertex> neighbors(Vertex v);
  bool adjacent(Vertex u, Vertex v);
  const QueryLog& log() const { return log_; }
  QueryLog& log() { return log_; }

 private:
  int bit(int i, QueryLogEntry& e);
  const Graph* gn_;
  std::function<int(int)> s_;
  QueryLog log_;
};

// A tester for a string property, written as a query machine: it receives an
// oracle for the bits (1-based) and returns its verdict.
using StringTester = std::function<bool(const std::function<int(int)>& bit, std::mt19937_64& rng)>;
// One-sided tester for membership in a small code: reads enough positions to
// determine the message, then checks `checks` random positions against the
// re-encoded codeword.
StringTester code_tester(const BinaryCode& c, int checks);

struct ReverseParams {
  double eps = 0.1;
  int samples = 0;         // 0 means ceil(10 / eps)
  std::uint64_t seed = 0;
};
struct ReverseResult {
  bool accept = false;
  std::string reason;              // which test rejected
  std::int64_t graph_queries = 0;  // neighbor queries to G'
  std::int64_t string_queries = 0; // bit queries made by the emulated tester
  std::int64_t local_calls = 0;    // local (reversed) self-ordering invocations
  Vertex pivot = 0;

  nlohmann::json to_json() const;
};
// Tests membership of G' (given by a neighbor oracle on [3N]) in the graph
// property built from the tester's string property over the base G*:
// pivot search and domain test, neighborhood consistency test, and tester
// emulation through local reversed self-ordering.
ReverseResult reverse_reduction_bd(const StringTester& tester, LocalGraphOracle& gprime,
                                   const ThreeStepParams& params, const AugmentedGraph& aug,
                                   const ReverseParams& rp);

// -------------------------------------------------------------------- dense

// s is read row-major as an m x m matrix, m = |G_m|; G_{49m} must have 49m
// vertices. Vertex i of G_m is joined to vertex m+j when s_{i,j} = 1.
Graph encode_string_dense(const Bits& s, const Graph& gm, const Graph& g49m);
// Degree split, exact ordering of each side, then the matrix is read off.
// Throws Rejected when G' is not an isomorphic copy of some encoding.
Bits decode_graph_dense(const Graph& gprime, const Graph& gm, const Graph& g49m);

}  // namespace rso

#endif
