#ifndef RSO_LOCAL_ORDER_HPP
#define RSO_LOCAL_ORDER_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rso/graph.hpp"
#include "rso/three_step.hpp"

namespace rso {

// Neighbor lists with a cache that lives for one top-level call.
class CachingOracle {
 public:
  explicit CachingOracle(LocalGraphOracle& o) : o_(&o) {}
  const std::vector<Vertex>& neighbors(Vertex v);
  int degree(Vertex v) { return static_cast<int>(neighbors(v).size()); }
  void clear() { cache_.clear(); }
  std::int64_t queries() const { return o_->queries(); }
  int n() const { return o_->n(); }

 private:
  LocalGraphOracle* o_;
  std::unordered_map<Vertex, std::vector<Vertex>> cache_;
};

struct ColoredNeighbor {
  Vertex other;
  int color;
};

// One gadget found in the oracle graph. vertices[t-1] is the oracle vertex
// playing gadget position t; p_end / q_end are the original vertices attached
// to the designated endpoints.
struct GadgetInstance {
  int gadget = -1;  // index into the gadget set
  int color = 0;
  Vertex p_end = 0, q_end = 0;
  std::vector<Vertex> vertices;
};

// Sees the multigraph behind an oracle graph. Plain graphs expose their edges
// with color 1; gadgetized graphs are decoded gadget by gadget.
class EdgeView {
 public:
  virtual ~EdgeView() = default;
  // Non-loop edges at an original vertex.
  virtual std::vector<ColoredNeighbor> edges_at(Vertex v) = 0;
  virtual bool is_original(Vertex v) = 0;
  virtual void clear() = 0;
  virtual std::int64_t queries() const = 0;
};

class PlainView : public EdgeView {
 public:
  explicit PlainView(LocalGraphOracle& o) : c_(o) {}
  std::vector<ColoredNeighbor> edges_at(Vertex v) override;
  bool is_original(Vertex) override { return true; }
  void clear() override { c_.clear(); }
  std::int64_t queries() const override { return c_.queries(); }

 private:
  CachingOracle c_;
};

class GadgetView : public EdgeView {
 public:
  GadgetView(LocalGraphOracle& o, const GadgetSet& gadgets, const std::map<int, int>& color_to_gadget,
             int degree_threshold);
  std::vector<ColoredNeighbor> edges_at(Vertex v) override;
  bool is_original(Vertex v) override { return c_.degree(v) > threshold_; }
  void clear() override { c_.clear(); }
  std::int64_t queries() const override { return c_.queries(); }

  std::vector<GadgetInstance> gadgets_at(Vertex v);
  // The gadget containing a non-original vertex w. Throws Rejected when the
  // surroundings of w do not look like a known gadget.
  GadgetInstance gadget_of(Vertex w);

 private:
  CachingOracle c_;
  const GadgetSet* gadgets_;
  std::map<int, int> gadget_to_color_;
  int threshold_;
  int max_k_ = 0;
};

// Oracle wrapper that hides the pendant vertices of the string encoding:
// neighbors of degree <= max_hidden_degree are dropped. Each inner neighbor
// list fetched counts as one query on the inner oracle.
LocalGraphOracle filtered_oracle(LocalGraphOracle& inner, int max_hidden_degree);

// Local self-ordering and local reversed self-ordering of a three-step graph,
// either plain (oracle isomorphic to G_n) or augmented (oracle isomorphic to G*).
class LocalOrderer {
 public:
  LocalOrderer(const ThreeStepParams& p, LocalGraphOracle& oracle);
  LocalOrderer(const ThreeStepParams& p, const AugmentedGraph& aug, LocalGraphOracle& oracle);

  // φ(v): index of oracle vertex v in G_n (plain) or G* (augmented).
  Vertex order(Vertex v);
  // φ^{-1}(i), starting the walk from oracle vertex s.
  Vertex reversed(Vertex i, Vertex s);
  // Queries made by the most recent order/reversed call.
  std::int64_t last_queries() const { return last_queries_; }
  // Number of G_n/path-finder steps walked by the most recent reversed call.
  int last_path_length() const { return last_path_; }

 private:
  struct Decoded {
    int component = 0;
    std::vector<Vertex> by_pos;  // oracle vertex at component position 1..2ell
  };
  void begin_call();
  void end_call();
  Vertex order_original(Vertex v);
  const Decoded& decode_component(Vertex v);
  Vertex order_gadget_vertex(Vertex w);

  const ThreeStepParams* p_;
  const AugmentedGraph* aug_ = nullptr;
  std::unique_ptr<EdgeView> view_;
  GadgetView* gview_ = nullptr;
  std::unordered_map<Vertex, std::pair<int, int>> where_;  // oracle vertex -> (decode slot, position)
  std::deque<Decoded> decoded_;  // stable references
  std::int64_t start_queries_ = 0, last_queries_ = 0;
  int last_path_ = 0;
};

}  // namespace rso

#endif
