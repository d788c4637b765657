#include "rso/local_order.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "rso/error.hpp"
#include "rso/isomorphism.hpp"

namespace rso {

const std::vector<Vertex>& CachingOracle::neighbors(Vertex v) {
  auto it = cache_.find(v);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(v, o_->neighbors(v)).first->second;
}

std::vector<ColoredNeighbor> PlainView::edges_at(Vertex v) {
  std::vector<ColoredNeighbor> out;
  for (Vertex w : c_.neighbors(v)) out.push_back({w, 1});
  return out;
}

// ------------------------------------------------------------------ gadgets

GadgetView::GadgetView(LocalGraphOracle& o, const GadgetSet& gadgets, const std::map<int, int>& color_to_gadget,
                       int degree_threshold)
    : c_(o), gadgets_(&gadgets), threshold_(degree_threshold) {
  for (auto [c, g] : color_to_gadget) gadget_to_color_[g] = c;
  for (const auto& g : gadgets.gadgets) max_k_ = std::max(max_k_, g.n());
}

GadgetInstance GadgetView::gadget_of(Vertex w) {
  if (is_original(w)) throw Rejected("vertex " + std::to_string(w) + " is not a gadget vertex");
  std::vector<Vertex> members{w};
  std::set<Vertex> seen{w};
  std::vector<std::pair<Vertex, Vertex>> attach;  // (gadget vertex, original vertex)
  for (std::size_t h = 0; h < members.size(); ++h) {
    for (Vertex x : c_.neighbors(members[h])) {
      if (is_original(x)) {
        attach.emplace_back(members[h], x);
        continue;
      }
      if (seen.insert(x).second) {
        members.push_back(x);
        if (static_cast<int>(members.size()) > max_k_)
          throw Rejected("gadget around vertex " + std::to_string(w) + " is larger than any known gadget");
      }
    }
  }
  if (attach.size() != 2 || attach[0].first == attach[1].first)
    throw Rejected("gadget around vertex " + std::to_string(w) + " does not have two attachment points");
  std::sort(members.begin(), members.end());
  auto local = [&](Vertex x) {
    return static_cast<Vertex>(std::lower_bound(members.begin(), members.end(), x) - members.begin() + 1);
  };
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex x : members)
    for (Vertex y : c_.neighbors(x))
      if (x < y && seen.count(y)) es.emplace_back(local(x), local(y));
  const Vertex a1 = local(attach[0].first), a2 = local(attach[1].first);
  std::vector<std::pair<Vertex, Vertex>> restored = es;
  restored.emplace_back(a1, a2);
  Graph h;
  try {
    h = Graph(static_cast<int>(members.size()), restored);
  } catch (const ValidationError&) {
    throw Rejected("gadget around vertex " + std::to_string(w) + " has adjacent attachment points");
  }
  for (std::size_t gi = 0; gi < gadgets_->size(); ++gi) {
    const Graph& g = gadgets_->gadgets[gi];
    if (g.n() != h.n()) continue;
    auto phi = find_isomorphism(g, h);  // unique: gadgets are asymmetric
    if (!phi) continue;
    const Edge& des = gadgets_->designated[gi];
    const Vertex pi = (*phi)(des.u), qi = (*phi)(des.v);
    if (!((pi == a1 && qi == a2) || (pi == a2 && qi == a1))) continue;
    GadgetInstance inst;
    inst.gadget = static_cast<int>(gi);
    auto col = gadget_to_color_.find(static_cast<int>(gi));
    inst.color = col == gadget_to_color_.end() ? static_cast<int>(gi) + 1 : col->second;
    inst.p_end = pi == a1 ? attach[0].second : attach[1].second;
    inst.q_end = pi == a1 ? attach[1].second : attach[0].second;
    inst.vertices.resize(g.n());
    for (Vertex t = 1; t <= g.n(); ++t) inst.vertices[t - 1] = members[(*phi)(t) - 1];
    return inst;
  }
  throw Rejected("gadget around vertex " + std::to_string(w) + " matches no known gadget");
}

std::vector<GadgetInstance> GadgetView::gadgets_at(Vertex v) {
  if (!is_original(v)) throw Rejected("vertex " + std::to_string(v) + " is not an original vertex");
  std::vector<GadgetInstance> out;
  std::set<Vertex> covered;
  for (Vertex w : c_.neighbors(v)) {
    if (is_original(w)) throw Rejected("original vertices " + std::to_string(v) + " and " + std::to_string(w) +
                                       " are adjacent");
    if (covered.count(w)) continue;
    GadgetInstance g = gadget_of(w);
    covered.insert(g.vertices.begin(), g.vertices.end());
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<ColoredNeighbor> GadgetView::edges_at(Vertex v) {
  std::vector<ColoredNeighbor> out;
  for (const auto& g : gadgets_at(v)) {
    if (g.p_end == v && g.q_end == v) continue;
    out.push_back({g.p_end == v ? g.q_end : g.p_end, g.color});
  }
  return out;
}

LocalGraphOracle filtered_oracle(LocalGraphOracle& inner, int max_hidden_degree) {
  return LocalGraphOracle(inner.n(), [&inner, max_hidden_degree](Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : inner.neighbors(v))
      if (static_cast<int>(inner.neighbors(w).size()) > max_hidden_degree) out.push_back(w);
    return out;
  });
}

// ------------------------------------------------------------------ orderer

LocalOrderer::LocalOrderer(const ThreeStepParams& p, LocalGraphOracle& oracle)
    : p_(&p), view_(std::make_unique<PlainView>(oracle)) {
  p.validate();
}

LocalOrderer::LocalOrderer(const ThreeStepParams& p, const AugmentedGraph& aug, LocalGraphOracle& oracle)
    : p_(&p), aug_(&aug) {
  p.validate();
  auto gv = std::make_unique<GadgetView>(oracle, aug.gadgets, aug.color_to_gadget, aug.degree_threshold);
  gview_ = gv.get();
  view_ = std::move(gv);
}

void LocalOrderer::begin_call() {
  view_->clear();
  where_.clear();
  decoded_.clear();
  start_queries_ = view_->queries();
  last_path_ = 0;
}

void LocalOrderer::end_call() { last_queries_ = view_->queries() - start_queries_; }

const LocalOrderer::Decoded& LocalOrderer::decode_component(Vertex v) {
  if (auto it = where_.find(v); it != where_.end()) return decoded_[it->second.first];
  const int ell = p_->ell;
  const int size = 2 * ell;
  // Vertices reachable through G_n edges (color 1), capped just above 2*ell.
  std::vector<Vertex> comp{v};
  std::map<Vertex, std::vector<Vertex>> adj;
  std::set<Vertex> seen{v};
  for (std::size_t h = 0; h < comp.size(); ++h) {
    auto& nb = adj[comp[h]];
    for (const auto& e : view_->edges_at(comp[h])) {
      if (e.color != 1) continue;
      nb.push_back(e.other);
      if (seen.insert(e.other).second) {
        comp.push_back(e.other);
        if (static_cast<int>(comp.size()) > size)
          throw Rejected("component of vertex " + std::to_string(v) + " has more than " + std::to_string(size) +
                         " vertices");
      }
    }
  }
  if (static_cast<int>(comp.size()) != size)
    throw Rejected("component of vertex " + std::to_string(v) + " has " + std::to_string(comp.size()) +
                   " vertices, expected " + std::to_string(size));
  std::sort(comp.begin(), comp.end());
  auto local = [&](Vertex x) {
    return static_cast<Vertex>(std::lower_bound(comp.begin(), comp.end(), x) - comp.begin() + 1);
  };
  std::vector<std::pair<Vertex, Vertex>> es;
  for (auto& [x, nb] : adj)
    for (Vertex y : nb)
      if (x < y) es.emplace_back(local(x), local(y));
  Graph k;
  try {
    k = Graph(size, es);
  } catch (const ValidationError& e) {
    throw Rejected(std::string("component is not a simple graph: ") + e.what());
  }

  const Graph& g1 = p_->g1;
  const Graph& g2 = p_->g2;
  Decoded out;
  bool found = false;
  for_each_induced_embedding(
      g1, k, [&](Vertex x, Vertex y) { return k.degree(y) == g1.degree(x) + 1; },
      [&](const std::vector<Vertex>& psi) {
        std::vector<char> in_a(size + 1, 0);
        for (Vertex y : psi) in_a[y] = 1;
        std::vector<Vertex> b;
        for (Vertex y = 1; y <= size; ++y)
          if (!in_a[y]) b.push_back(y);
        // Every B vertex has exactly one A neighbor.
        for (Vertex y : b) {
          int cnt = 0;
          for (Vertex z : k.neighbors(y)) cnt += in_a[z];
          if (cnt != 1) return true;
        }
        Graph kb = induced_subgraph(k, b);
        auto chi = find_isomorphism(g2, kb);  // G'' vertex y -> kb vertex chi(y)
        if (!chi) return true;
        Permutation chi_inv = chi->inverse();
        std::vector<Vertex> img(ell);
        for (Vertex x = 1; x <= ell; ++x) {
          Vertex mate = 0;
          for (Vertex z : k.neighbors(psi[x - 1]))
            if (!in_a[z]) mate = z;
          Vertex kb_idx = static_cast<Vertex>(std::lower_bound(b.begin(), b.end(), mate) - b.begin() + 1);
          img[x - 1] = chi_inv(kb_idx);
        }
        Permutation pi;
        try {
          pi = Permutation(img);
        } catch (const ValidationError&) {
          return true;
        }
        auto idx = p_->index_of(pi);
        if (!idx) return true;
        out.component = *idx;
        out.by_pos.assign(size + 1, 0);
        for (Vertex x = 1; x <= ell; ++x) out.by_pos[x] = comp[psi[x - 1] - 1];
        for (Vertex y = 1; y <= ell; ++y) out.by_pos[ell + y] = comp[b[(*chi)(y) - 1] - 1];
        found = true;
        return false;
      });
  if (!found) throw Rejected("component of vertex " + std::to_string(v) + " does not decode to a known component");
  const int slot = static_cast<int>(decoded_.size());
  for (int pos = 1; pos <= size; ++pos) where_[out.by_pos[pos]] = {slot, pos};
  decoded_.push_back(std::move(out));
  return decoded_.back();
}

Vertex LocalOrderer::order_original(Vertex v) {
  const Decoded& d = decode_component(v);
  return static_cast<Vertex>((d.component - 1) * 2 * p_->ell + where_.at(v).second);
}

Vertex LocalOrderer::order_gadget_vertex(Vertex w) {
  GadgetInstance g = gview_->gadget_of(w);
  Vertex a = order_original(g.p_end), b = order_original(g.q_end);
  auto it = aug_->edge_index.find({std::min(a, b), std::max(a, b), g.color});
  if (it == aug_->edge_index.end()) throw Rejected("gadget at vertex " + std::to_string(w) + " matches no edge");
  if (a > b) throw Rejected("gadget at vertex " + std::to_string(w) + " is attached in the wrong orientation");
  Vertex pos = 0;
  for (std::size_t t = 0; t < g.vertices.size(); ++t)
    if (g.vertices[t] == w) pos = static_cast<Vertex>(t + 1);
  return static_cast<Vertex>(aug_->n + (it->second - 1) * aug_->gadget_size + pos);
}

Vertex LocalOrderer::order(Vertex v) {
  begin_call();
  Vertex out = 0;
  try {
    out = (!aug_ || view_->is_original(v)) ? order_original(v) : order_gadget_vertex(v);
  } catch (...) {
    end_call();
    throw;
  }
  end_call();
  return out;
}

// Position 1 of every component carries a path-finder vertex, so the walk goes
// from position 1 of the start component to position 1 of the target one.
Vertex LocalOrderer::reversed(Vertex i, Vertex s) {
  begin_call();
  try {
    const int two_ell = 2 * p_->ell;
    const int comps = p_->components();
    const int total = aug_ ? aug_->graph.n() : p_->n;
    if (i < 1 || i > total) throw ValidationError("reversed: index " + std::to_string(i) + " out of range");

    // Target vertex of G_n (for gadget targets, the gadget's smaller endpoint).
    Vertex target = i;
    const ColoredEdge* gedge = nullptr;
    int gpos = 0;
    if (i > p_->n) {
      const std::size_t j = static_cast<std::size_t>(i - p_->n - 1) / aug_->gadget_size;
      gpos = (i - p_->n - 1) % aug_->gadget_size + 1;
      gedge = &aug_->colored.edges().at(j);
      target = gedge->u;
    }

    Vertex cur = s;
    if (aug_ && !view_->is_original(cur)) cur = gview_->gadget_of(cur).p_end;
    const Decoded* dc = &decode_component(cur);
    const int target_comp = (target - 1) / two_ell + 1;
    const int target_pos = (target - 1) % two_ell + 1;

    if (dc->component != target_comp) {
      if (!aug_) throw Rejected("reversed: target lies in another component of a disconnected graph");
      const Vertex from_idx = static_cast<Vertex>((dc->component - 1) * two_ell + 1);
      const Vertex to_idx = static_cast<Vertex>((target_comp - 1) * two_ell + 1);
      const Vertex ta = *aug_->gn_to_pf(from_idx, comps, two_ell);
      const Vertex tb = *aug_->gn_to_pf(to_idx, comps, two_ell);
      std::vector<Vertex> path = aug_->pf.find_path(ta, tb);
      cur = dc->by_pos[1];
      for (std::size_t step = 1; step < path.size(); ++step) {
        const Vertex want = aug_->pf_to_gn(path[step], comps, two_ell);
        const int wc = (want - 1) / two_ell + 1;
        const int wp = (want - 1) % two_ell + 1;
        const Vertex cur_idx = aug_->pf_to_gn(path[step - 1], comps, two_ell);
        Vertex next = 0;
        for (const auto& d : decoded_)
          if (d.component == wc) next = d.by_pos[wp];
        if (!next) {
          // Colors under which {cur, want} occurs among the path-finder edges.
          std::set<int> colors;
          const Vertex lo = std::min(cur_idx, want), hi = std::max(cur_idx, want);
          for (int c : aug_->pf_colors)
            if (aug_->edge_index.count({lo, hi, c})) colors.insert(c);
          for (const auto& e : view_->edges_at(cur)) {
            if (!colors.count(e.color)) continue;
            const Decoded& cand = decode_component(e.other);
            if (cand.component == wc && cand.by_pos[wp] == e.other) {
              next = e.other;
              break;
            }
          }
          if (!next) throw Rejected("reversed: path-finder step " + std::to_string(step) + " not found");
        }
        cur = next;
        ++last_path_;
      }
      dc = &decode_component(cur);
    }
    Vertex out = dc->by_pos[target_pos];
    if (gedge) {
      // Locate the gadget of edge j at its smaller endpoint.
      Vertex other = 0;
      if (gedge->v == gedge->u) other = out;
      else {
        const Vertex ov = gedge->v;
        const int oc = (ov - 1) / two_ell + 1;
        const int op = (ov - 1) % two_ell + 1;
        for (const auto& d : decoded_)
          if (d.component == oc) other = d.by_pos[op];
      }
      for (const auto& g : gview_->gadgets_at(out)) {
        if (g.color != gedge->color || g.p_end != out) continue;
        if (other && g.q_end != other) continue;
        if (!other) {
          // Endpoint in a component not decoded yet: confirm through its order.
          if (order_original(g.q_end) != gedge->v) continue;
        }
        out = g.vertices.at(gpos - 1);
        other = -1;
        break;
      }
      if (other != -1) throw Rejected("reversed: gadget for index " + std::to_string(i) + " not found");
    }
    end_call();
    return out;
  } catch (...) {
    end_call();
    throw;
  }
}

}  // namespace rso
