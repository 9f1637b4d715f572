#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "antler/fvc_finder.hpp"
#include "antler/structures.hpp"

namespace antler {

enum class OpKind { Op1, Op2, Op3, Op4, Op5 };

inline const char* op_name(OpKind k) {
  switch (k) {
    case OpKind::Op1: return "trim_multiplicity";
    case OpKind::Op2: return "contract_degree2";
    case OpKind::Op3: return "remove_antler";
    case OpKind::Op4: return "remove_flower_center";
    case OpKind::Op5: return "rewire_tree";
  }
  return "?";
}

inline OpKind op_from_name(const std::string& s) {
  if (s == "trim_multiplicity") return OpKind::Op1;
  if (s == "contract_degree2") return OpKind::Op2;
  if (s == "remove_antler") return OpKind::Op3;
  if (s == "remove_flower_center") return OpKind::Op4;
  if (s == "rewire_tree") return OpKind::Op5;
  throw std::invalid_argument("unknown operation name: " + s);
}

// One applied operation: `removed` is the set of vertices promoted into
// the solution (possibly empty), `details` carries enough to replay the
// rewrite mechanically.
struct ReductionStep {
  OpKind kind;
  VertexSet removed;
  nlohmann::json details;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  VertexSet accumulated;

  void record(const ReductionStep& step) {
    steps.push_back(step);
    accumulated.insert(step.removed.begin(), step.removed.end());
  }
};

inline nlohmann::json trace_to_json(const ReductionTrace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : trace.steps)
    arr.push_back({{"kind", op_name(s.kind)},
                   {"removed", std::vector<Vertex>(s.removed.begin(), s.removed.end())},
                   {"details", s.details}});
  return arr;
}

inline ReductionTrace trace_from_json(const nlohmann::json& arr) {
  ReductionTrace t;
  for (const auto& js : arr) {
    ReductionStep s;
    s.kind = op_from_name(js.at("kind").get<std::string>());
    for (Vertex v : js.at("removed").get<std::vector<Vertex>>()) s.removed.insert(v);
    s.details = js.at("details");
    t.record(s);
  }
  return t;
}

// More than two parallel edges between u and v: drop all but the two
// lowest-id ones.
inline std::pair<MultiGraph, ReductionStep> op1_trim_multiplicity(const MultiGraph& g, Vertex u,
                                                                  Vertex v) {
  auto ids = g.edges_of_pair(u, v);
  if (ids.size() < 3)
    throw std::invalid_argument("op1: fewer than three edges between the endpoints");
  EdgeIdSet drop(ids.begin() + 2, ids.end());
  ReductionStep step;
  step.kind = OpKind::Op1;
  step.details = {{"u", u}, {"v", v}, {"dropped_edges", std::vector<EdgeId>(drop.begin(), drop.end())}};
  return {g.remove_edges(drop), step};
}

// Degree-2 vertex without a self-loop: bypass it with a fresh edge joining
// its neighborhood (a self-loop when both edges lead to the same vertex).
inline std::pair<MultiGraph, ReductionStep> op2_contract_degree2(const MultiGraph& g, Vertex v) {
  if (!g.has_vertex(v)) throw std::invalid_argument("op2: unknown vertex");
  if (g.has_self_loop(v) || g.degree(v) != 2)
    throw std::invalid_argument("op2: vertex is not a loopless degree-2 vertex");
  VertexSet nb = g.neighbors(v);
  MultiGraph out = g.remove(v);
  Vertex a, b;
  if (nb.size() == 1) {
    a = b = *nb.begin();
  } else {
    auto it = nb.begin();
    a = *it++;
    b = *it;
  }
  EdgeId fresh = out.add_edge(a, b);
  ReductionStep step;
  step.kind = OpKind::Op2;
  step.details = {{"v", v}, {"new_edge", fresh}, {"endpoints", {a, b}}};
  return {out, step};
}

// Remove a verified antler (C, F) entirely; C joins the solution.
inline std::pair<MultiGraph, ReductionStep> op3_remove_antler(const MultiGraph& g, const Fvc& antler,
                                                              int verify_cap = 40) {
  if (!verify_antler(g, antler, verify_cap))
    throw std::invalid_argument("op3: the pair is not an antler");
  ReductionStep step;
  step.kind = OpKind::Op3;
  step.removed = antler.cut;
  step.details = {{"cut", std::vector<Vertex>(antler.cut.begin(), antler.cut.end())},
                  {"forest", std::vector<Vertex>(antler.forest.begin(), antler.forest.end())}};
  return {g.remove(antler.all()), step};
}

// A cut vertex v whose forest side carries a flower of order |C|+1 must be
// in every minimum feedback vertex set; remove it.
inline std::pair<MultiGraph, ReductionStep> op4_remove_flower_center(const MultiGraph& g,
                                                                     const Fvc& fvc, Vertex v) {
  if (!fvc.cut.count(v)) throw std::invalid_argument("op4: v is not in the cut");
  if (!verify_fvc(g, fvc)) throw std::invalid_argument("op4: not a feedback vertex cut");
  MultiGraph local = g.induced(set_union(fvc.forest, VertexSet{v}));
  FlowerResult flower = tree_flower(local, v);  // rejects self-loops at v
  if (static_cast<int>(flower.hit_set.size()) < fvc.width() + 1)
    throw std::invalid_argument("op4: no flower of order width+1 at v");
  ReductionStep step;
  step.kind = OpKind::Op4;
  step.removed = {v};
  nlohmann::json petals = nlohmann::json::array();
  for (int i = 0; i <= fvc.width(); ++i) petals.push_back(flower.petals[i]);
  step.details = {{"v", v}, {"flower_order", flower.hit_set.size()}, {"petals", petals}};
  return {g.remove(v), step};
}

namespace detail {

// Op5 precondition for one neighbor u of the tree: either u and v are
// already joined by a double edge, or more than `width` other trees of
// G[F] - X are adjacent to both u and v.
inline bool op5_neighbor_ok(const MultiGraph& g, const std::vector<VertexSet>& trees,
                            const VertexSet& tree, Vertex v, Vertex u, int width) {
  if (g.multiplicity(u, v) >= 2) return true;
  int common = 0;
  for (const VertexSet& t2 : trees) {
    if (t2 == tree) continue;
    if (g.edges_between(t2, u) > 0 && g.edges_between(t2, v) > 0)
      if (++common > width) return true;
  }
  return false;
}

}  // namespace detail

// Rewiring: drop the unique edge from v to w inside tree T of G[F] - X and
// ensure double edges from v to every other neighbor of T. Requires every
// such neighbor to be double-edged to v already or reachable from v via
// more than |C| other trees.
inline std::pair<MultiGraph, ReductionStep> op5_rewire_tree(const MultiGraph& g, const Fvc& fvc,
                                                            Vertex v, const VertexSet& x,
                                                            const VertexSet& tree, Vertex w) {
  if (!fvc.cut.count(v)) throw std::invalid_argument("op5: v is not in the cut");
  if (!verify_fvc(g, fvc)) throw std::invalid_argument("op5: not a feedback vertex cut");
  for (Vertex y : x)
    if (!fvc.forest.count(y)) throw std::invalid_argument("op5: X must be inside the forest");
  VertexSet fv = set_union(fvc.forest, VertexSet{v});
  if (!g.induced(set_minus(fv, x)).is_acyclic())
    throw std::invalid_argument("op5: G[F u {v}] - X is not acyclic");
  MultiGraph forest = g.induced(set_minus(fvc.forest, x));
  if (!forest.has_vertex(w) || forest.component_of(w) != tree)
    throw std::invalid_argument("op5: T is not the tree of G[F] - X containing w");
  if (g.multiplicity(v, w) != 1)
    throw std::invalid_argument("op5: v and w are not joined by a unique edge");
  std::vector<VertexSet> trees = forest.components();
  for (Vertex u : g.neighbors(tree)) {
    if (u == v) continue;
    if (!detail::op5_neighbor_ok(g, trees, tree, v, u, fvc.width()))
      throw std::invalid_argument("op5: neighbor condition fails at vertex " + std::to_string(u));
  }

  EdgeId vw = g.edges_of_pair(v, w).front();
  MultiGraph out = g.remove_edges({vw});
  nlohmann::json added = nlohmann::json::array();
  for (Vertex u : g.neighbors(tree)) {
    if (u == v) continue;
    std::vector<EdgeId> fresh;
    while (out.multiplicity(v, u) < 2) fresh.push_back(out.add_edge(v, u));
    if (!fresh.empty()) added.push_back({{"u", u}, {"edge_ids", fresh}});
  }
  ReductionStep step;
  step.kind = OpKind::Op5;
  step.details = {{"v", v},
                  {"w", w},
                  {"removed_edge", vw},
                  {"tree", std::vector<Vertex>(tree.begin(), tree.end())},
                  {"added", added}};
  return {out, step};
}

// The always-applicable cases: self-loop vertices and degree<=1 vertices
// leave as one-vertex antlers, loopless degree-2 vertices contract, and
// multiplicities above two get trimmed. Returns std::nullopt on graphs of
// minimum degree 3 without loops or triple edges.
inline std::optional<std::pair<MultiGraph, ReductionStep>> try_trivial_operation(
    const MultiGraph& g) {
  for (Vertex v : g.vertices())
    if (g.has_self_loop(v)) return op3_remove_antler(g, {{v}, {}});
  for (Vertex v : g.vertices())
    if (g.degree(v) <= 1) return op3_remove_antler(g, {{}, {v}});
  for (Vertex v : g.vertices())
    if (g.degree(v) == 2 && !g.has_self_loop(v)) return op2_contract_degree2(g, v);
  for (Vertex v : g.vertices())
    for (Vertex u : g.neighbors(v)) {
      if (u < v) continue;
      if (g.multiplicity(v, u) > 2) return op1_trim_multiplicity(g, v, u);
    }
  return std::nullopt;
}

// Given a reducible feedback vertex cut, finds and applies exactly one
// operation: the trivial cases first, then on a clean graph a cut vertex
// with many forest edges either centers a large flower (vertex removal)
// or, after marking trees that certify connectivity to the other cut and
// hit-set vertices, admits a tree rewiring.
inline std::pair<MultiGraph, ReductionStep> apply_operation(const MultiGraph& g, const Fvc& fvc) {
  if (!verify_fvc(g, fvc) || !is_reducible(fvc))
    throw std::invalid_argument("apply_operation: input cut is not reducible");
  if (auto t = try_trivial_operation(g)) return *t;

  const long long width = fvc.width();
  for (Vertex v : fvc.cut) {
    if (g.edges_between(fvc.forest, v) <= 2 * width * width + 3 * width - 1) continue;
    MultiGraph local = g.induced(set_union(fvc.forest, VertexSet{v}));
    FlowerResult flower = tree_flower(local, v);
    const VertexSet& x = flower.hit_set;
    if (static_cast<int>(x.size()) >= fvc.width() + 1) return op4_remove_flower_center(g, fvc, v);

    MultiGraph forest = g.induced(set_minus(fvc.forest, x));
    std::vector<VertexSet> trees = forest.components();
    std::set<VertexSet> marked;
    for (Vertex u : set_union(x, set_minus(fvc.cut, VertexSet{v}))) {
      if (g.multiplicity(u, v) >= 2) continue;
      int quota = fvc.width() + 1;
      for (const VertexSet& t : trees) {
        if (quota == 0) break;
        if (g.edges_between(t, u) > 0 && g.edges_between(t, v) > 0) {
          marked.insert(t);
          --quota;
        }
      }
    }
    std::vector<EdgeId> v_edges = g.incident_edges(v);
    std::sort(v_edges.begin(), v_edges.end());
    for (EdgeId id : v_edges) {
      auto [a, b] = g.endpoints(id);
      Vertex w = a == v ? b : a;
      if (!fvc.forest.count(w) || x.count(w)) continue;
      VertexSet tree = forest.component_of(w);
      if (marked.count(tree)) continue;
      if (g.multiplicity(v, w) != 1) continue;
      bool ok = true;
      for (Vertex u : g.neighbors(tree)) {
        if (u == v) continue;
        if (!detail::op5_neighbor_ok(g, trees, tree, v, u, fvc.width())) {
          ok = false;
          break;
        }
      }
      if (ok) return op5_rewire_tree(g, fvc, v, x, tree, w);
    }
  }
  throw std::logic_error("apply_operation: no operation found for a reducible cut");
}

// Re-applies a recorded trace mechanically, reproducing the final graph
// including edge ids.
inline MultiGraph replay_trace(const MultiGraph& g0, const ReductionTrace& trace) {
  MultiGraph g = g0;
  for (const auto& step : trace.steps) {
    switch (step.kind) {
      case OpKind::Op1: {
        EdgeIdSet drop;
        for (EdgeId id : step.details.at("dropped_edges").get<std::vector<EdgeId>>())
          drop.insert(id);
        g = g.remove_edges(drop);
        break;
      }
      case OpKind::Op2: {
        Vertex v = step.details.at("v").get<Vertex>();
        auto ends = step.details.at("endpoints").get<std::vector<Vertex>>();
        EdgeId id = step.details.at("new_edge").get<EdgeId>();
        g = g.remove(v);
        g.add_edge_with_id(id, ends[0], ends[1]);
        break;
      }
      case OpKind::Op3: {
        VertexSet all;
        for (Vertex v : step.details.at("cut").get<std::vector<Vertex>>()) all.insert(v);
        for (Vertex v : step.details.at("forest").get<std::vector<Vertex>>()) all.insert(v);
        g = g.remove(all);
        break;
      }
      case OpKind::Op4:
        g = g.remove(step.details.at("v").get<Vertex>());
        break;
      case OpKind::Op5: {
        g = g.remove_edges({step.details.at("removed_edge").get<EdgeId>()});
        Vertex v = step.details.at("v").get<Vertex>();
        for (const auto& add : step.details.at("added"))
          for (EdgeId id : add.at("edge_ids").get<std::vector<EdgeId>>())
            g.add_edge_with_id(id, v, add.at("u").get<Vertex>());
        break;
      }
    }
  }
  return g;
}

}  // namespace antler
