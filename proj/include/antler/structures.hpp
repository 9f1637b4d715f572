#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "antler/exact.hpp"
#include "antler/multigraph.hpp"

namespace antler {

// A feedback vertex cut candidate: disjoint cut and forest vertex sets.
struct Fvc {
  VertexSet cut;
  VertexSet forest;

  int width() const { return static_cast<int>(cut.size()); }
  bool empty() const { return cut.empty() && forest.empty(); }
  VertexSet all() const { return set_union(cut, forest); }

  bool operator==(const Fvc& o) const { return cut == o.cut && forest == o.forest; }
};

// Subgraph witnessing that a cut is an optimal feedback vertex set,
// component-wise of bounded feedback vertex number.
struct Certificate {
  VertexSet vertices;
  EdgeIdSet edges;
  int order = 0;
};

struct AntlerWitness {
  Fvc fvc;
  Certificate cert;
};

// True iff (C, F) is a feedback vertex cut in G: disjoint subsets of V(G),
// G[F] a forest, and every tree of G[F] sends at most one edge outside
// C and F.
inline bool verify_fvc(const MultiGraph& g, const Fvc& f) {
  for (Vertex v : f.cut)
    if (!g.has_vertex(v)) throw std::invalid_argument("verify_fvc: cut vertex not in graph");
  for (Vertex v : f.forest)
    if (!g.has_vertex(v)) throw std::invalid_argument("verify_fvc: forest vertex not in graph");
  if (!set_intersect(f.cut, f.forest).empty()) return false;
  MultiGraph forest = g.induced(f.forest);
  if (!forest.is_acyclic()) return false;
  VertexSet outside = set_minus(g.vertices(), f.all());
  for (const VertexSet& tree : forest.components())
    if (g.edges_between(tree, outside) > 1) return false;
  return true;
}

// True iff (C, F) is an antler: a feedback vertex cut whose cut is a
// minimum feedback vertex set of G[C u F].
inline bool verify_antler(const MultiGraph& g, const Fvc& f, int cap = 40) {
  if (static_cast<int>(f.all().size()) > cap)
    throw refusal_error("verify_antler: C u F larger than cap " + std::to_string(cap));
  if (!verify_fvc(g, f)) return false;
  return fvs_exact(g.induced(f.all())).size == f.width();
}

// True iff `cert` is a C-certificate of order z in G: a subgraph whose
// components each have feedback vertex number equal to their share of C,
// and at most z.
inline bool verify_certificate(const MultiGraph& g, const VertexSet& c, const Certificate& cert,
                               int z, int component_cap = 40) {
  for (Vertex v : cert.vertices)
    if (!g.has_vertex(v)) return false;
  for (EdgeId id : cert.edges) {
    if (!g.has_edge(id)) return false;
    auto [a, b] = g.endpoints(id);
    if (!cert.vertices.count(a) || !cert.vertices.count(b)) return false;
  }
  for (Vertex v : c)
    if (!cert.vertices.count(v)) return false;

  MultiGraph h;
  for (Vertex v : cert.vertices) h.add_vertex(v);
  for (EdgeId id : cert.edges) {
    auto [a, b] = g.endpoints(id);
    h.add_edge_with_id(id, a, b);
  }
  for (const VertexSet& comp : h.components()) {
    if (static_cast<int>(comp.size()) > component_cap)
      throw refusal_error("verify_certificate: component larger than cap");
    VertexSet share = set_intersect(c, comp);
    if (static_cast<int>(share.size()) > z) return false;
    MultiGraph sub = h.induced(comp);
    if (!sub.remove(share).is_acyclic()) return false;
    if (fvs_exact(sub).size != static_cast<int>(share.size())) return false;
  }
  return true;
}

namespace detail {

struct CycleRec {
  VertexSet inner;  // vertices other than the center
  EdgeIdSet edges;
};

// Simple cycles through `center`, loops at the center excluded. Cycles
// with identical inner vertex sets are reported once.
inline std::vector<CycleRec> cycles_through(const MultiGraph& g, Vertex center,
                                            std::size_t cap = 20000) {
  std::vector<CycleRec> out;
  std::set<VertexSet> seen;
  std::vector<Vertex> path;      // internal vertices
  std::vector<EdgeId> path_edges;
  VertexSet on_path;

  auto sorted_incident = [&](Vertex v) {
    std::vector<EdgeId> es = g.incident_edges(v);
    std::sort(es.begin(), es.end());
    return es;
  };

  std::function<void(Vertex)> rec = [&](Vertex cur) {
    for (EdgeId id : sorted_incident(cur)) {
      if (g.is_loop(id)) continue;
      if (!path_edges.empty() && std::find(path_edges.begin(), path_edges.end(), id) != path_edges.end())
        continue;
      auto [a, b] = g.endpoints(id);
      Vertex nxt = a == cur ? b : a;
      if (nxt == center) {
        if (path.empty()) continue;  // need a second edge; handled when path nonempty
        VertexSet inner(path.begin(), path.end());
        if (!seen.count(inner)) {
          seen.insert(inner);
          EdgeIdSet es(path_edges.begin(), path_edges.end());
          es.insert(id);
          out.push_back({inner, es});
          if (out.size() > cap) throw refusal_error("cycles_through: too many cycles");
        }
        continue;
      }
      if (on_path.count(nxt)) continue;
      path.push_back(nxt);
      path_edges.push_back(id);
      on_path.insert(nxt);
      rec(nxt);
      path.pop_back();
      path_edges.pop_back();
      on_path.erase(nxt);
    }
  };
  // paths start at the center
  path_edges.clear();
  std::function<void()> start = [&] {
    for (EdgeId id : sorted_incident(center)) {
      if (g.is_loop(id)) continue;
      auto [a, b] = g.endpoints(id);
      Vertex nxt = a == center ? b : a;
      path = {nxt};
      path_edges = {id};
      on_path = {nxt};
      rec(nxt);
    }
    path.clear();
    path_edges.clear();
    on_path.clear();
  };
  start();
  return out;
}

inline bool pack_disjoint(const std::vector<CycleRec>& cycles, int need) {
  if (need <= 0) return true;
  std::vector<int> order(cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return cycles[i].inner.size() < cycles[j].inner.size();
  });
  std::function<bool(std::size_t, VertexSet&, int)> rec = [&](std::size_t i, VertexSet& used,
                                                              int left) -> bool {
    if (left == 0) return true;
    if (i >= order.size() || order.size() - i < static_cast<std::size_t>(left)) return false;
    const CycleRec& c = cycles[order[i]];
    bool disjoint = true;
    for (Vertex v : c.inner)
      if (used.count(v)) {
        disjoint = false;
        break;
      }
    if (disjoint) {
      for (Vertex v : c.inner) used.insert(v);
      if (rec(i + 1, used, left - 1)) return true;
      for (Vertex v : c.inner) used.erase(v);
    }
    return rec(i + 1, used, left);
  };
  VertexSet used;
  return rec(0, used, need);
}

}  // namespace detail

// True iff g contains `order` cycles through v that pairwise share only v.
// Uses the near-forest construction when G - v is acyclic, otherwise packs
// enumerated cycles by bounded search.
inline bool has_flower_of_order(const MultiGraph& g, Vertex v, int order) {
  if (order <= 0) return true;
  int loops = g.multiplicity(v, v);
  if (loops >= order) return true;
  int need = order - loops;
  MultiGraph g2 = g;
  if (loops > 0) {
    auto loops_at_v = g.edges_of_pair(v, v);
    EdgeIdSet loop_ids(loops_at_v.begin(), loops_at_v.end());
    g2 = g.remove_edges(loop_ids);
  }
  if (g2.remove(v).is_acyclic())
    return static_cast<int>(tree_flower(g2, v).hit_set.size()) >= need;
  return detail::pack_disjoint(detail::cycles_through(g2, v), need);
}

namespace detail {

// Certificate search restricted to order 1: one cycle per cut vertex,
// pairwise vertex-disjoint, avoiding the other cut vertices.
inline std::optional<Certificate> certificate_order1(const MultiGraph& g, const VertexSet& c,
                                                     const VertexSet& f) {
  std::vector<Vertex> heads(c.begin(), c.end());
  std::vector<std::vector<CycleRec>> cands;
  for (Vertex h : heads) {
    MultiGraph local = g.induced(set_union(f, VertexSet{h}));
    std::vector<CycleRec> cycles = cycles_through(local, h);
    if (local.has_self_loop(h)) {
      CycleRec loop;
      loop.edges.insert(local.edges_of_pair(h, h).front());
      cycles.push_back(loop);
    }
    if (cycles.empty()) return std::nullopt;
    cands.push_back(std::move(cycles));
  }
  std::vector<const CycleRec*> chosen(heads.size(), nullptr);
  VertexSet used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == heads.size()) return true;
    for (const CycleRec& cand : cands[i]) {
      bool ok = true;
      for (Vertex v : cand.inner)
        if (used.count(v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (Vertex v : cand.inner) used.insert(v);
      chosen[i] = &cand;
      if (rec(i + 1)) return true;
      for (Vertex v : cand.inner) used.erase(v);
      chosen[i] = nullptr;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  Certificate cert;
  cert.order = 1;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    cert.vertices.insert(heads[i]);
    cert.vertices.insert(chosen[i]->inner.begin(), chosen[i]->inner.end());
    cert.edges.insert(chosen[i]->edges.begin(), chosen[i]->edges.end());
  }
  return cert;
}

}  // namespace detail

// Searches G[C u F] for a C-certificate of order z; exhaustive, intended
// for small inputs. Returns std::nullopt when none exists.
inline std::optional<Certificate> find_certificate(const MultiGraph& g, const VertexSet& c,
                                                   const VertexSet& f, int z) {
  MultiGraph host = g.induced(set_union(c, f));
  if (fvs_exact(host).size != static_cast<int>(c.size())) return std::nullopt;
  if (z == 0 && !c.empty()) return std::nullopt;

  auto chunk_ok = [&](const MultiGraph& h) {
    for (const VertexSet& comp : h.components())
      if (static_cast<int>(set_intersect(c, comp).size()) > z) return false;
    return true;
  };
  if (chunk_ok(host)) {
    Certificate cert;
    cert.vertices = host.vertices();
    cert.edges = host.edge_ids();
    cert.order = z;
    return cert;
  }
  if (z == 1) return detail::certificate_order1(g, c, f);

  // Branch on deleting edges of an overloaded component while the cut
  // stays a minimum feedback vertex set.
  std::set<EdgeIdSet> visited;
  std::function<std::optional<Certificate>(const MultiGraph&)> rec =
      [&](const MultiGraph& h) -> std::optional<Certificate> {
    if (visited.size() > 100000) throw refusal_error("find_certificate: search too large");
    if (chunk_ok(h)) {
      Certificate cert;
      cert.vertices = h.vertices();
      cert.edges = h.edge_ids();
      cert.order = z;
      return cert;
    }
    for (const VertexSet& comp : h.components()) {
      if (static_cast<int>(set_intersect(c, comp).size()) <= z) continue;
      MultiGraph sub = h.induced(comp);
      for (EdgeId id : sub.edge_ids()) {
        MultiGraph next = h.remove_edges({id});
        EdgeIdSet key = next.edge_ids();
        if (visited.count(key)) continue;
        visited.insert(key);
        if (fvs_exact(next).size != static_cast<int>(c.size())) continue;
        auto r = rec(next);
        if (r) return r;
      }
      break;  // fixing the first overloaded component is enough to branch on
    }
    return std::nullopt;
  };
  return rec(host);
}

// Deletes trees of the certificate forest that are redundant for
// witnessing optimality of the cut: a tree goes when every cut vertex
// closing a cycle with it keeps an order-z flower without it, and every
// pair of its neighbors stays connected through z+1 other trees. The
// result keeps the same cut and order with a bounded number of trees.
inline Certificate prune_certificate(const MultiGraph& g, const VertexSet& c, const Certificate& cert,
                                     int z) {
  MultiGraph h;
  for (Vertex v : cert.vertices) h.add_vertex(v);
  for (EdgeId id : cert.edges) {
    auto [a, b] = g.endpoints(id);
    h.add_edge_with_id(id, a, b);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    MultiGraph forest = h.remove(c);
    for (const VertexSet& tree : forest.components()) {
      MultiGraph without = h.remove(tree);
      bool cond1 = true;
      for (Vertex v : c) {
        if (h.induced(set_union(tree, VertexSet{v})).is_acyclic()) continue;
        if (!has_flower_of_order(without, v, z)) {
          cond1 = false;
          break;
        }
      }
      if (!cond1) continue;
      VertexSet nbrs = h.neighbors(tree);
      bool cond2 = true;
      for (auto itu = nbrs.begin(); itu != nbrs.end() && cond2; ++itu)
        for (auto itv = std::next(itu); itv != nbrs.end() && cond2; ++itv) {
          int other = 0;
          for (const VertexSet& t2 : forest.components()) {
            if (t2 == tree) continue;
            VertexSet nb2 = h.neighbors(t2);
            if (nb2.count(*itu) && nb2.count(*itv)) ++other;
          }
          if (other < z + 1) cond2 = false;
        }
      if (!cond2) continue;
      h = without;
      changed = true;
      break;
    }
  }
  Certificate out;
  out.vertices = h.vertices();
  out.edges = h.edge_ids();
  out.order = z;
  return out;
}

// Upper bound from the pruning argument on the number of trees the
// certificate forest needs: floor((|C|/2) * (z^2 + 2z - 1)).
inline long long certificate_tree_bound(int cut_size, int z) {
  return static_cast<long long>(cut_size) * (static_cast<long long>(z) * z + 2LL * z - 1) / 2;
}

// Exhaustive oracle: all disjoint pairs (C, F) with |C| <= k_max that are
// antlers admitting an order-z certificate. Intended for tiny graphs.
inline std::vector<AntlerWitness> enumerate_antlers(const MultiGraph& g, int k_max, int z,
                                                    int cap = 9) {
  if (g.n() > cap)
    throw refusal_error("enumerate_antlers: graph has " + std::to_string(g.n()) +
                        " vertices, cap is " + std::to_string(cap));
  std::vector<Vertex> ids(g.vertices().begin(), g.vertices().end());
  const int n = static_cast<int>(ids.size());
  std::vector<AntlerWitness> out;
  std::vector<int> assign(n, 0);  // 0 = outside, 1 = cut, 2 = forest
  while (true) {
    Fvc f;
    for (int i = 0; i < n; ++i) {
      if (assign[i] == 1) f.cut.insert(ids[i]);
      if (assign[i] == 2) f.forest.insert(ids[i]);
    }
    if (f.width() <= k_max && verify_fvc(g, f) &&
        fvs_exact(g.induced(f.all())).size == f.width()) {
      auto cert = find_certificate(g, f.cut, f.forest, z);
      if (cert) out.push_back({f, *cert});
    }
    int i = 0;
    while (i < n && assign[i] == 2) assign[i++] = 0;
    if (i == n) break;
    ++assign[i];
  }
  return out;
}

}  // namespace antler
