#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

#include "antler/multigraph.hpp"

namespace antler {

struct FvsResult {
  int size = 0;
  VertexSet witness;
};

// Size cap for the subset-enumeration oracle, overridable through the
// ANTLER_ORACLE_CAP environment variable.
inline int oracle_cap() {
  static const int cap = [] {
    if (const char* s = std::getenv("ANTLER_ORACLE_CAP")) {
      int v = std::atoi(s);
      if (v > 0) return v;
    }
    return 16;
  }();
  return cap;
}

namespace detail {

// Index-compressed copy used by the enumeration oracle.
struct FlatGraph {
  int n = 0;
  std::vector<Vertex> ids;
  std::vector<std::pair<int, int>> edges;

  explicit FlatGraph(const MultiGraph& g) {
    ids.assign(g.vertices().begin(), g.vertices().end());
    n = static_cast<int>(ids.size());
    std::map<Vertex, int> index;
    for (int i = 0; i < n; ++i) index[ids[i]] = i;
    for (EdgeId id : g.edge_ids()) {
      auto [u, v] = g.endpoints(id);
      edges.push_back({index[u], index[v]});
    }
  }

  bool acyclic_without(unsigned removed) const {
    static thread_local std::vector<int> parent;
    parent.resize(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (auto [a, b] : edges) {
      if ((removed >> a & 1) || (removed >> b & 1)) continue;
      if (a == b) return false;
      int ra = find(a), rb = find(b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }
};

// Any simple cycle, as a vertex list; empty if acyclic. Scans BFS trees
// from every vertex and keeps the shortest closed walk found, then trims
// it to a simple cycle.
inline std::vector<Vertex> find_short_cycle(const MultiGraph& g) {
  for (Vertex v : g.vertices())
    if (g.has_self_loop(v)) return {v};
  // parallel pair: a 2-cycle
  for (Vertex v : g.vertices())
    for (Vertex u : g.neighbors(v))
      if (u > v && g.multiplicity(v, u) >= 2) return {v, u};

  std::vector<Vertex> best;
  for (Vertex s : g.vertices()) {
    std::map<Vertex, Vertex> pred;
    std::map<Vertex, int> dist;
    std::vector<Vertex> queue{s};
    pred[s] = s;
    dist[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Vertex v = queue[i];
      for (EdgeId id : g.incident_edges(v)) {
        auto [a, b] = g.endpoints(id);
        Vertex u = a == v ? b : a;
        if (!pred.count(u)) {
          pred[u] = v;
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        } else if (u != pred[v] && v != pred[u]) {
          // closed walk through s: v..s plus u..s
          std::vector<Vertex> pv, pu;
          for (Vertex x = v;; x = pred[x]) {
            pv.push_back(x);
            if (x == s) break;
          }
          for (Vertex x = u;; x = pred[x]) {
            pu.push_back(x);
            if (x == s) break;
          }
          std::vector<Vertex> walk(pv.rbegin(), pv.rend());
          walk.insert(walk.end(), pu.begin(), pu.end());
          // trim to a simple cycle: cut between the two visits of the
          // first repeated vertex
          std::map<Vertex, int> seen;
          std::vector<Vertex> cyc;
          for (std::size_t j = 0; j + 1 < walk.size(); ++j) {
            Vertex x = walk[j];
            if (seen.count(x)) {
              cyc.assign(walk.begin() + seen[x], walk.begin() + static_cast<long>(j));
              break;
            }
            seen[x] = static_cast<int>(j);
          }
          if (cyc.empty()) cyc.assign(walk.begin(), walk.end() - 1);
          if (cyc.size() >= 3 && (best.empty() || cyc.size() < best.size())) best = cyc;
        }
      }
      if (!best.empty() && best.size() <= 3) return best;
    }
  }
  return best;
}

// Removes choice-free structure: isolated and pendant vertices, degree-2
// contractions, multiplicity capping, and forced self-loop vertices (which
// are appended to `forced`). Keeps ids of surviving vertices.
inline MultiGraph simplify_for_fvs(MultiGraph g, VertexSet& forced) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : g.vertices()) {
      if (g.has_self_loop(v)) {
        forced.insert(v);
        g = g.remove(v);
        changed = true;
        break;
      }
      int d = g.degree(v);
      if (d <= 1) {
        g = g.remove(v);
        changed = true;
        break;
      }
      if (d == 2) {
        VertexSet nb = g.neighbors(v);
        MultiGraph h = g.remove(v);
        if (nb.size() == 1) {
          h.add_edge(*nb.begin(), *nb.begin());
        } else {
          auto it = nb.begin();
          Vertex a = *it++;
          h.add_edge(a, *it);
        }
        g = std::move(h);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (Vertex v : g.vertices()) {
      for (Vertex u : g.neighbors(v)) {
        if (u < v) continue;
        auto es = g.edges_of_pair(v, u);
        if (es.size() > 2) {
          g = g.remove_edges(EdgeIdSet(es.begin() + 2, es.end()));
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return g;
}

inline void fvs_branch(const MultiGraph& g0, VertexSet taken, int& best, VertexSet& best_witness) {
  VertexSet forced;
  MultiGraph g = simplify_for_fvs(g0, forced);
  taken.insert(forced.begin(), forced.end());
  if (static_cast<int>(taken.size()) >= best) return;
  if (g.is_acyclic()) {
    best = static_cast<int>(taken.size());
    best_witness = taken;
    return;
  }
  std::vector<Vertex> cycle = find_short_cycle(g);
  for (Vertex v : cycle) {
    VertexSet t = taken;
    t.insert(v);
    fvs_branch(g.remove(v), std::move(t), best, best_witness);
  }
}

inline std::optional<VertexSet> fvs_depth_bounded(const MultiGraph& g0, int depth) {
  VertexSet forced;
  MultiGraph g = simplify_for_fvs(g0, forced);
  if (static_cast<int>(forced.size()) > depth) return std::nullopt;
  if (g.is_acyclic()) return forced;
  if (static_cast<int>(forced.size()) == depth) return std::nullopt;
  std::vector<Vertex> cycle = find_short_cycle(g);
  for (Vertex v : cycle) {
    auto rest = fvs_depth_bounded(g.remove(v), depth - static_cast<int>(forced.size()) - 1);
    if (rest) {
      rest->insert(v);
      rest->insert(forced.begin(), forced.end());
      return rest;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Exact minimum feedback vertex set by subset enumeration in increasing
// size; the witness is the first hit in (size, lexicographic) order.
inline FvsResult fvs_bruteforce(const MultiGraph& g, int cap = oracle_cap()) {
  if (g.n() > cap)
    throw refusal_error("fvs_bruteforce: graph has " + std::to_string(g.n()) +
                        " vertices, cap is " + std::to_string(cap));
  detail::FlatGraph fg(g);
  const int n = fg.n;
  for (int k = 0; k <= n; ++k) {
    // combinations of {0..n-1} of size k in lexicographic order
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      unsigned mask = 0;
      for (int i : comb) mask |= 1u << i;
      if (fg.acyclic_without(mask)) {
        FvsResult r;
        r.size = k;
        for (int i : comb) r.witness.insert(fg.ids[i]);
        return r;
      }
      int i = k - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return {g.n(), g.vertices()};  // unreachable: removing everything is acyclic
}

// Exact minimum feedback vertex set by branching on short cycles with
// standard loop/pendant/degree-2/multiplicity simplification.
inline FvsResult fvs_exact(const MultiGraph& g) {
  int best = g.n() + 1;
  VertexSet witness;
  detail::fvs_branch(g, {}, best, witness);
  if (best > g.n()) return {g.n(), g.vertices()};
  return {best, witness};
}

// A feedback vertex set of size at most z if one exists, reporting the
// exact minimum; std::nullopt otherwise. Depth-bounded branching.
inline std::optional<FvsResult> fvs_bounded(const MultiGraph& g, int z) {
  if (z < 0) throw std::invalid_argument("fvs_bounded: z must be >= 0");
  for (int d = 0; d <= z; ++d) {
    auto w = detail::fvs_depth_bounded(g, d);
    if (w) return FvsResult{d, *w};
  }
  return std::nullopt;
}

// A set of cycles pairwise intersecting exactly in one center vertex,
// together with a hitting set of equal size.
struct FlowerResult {
  VertexSet hit_set;
  std::vector<std::vector<Vertex>> petals;
};

// For a vertex v without a self-loop such that G - v is acyclic: a set
// X avoiding v with G - X acyclic and a v-flower of order |X|. Works by
// repeatedly locating, inside a tree of G - v, the deepest subtree that
// closes a cycle with v, harvesting that cycle as a petal, and deleting
// the subtree.
inline FlowerResult tree_flower(const MultiGraph& g, Vertex v) {
  if (!g.has_vertex(v)) throw std::invalid_argument("tree_flower: unknown vertex");
  if (g.has_self_loop(v)) throw std::invalid_argument("tree_flower: center has a self-loop");
  if (!g.remove(v).is_acyclic()) throw std::invalid_argument("tree_flower: G - v is not acyclic");

  FlowerResult result;
  MultiGraph w = g;
  while (!w.is_acyclic()) {
    MultiGraph forest = w.remove(v);
    // first tree receiving at least two edge-endpoints from v
    VertexSet tree;
    for (const VertexSet& comp : forest.components()) {
      int endpoints_from_v = 0;
      for (EdgeId id : w.incident_edges(v)) {
        auto [a, b] = w.endpoints(id);
        Vertex other = a == v ? b : a;
        if (comp.count(other)) ++endpoints_from_v;
      }
      if (endpoints_from_v >= 2) {
        tree = comp;
        break;
      }
    }
    // cannot be empty: w has a cycle and w - v is acyclic

    MultiGraph t = forest.induced(tree);
    Vertex root = *tree.begin();
    std::map<Vertex, Vertex> parent;
    std::map<Vertex, int> depth;
    std::vector<Vertex> order{root};
    parent[root] = root;
    depth[root] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      Vertex x = order[i];
      for (Vertex u : t.neighbors(x))
        if (!parent.count(u)) {
          parent[u] = x;
          depth[u] = depth[x] + 1;
          order.push_back(u);
        }
    }
    auto in_subtree = [&](Vertex node, Vertex top) {
      for (Vertex x = node;; x = parent[x]) {
        if (x == top) return true;
        if (parent[x] == x) return false;
      }
    };
    // endpoints of v-edges into the tree, with multiplicity
    std::vector<Vertex> v_targets;
    for (EdgeId id : w.incident_edges(v)) {
      auto [a, b] = w.endpoints(id);
      Vertex other = a == v ? b : a;
      if (tree.count(other)) v_targets.push_back(other);
    }
    std::sort(v_targets.begin(), v_targets.end());

    Vertex deepest = root;
    int best_depth = -1;
    for (Vertex x : tree) {
      int cnt = 0;
      for (Vertex y : v_targets)
        if (in_subtree(y, x)) ++cnt;
      if (cnt >= 2 && depth[x] > best_depth) {
        deepest = x;
        best_depth = depth[x];
      }
    }
    VertexSet sub;
    for (Vertex y : tree)
      if (in_subtree(y, deepest)) sub.insert(y);

    std::vector<Vertex> hits;
    for (Vertex y : v_targets)
      if (sub.count(y)) {
        hits.push_back(y);
        if (hits.size() == 2) break;
      }
    std::vector<Vertex> petal{v};
    if (hits[0] == hits[1]) {
      petal.push_back(hits[0]);  // parallel pair with v
    } else {
      auto path = t.tree_path(hits[0], hits[1]);
      petal.insert(petal.end(), path.begin(), path.end());
    }
    result.hit_set.insert(deepest);
    result.petals.push_back(std::move(petal));
    w = w.remove(sub);
  }
  return result;
}

}  // namespace antler
