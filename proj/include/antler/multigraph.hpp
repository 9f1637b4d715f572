#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antler/errors.hpp"

namespace antler {

using Vertex = int;
using EdgeId = int;
using VertexSet = std::set<Vertex>;
using EdgeIdSet = std::set<EdgeId>;

inline bool contains(const VertexSet& s, Vertex v) { return s.count(v) != 0; }

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  for (Vertex v : a)
    if (!b.count(v)) r.insert(v);
  return r;
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  for (Vertex v : a)
    if (b.count(v)) r.insert(v);
  return r;
}

// Undirected multigraph with parallel edges and self-loops, stored as
// incidence records (edge id -> unordered endpoint pair). Vertex and edge
// ids are stable: queries never renumber, and derived graphs (induced
// subgraphs, removals) keep the ids of what they retain, so reduction
// traces can refer to original vertices unambiguously. Values are treated
// as immutable snapshots once built; the mutating members exist for
// builders (parsers, generators, operations) which construct a new value.
class MultiGraph {
public:
  MultiGraph() = default;

  void add_vertex(Vertex v) {
    if (verts_.count(v)) throw std::invalid_argument("duplicate vertex id " + std::to_string(v));
    verts_.insert(v);
  }

  void ensure_vertex(Vertex v) { verts_.insert(v); }

  EdgeId add_edge(Vertex u, Vertex v) {
    EdgeId id = next_edge_id_;
    add_edge_with_id(id, u, v);
    return id;
  }

  void add_edge_with_id(EdgeId id, Vertex u, Vertex v) {
    if (!verts_.count(u) || !verts_.count(v))
      throw std::invalid_argument("edge endpoint not in vertex set");
    if (edges_.count(id)) throw std::invalid_argument("duplicate edge id " + std::to_string(id));
    if (u > v) std::swap(u, v);
    edges_[id] = {u, v};
    inc_[u].push_back(id);
    if (v != u) inc_[v].push_back(id);
    next_edge_id_ = std::max(next_edge_id_, id + 1);
  }

  int n() const { return static_cast<int>(verts_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return verts_.empty(); }

  const VertexSet& vertices() const { return verts_; }

  EdgeIdSet edge_ids() const {
    EdgeIdSet r;
    for (const auto& [id, e] : edges_) r.insert(id);
    return r;
  }

  bool has_vertex(Vertex v) const { return verts_.count(v) != 0; }
  bool has_edge(EdgeId id) const { return edges_.count(id) != 0; }

  std::pair<Vertex, Vertex> endpoints(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw std::invalid_argument("unknown edge id " + std::to_string(id));
    return it->second;
  }

  bool is_loop(EdgeId id) const {
    auto [u, v] = endpoints(id);
    return u == v;
  }

  // Number of edge-endpoints at v; a self-loop contributes 2.
  int degree(Vertex v) const {
    check_vertex(v);
    int d = 0;
    auto it = inc_.find(v);
    if (it == inc_.end()) return 0;
    for (EdgeId id : it->second) d += is_loop(id) ? 2 : 1;
    return d;
  }

  const std::vector<EdgeId>& incident_edges(Vertex v) const {
    check_vertex(v);
    static const std::vector<EdgeId> none;
    auto it = inc_.find(v);
    return it == inc_.end() ? none : it->second;
  }

  // Open neighborhood; contains v itself exactly when v has a self-loop.
  VertexSet neighbors(Vertex v) const {
    check_vertex(v);
    VertexSet r;
    auto it = inc_.find(v);
    if (it == inc_.end()) return r;
    for (EdgeId id : it->second) {
      auto [a, b] = edges_.at(id);
      r.insert(a == v ? b : a);
    }
    return r;
  }

  VertexSet neighbors(const VertexSet& xs) const {
    VertexSet r;
    for (Vertex v : xs)
      for (Vertex u : neighbors(v))
        if (!xs.count(u)) r.insert(u);
    return r;
  }

  int multiplicity(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    int c = 0;
    auto it = inc_.find(u);
    if (it == inc_.end()) return 0;
    for (EdgeId id : it->second)
      if (edges_.at(id) == std::make_pair(u, v)) ++c;
    return c;
  }

  bool has_self_loop(Vertex v) const { return multiplicity(v, v) > 0; }

  std::vector<EdgeId> edges_of_pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    std::vector<EdgeId> r;
    auto it = inc_.find(u);
    if (it == inc_.end()) return r;
    for (EdgeId id : it->second)
      if (edges_.at(id) == std::make_pair(u, v)) r.push_back(id);
    std::sort(r.begin(), r.end());
    return r;
  }

  // Count of edges with one endpoint in X and the other in Y; X and Y must
  // be disjoint. Multiplicity is respected; loops never qualify.
  int edges_between(const VertexSet& xs, const VertexSet& ys) const {
    for (Vertex v : xs)
      if (ys.count(v)) throw std::invalid_argument("edges_between: sets overlap");
    int c = 0;
    for (const auto& [id, e] : edges_) {
      auto [u, v] = e;
      if ((xs.count(u) && ys.count(v)) || (xs.count(v) && ys.count(u))) ++c;
    }
    return c;
  }

  int edges_between(const VertexSet& xs, Vertex y) const { return edges_between(xs, VertexSet{y}); }

  // True iff the graph has no cycle. A self-loop is a cycle, and so is a
  // pair of parallel edges.
  bool is_acyclic() const {
    std::map<Vertex, Vertex> parent;
    for (Vertex v : verts_) parent[v] = v;
    auto find = [&](Vertex v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (const auto& [id, e] : edges_) {
      auto [u, v] = e;
      if (u == v) return false;
      Vertex ru = find(u), rv = find(v);
      if (ru == rv) return false;
      parent[ru] = rv;
    }
    return true;
  }

  // Subgraph induced by X: vertex set X and exactly the edges with both
  // endpoints in X, ids preserved.
  MultiGraph induced(const VertexSet& xs) const {
    for (Vertex v : xs) check_vertex(v);
    MultiGraph g;
    g.verts_ = xs;
    g.next_edge_id_ = next_edge_id_;
    for (const auto& [id, e] : edges_)
      if (xs.count(e.first) && xs.count(e.second)) {
        g.edges_[id] = e;
        g.inc_[e.first].push_back(id);
        if (e.second != e.first) g.inc_[e.second].push_back(id);
      }
    return g;
  }

  // G - Y for a mixed set of vertex and edge ids: vertices are deleted with
  // all incident edges, then the listed edges are deleted.
  MultiGraph remove(const VertexSet& ys, const EdgeIdSet& edge_ys = {}) const {
    for (Vertex v : ys) check_vertex(v);
    for (EdgeId id : edge_ys)
      if (!edges_.count(id)) throw std::invalid_argument("unknown edge id " + std::to_string(id));
    MultiGraph g = induced(set_minus(verts_, ys));
    for (EdgeId id : edge_ys) {
      if (g.edges_.count(id)) g.erase_edge(id);
    }
    return g;
  }

  MultiGraph remove(Vertex v) const { return remove(VertexSet{v}); }

  MultiGraph remove_edges(const EdgeIdSet& edge_ys) const { return remove({}, edge_ys); }

  std::vector<VertexSet> components() const {
    std::vector<VertexSet> r;
    VertexSet seen;
    for (Vertex s : verts_) {
      if (seen.count(s)) continue;
      VertexSet comp;
      std::vector<Vertex> stack{s};
      seen.insert(s);
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        comp.insert(v);
        for (Vertex u : neighbors(v))
          if (!seen.count(u)) {
            seen.insert(u);
            stack.push_back(u);
          }
      }
      r.push_back(std::move(comp));
    }
    return r;
  }

  VertexSet component_of(Vertex s) const {
    check_vertex(s);
    VertexSet comp{s};
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : neighbors(v))
        if (!comp.count(u)) {
          comp.insert(u);
          stack.push_back(u);
        }
    }
    return comp;
  }

  bool is_connected() const {
    if (verts_.empty()) return true;
    return component_of(*verts_.begin()).size() == verts_.size();
  }

  // A tree: connected and acyclic (so loop- and parallel-free).
  bool is_tree() const { return is_connected() && is_acyclic(); }

  // Unique path between two vertices of an acyclic graph, as a vertex list.
  std::vector<Vertex> tree_path(Vertex a, Vertex b) const {
    check_vertex(a);
    check_vertex(b);
    std::map<Vertex, Vertex> pred;
    std::vector<Vertex> queue{a};
    pred[a] = a;
    for (std::size_t i = 0; i < queue.size() && !pred.count(b); ++i) {
      Vertex v = queue[i];
      for (Vertex u : neighbors(v))
        if (!pred.count(u)) {
          pred[u] = v;
          queue.push_back(u);
        }
    }
    if (!pred.count(b)) throw std::invalid_argument("tree_path: no path");
    std::vector<Vertex> path;
    for (Vertex v = b;; v = pred[v]) {
      path.push_back(v);
      if (v == a) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  long long degree_sum() const {
    long long s = 0;
    for (Vertex v : verts_) s += degree(v);
    return s;
  }

  // Number of unordered vertex pairs joined by two or more edges.
  int double_edge_pairs() const {
    std::map<std::pair<Vertex, Vertex>, int> mult;
    for (const auto& [id, e] : edges_)
      if (e.first != e.second) ++mult[e];
    int c = 0;
    for (const auto& [pr, k] : mult)
      if (k >= 2) ++c;
    return c;
  }

  EdgeId peek_next_edge_id() const { return next_edge_id_; }

  bool operator==(const MultiGraph& other) const {
    return verts_ == other.verts_ && edges_ == other.edges_;
  }

  // Equality up to edge ids: same vertices and the same multiset of
  // endpoint pairs.
  bool same_structure(const MultiGraph& other) const {
    if (verts_ != other.verts_) return false;
    std::vector<std::pair<Vertex, Vertex>> a, b;
    for (const auto& [id, e] : edges_) a.push_back(e);
    for (const auto& [id, e] : other.edges_) b.push_back(e);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

private:
  void check_vertex(Vertex v) const {
    if (!verts_.count(v)) throw std::invalid_argument("unknown vertex id " + std::to_string(v));
  }

  void erase_edge(EdgeId id) {
    auto [u, v] = edges_.at(id);
    auto drop = [&](Vertex x) {
      auto& xs = inc_[x];
      xs.erase(std::remove(xs.begin(), xs.end(), id), xs.end());
    };
    drop(u);
    if (v != u) drop(v);
    edges_.erase(id);
  }

  std::set<Vertex> verts_;
  std::map<EdgeId, std::pair<Vertex, Vertex>> edges_;
  std::map<Vertex, std::vector<EdgeId>> inc_;
  EdgeId next_edge_id_ = 1;
};

// Convenience builder: vertices 1..n plus the given endpoint pairs, edge
// ids assigned 1.. in list order.
inline MultiGraph make_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  MultiGraph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace antler
