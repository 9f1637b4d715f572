#pragma once

#include <optional>
#include <vector>

#include "antler/antler_finder.hpp"
#include "antler/rng.hpp"

namespace antler {

struct PlantedOptions {
  int cycle_min = 3;
  int cycle_max = 4;
  int tree_size_min = 1;
  int tree_size_max = 3;
  double tree_rest_attach_prob = 0.5;
  int head_rest_edges_max = 2;
  bool min_degree3 = false;  // pad forest degrees with head edges
};

struct PlantedResult {
  MultiGraph graph;
  AntlerWitness witness;
  int z = 1;
  std::optional<int> optimum;  // brute-force value when within the oracle cap
  Coloring3 proper_coloring;
};

namespace detail {

inline Vertex next_id(const MultiGraph& g) {
  return g.vertices().empty() ? 1 : *g.vertices().rbegin() + 1;
}

}  // namespace detail

// Plants a certified width-k antler on top of `base`: each head gets a
// private cycle (heads are paired into shared components when z >= 2),
// plus extra trees hung off the heads, attached to the rest by at most
// one edge each. The construction guarantees the returned pair verifies
// as an antler with the returned order-z certificate.
inline PlantedResult plant_over(MultiGraph base, int k, int z, int trees_per_head,
                                std::uint64_t seed, const PlantedOptions& opts = {}) {
  if (k < z || z < 1) throw std::invalid_argument("plant_over: need k >= z >= 1");
  Rng rng(seed);
  MultiGraph g = base;
  VertexSet rest = base.vertices();
  PlantedResult out;
  out.z = z;

  PlantedOptions o = opts;
  if (o.min_degree3) o.tree_size_min = std::max(o.tree_size_min, 2);

  std::vector<Vertex> heads;
  for (int i = 0; i < k; ++i) {
    Vertex h = detail::next_id(g);
    g.add_vertex(h);
    heads.push_back(h);
  }
  VertexSet forest;
  Certificate cert;
  cert.order = z;
  std::map<Vertex, Vertex> group_head;  // forest vertex -> padding target

  auto add_private_cycle = [&](Vertex h) {
    int len = rng.range(o.cycle_min, o.cycle_max);
    std::vector<Vertex> path;
    for (int i = 0; i < len - 1; ++i) {
      Vertex f = detail::next_id(g);
      g.add_vertex(f);
      forest.insert(f);
      group_head[f] = h;
      path.push_back(f);
    }
    std::vector<EdgeId> cycle_edges;
    cycle_edges.push_back(g.add_edge(h, path.front()));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      cycle_edges.push_back(g.add_edge(path[i], path[i + 1]));
    cycle_edges.push_back(g.add_edge(path.back(), h));
    cert.vertices.insert(h);
    cert.vertices.insert(path.begin(), path.end());
    cert.edges.insert(cycle_edges.begin(), cycle_edges.end());
    return path;
  };

  // private cycles; when z >= 2 adjacent head pairs share a component via
  // a bridge vertex, giving certificate components of order 2
  for (int i = 0; i < k; ++i) {
    auto path = add_private_cycle(heads[i]);
    if (z >= 2 && i % 2 == 1) {
      Vertex b = detail::next_id(g);
      g.add_vertex(b);
      forest.insert(b);
      group_head[b] = heads[i];
      EdgeId e1 = g.add_edge(b, path.front());
      // bridge to the previous head's cycle: its first forest vertex
      Vertex prev_anchor = -1;
      for (Vertex f : forest)
        if (group_head[f] == heads[i - 1]) {
          prev_anchor = f;
          break;
        }
      EdgeId e2 = g.add_edge(b, prev_anchor);
      cert.vertices.insert(b);
      cert.edges.insert(e1);
      cert.edges.insert(e2);
    }
  }

  // extra trees on each head
  std::vector<std::vector<Vertex>> extra_trees;
  for (Vertex h : heads)
    for (int t = 0; t < trees_per_head; ++t) {
      int size = rng.range(o.tree_size_min, o.tree_size_max);
      std::vector<Vertex> tv;
      for (int i = 0; i < size; ++i) {
        Vertex f = detail::next_id(g);
        g.add_vertex(f);
        forest.insert(f);
        group_head[f] = h;
        if (i > 0) g.add_edge(tv[rng.below(tv.size())], f);
        tv.push_back(f);
      }
      g.add_edge(h, tv.front());
      if (size >= 2 && rng.chance(0.3)) g.add_edge(h, tv.back());  // extra head cycle
      extra_trees.push_back(tv);
    }

  // trees reach the rest by at most one edge
  if (!rest.empty())
    for (const auto& tv : extra_trees)
      if (rng.chance(o.tree_rest_attach_prob)) {
        std::vector<Vertex> rv(rest.begin(), rest.end());
        g.add_edge(tv[rng.below(tv.size())], rv[rng.below(rv.size())]);
      }

  // heads connect to the rest freely
  if (!rest.empty())
    for (Vertex h : heads) {
      int cnt = rng.range(0, o.head_rest_edges_max);
      std::vector<Vertex> rv(rest.begin(), rest.end());
      for (int i = 0; i < cnt; ++i) g.add_edge(h, rv[rng.below(rv.size())]);
    }

  if (o.min_degree3) {
    for (Vertex f : forest)
      while (g.degree(f) < 3) {
        Vertex target = group_head[f];
        if (g.multiplicity(f, target) >= 2) {
          target = -1;
          for (Vertex h : heads)
            if (g.multiplicity(f, h) < 2) {
              target = h;
              break;
            }
          if (target == -1) throw std::logic_error("plant_over: cannot pad degree");
        }
        g.add_edge(f, target);
      }
    for (Vertex h : heads)
      while (g.degree(h) < 3) g.add_edge(h, *forest.begin());
  }

  out.graph = g;
  out.witness.fvc = {VertexSet(heads.begin(), heads.end()), forest};
  out.witness.cert = cert;
  if (!verify_antler(g, out.witness.fvc, std::max(40, g.n())) ||
      !verify_certificate(g, out.witness.fvc.cut, cert, z, std::max(40, g.n())))
    throw std::logic_error("plant_over: construction failed its own contract");
  out.proper_coloring = make_proper_coloring(g, out.witness.fvc, cert);
  if (g.n() <= oracle_cap()) out.optimum = fvs_bruteforce(g).size;
  return out;
}

// Random connected graph on `size` fresh vertices (may contain cycles).
inline MultiGraph random_connected(int size, Rng& rng) {
  MultiGraph g;
  for (int i = 1; i <= size; ++i) {
    g.add_vertex(i);
    if (i > 1) g.add_edge(rng.range(1, i - 1), i);
  }
  if (size >= 2) {
    int extra = rng.range(0, size / 3);
    for (int i = 0; i < extra; ++i) {
      Vertex u = rng.range(1, size), v = rng.range(1, size);
      if (u != v) g.add_edge(std::min(u, v), std::max(u, v));
    }
  }
  return g;
}

// Planted instance: a certified width-k antler over a random connected
// rest of the requested size. Vertex ids are contiguous from 1.
inline PlantedResult gen_planted(int k, int z, int trees_per_head, int rest_size,
                                 std::uint64_t seed, const PlantedOptions& opts = {}) {
  if (rest_size < 0) throw std::invalid_argument("gen_planted: rest size must be >= 0");
  Rng rng(seed);
  MultiGraph base = rest_size > 0 ? random_connected(rest_size, rng) : MultiGraph{};
  return plant_over(base, k, z, trees_per_head, rng.next_u64(), opts);
}

inline MultiGraph random_multigraph(int n, int m, std::uint64_t seed, double loop_prob = 0.08) {
  Rng rng(seed);
  MultiGraph g;
  for (int i = 1; i <= n; ++i) g.add_vertex(i);
  for (int i = 0; i < m && n > 0; ++i) {
    Vertex u = rng.range(1, n);
    Vertex v = rng.chance(loop_prob) ? u : rng.range(1, n);
    g.add_edge(std::min(u, v), std::max(u, v));
  }
  return g;
}

inline MultiGraph random_min_deg3(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_min_deg3: need n >= 2");
  Rng rng(seed);
  MultiGraph g;
  for (int i = 1; i <= n; ++i) g.add_vertex(i);
  for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
  for (Vertex v = 1; v <= n; ++v)
    while (g.degree(v) < 3) {
      Vertex u = rng.range(1, n);
      if (u == v) continue;
      g.add_edge(std::min(u, v), std::max(u, v));
    }
  int extra = rng.range(0, n / 2);
  for (int i = 0; i < extra; ++i) {
    Vertex u = rng.range(1, n), v = rng.range(1, n);
    if (u != v) g.add_edge(std::min(u, v), std::max(u, v));
  }
  return g;
}

// Disjoint union with the second graph's vertex ids shifted past the
// first's; reports the shift so ground truth can be remapped.
inline MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b, int* shift_out = nullptr) {
  int shift = a.vertices().empty() ? 0 : *a.vertices().rbegin();
  MultiGraph g = a;
  for (Vertex v : b.vertices()) g.add_vertex(v + shift);
  for (EdgeId id : b.edge_ids()) {
    auto [u, v] = b.endpoints(id);
    g.add_edge(u + shift, v + shift);
  }
  if (shift_out) *shift_out = shift;
  return g;
}

inline VertexSet shift_set(const VertexSet& s, int shift) {
  VertexSet r;
  for (Vertex v : s) r.insert(v + shift);
  return r;
}

}  // namespace antler
