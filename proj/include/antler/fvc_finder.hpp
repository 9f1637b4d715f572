#pragma once

#include <vector>

#include "antler/structures.hpp"
#include "antler/universal.hpp"

namespace antler {

// Forest-size threshold above which a feedback vertex cut of the given
// width admits a reduction operation: 2x^3 + 3x^2 - x.
inline long long reducibility_threshold(long long x) {
  if (x < 0) throw std::invalid_argument("reducibility_threshold: negative argument");
  return 2 * x * x * x + 3 * x * x - x;
}

inline bool is_reducible(const Fvc& f) {
  return static_cast<long long>(f.forest.size()) > reducibility_threshold(f.width());
}

// Two-coloring of the vertices: everything in `cut_colored` has the cut
// color, the rest has the forest color.
struct Coloring2 {
  VertexSet cut_colored;
};

struct KnapsackItem {
  int tree_id = 0;
  int weight = 0;
  long long value = 0;
};

struct KnapsackTable {
  std::vector<long long> best_value;          // index b
  std::vector<std::vector<int>> chosen_ids;   // tree ids, ascending
};

// 0-1 knapsack solved for every budget 0..b_max. Ties between equal-value
// solutions are broken toward including lower tree ids.
inline KnapsackTable knapsack_best_values(const std::vector<KnapsackItem>& items, int b_max) {
  if (b_max < 0) throw std::invalid_argument("knapsack_best_values: negative budget");
  const int n = static_cast<int>(items.size());
  // suffix[i][b] = best value using items i.. with budget b
  std::vector<std::vector<long long>> suffix(n + 1, std::vector<long long>(b_max + 1, 0));
  for (int i = n - 1; i >= 0; --i)
    for (int b = 0; b <= b_max; ++b) {
      long long v = suffix[i + 1][b];
      if (items[i].weight <= b)
        v = std::max(v, items[i].value + suffix[i + 1][b - items[i].weight]);
      suffix[i][b] = v;
    }
  KnapsackTable table;
  table.best_value.resize(b_max + 1);
  table.chosen_ids.resize(b_max + 1);
  for (int b = 0; b <= b_max; ++b) {
    table.best_value[b] = suffix[0][b];
    int rem = b;
    for (int i = 0; i < n; ++i)
      if (items[i].weight <= rem &&
          items[i].value + suffix[i + 1][rem - items[i].weight] == suffix[i][rem]) {
        table.chosen_ids[b].push_back(items[i].tree_id);
        rem -= items[i].weight;
      }
  }
  return table;
}

namespace detail {

struct ForestTree {
  int id;           // position in discovery order (= "tree id" for ties)
  VertexSet verts;
  bool is_tree;     // component is acyclic
};

inline std::vector<ForestTree> forest_components(const MultiGraph& g, const VertexSet& f_verts) {
  MultiGraph sub = g.induced(f_verts);
  std::vector<ForestTree> out;
  int next = 0;
  for (const VertexSet& comp : sub.components()) {
    ForestTree t;
    t.id = next++;
    t.verts = comp;
    t.is_tree = sub.induced(comp).is_acyclic();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

// Given a total 2-coloring, scans for a reducible feedback vertex cut:
// first over single forest-colored trees, then per cut-colored vertex u
// over bundles of trees hanging off u, packed with the knapsack. Returns
// an empty pair when the coloring exposes nothing reducible; whenever a
// coloring properly separates a simple reducible cut, the result is
// reducible.
inline Fvc find_fvc_for_coloring(const MultiGraph& g, const Coloring2& chi) {
  for (Vertex v : chi.cut_colored)
    if (!g.has_vertex(v)) throw std::invalid_argument("find_fvc_for_coloring: bad coloring");
  VertexSet f_verts = set_minus(g.vertices(), chi.cut_colored);
  std::vector<detail::ForestTree> trees = detail::forest_components(g, f_verts);

  auto finish = [&](Fvc result) {
    if (!verify_fvc(g, result))
      throw std::logic_error("find_fvc_for_coloring: produced an invalid cut");
    return result;
  };

  // single-tree scan
  for (const auto& t : trees) {
    if (!t.is_tree) continue;
    VertexSet nbrs = g.neighbors(t.verts);
    Vertex u = -1;
    for (Vertex x : nbrs)
      if (g.edges_between(t.verts, x) == 1) {
        u = x;
        break;
      }
    VertexSet cut = nbrs;
    if (u != -1) cut.erase(u);
    if (static_cast<long long>(t.verts.size()) > reducibility_threshold(cut.size()))
      return finish({cut, t.verts});
  }

  // bundle scan around each cut-colored vertex u
  for (Vertex u : chi.cut_colored) {
    std::vector<const detail::ForestTree*> bundle;  // trees with exactly one edge to u
    for (const auto& t : trees)
      if (t.is_tree && g.edges_between(t.verts, u) == 1) bundle.push_back(&t);
    if (bundle.empty()) continue;

    // vertices other than u seeing at least two bundle trees
    std::map<Vertex, int> seen_in;
    for (const auto* t : bundle)
      for (Vertex x : g.neighbors(t->verts))
        if (x != u) ++seen_in[x];
    VertexSet c_prime;
    for (auto [x, cnt] : seen_in)
      if (cnt >= 2) c_prime.insert(x);

    VertexSet c_prime_u = set_union(c_prime, VertexSet{u});
    std::vector<const detail::ForestTree*> inner, outer;  // T1 and T2
    for (const auto* t : bundle) {
      VertexSet extra = set_minus(g.neighbors(t->verts), c_prime_u);
      (extra.empty() ? inner : outer).push_back(t);
    }
    long long inner_value = 0;
    for (const auto* t : inner) inner_value += static_cast<long long>(t->verts.size());

    VertexSet outer_nbrs;
    std::vector<KnapsackItem> items;
    for (const auto* t : outer) {
      VertexSet extra = set_minus(g.neighbors(t->verts), c_prime_u);
      outer_nbrs.insert(extra.begin(), extra.end());
      items.push_back({t->id, static_cast<int>(extra.size()),
                       static_cast<long long>(t->verts.size())});
    }
    const int b_max = static_cast<int>(outer_nbrs.size());
    KnapsackTable table = knapsack_best_values(items, b_max);
    for (int b = 0; b <= b_max; ++b) {
      if (inner_value + table.best_value[b] <=
          reducibility_threshold(static_cast<long long>(c_prime.size()) + b))
        continue;
      Fvc result;
      result.forest = {};
      for (const auto* t : inner) result.forest.insert(t->verts.begin(), t->verts.end());
      VertexSet picked_nbrs;
      for (int id : table.chosen_ids[b])
        for (const auto* t : outer)
          if (t->id == id) {
            result.forest.insert(t->verts.begin(), t->verts.end());
            VertexSet nb = g.neighbors(t->verts);
            picked_nbrs.insert(nb.begin(), nb.end());
          }
      result.cut = set_union(c_prime, picked_nbrs);
      result.cut.erase(u);
      return finish(result);
    }
  }
  return {};
}

struct ReducibleSearchOptions {
  UniversalBackend backend = UniversalBackend::Exhaustive;
  bool auto_backend = true;  // exhaustive when n fits the cap, else random_verified
  std::uint64_t seed = 1;
  UniversalLimits limits;
};

// Color-coded search for a reducible feedback vertex cut of width at most
// k: builds an (n, 2 f_r(k) + k + 1)-universal family over the vertices
// and scans the induced 2-colorings. If the graph has a reducible
// single-tree cut of width at most k, the result is reducible; otherwise
// it may be empty.
inline Fvc find_reducible_fvc(const MultiGraph& g, int k,
                              const ReducibleSearchOptions& opts = {}) {
  if (k < 0) throw std::invalid_argument("find_reducible_fvc: k must be >= 0");
  const int n = g.n();
  long long s = 2 * reducibility_threshold(k) + k + 1;
  int param = static_cast<int>(std::min<long long>(s, n));

  UniversalBackend backend = opts.backend;
  if (opts.auto_backend)
    backend = n <= opts.limits.exhaustive_cap ? UniversalBackend::Exhaustive
                                              : UniversalBackend::RandomVerified;
  std::vector<int> ground(g.vertices().begin(), g.vertices().end());
  UniversalFamily fam = build_universal(ground, param, backend, opts.seed, opts.limits);
  for (const auto& q : fam.sets) {
    Coloring2 chi;
    chi.cut_colored = VertexSet(q.begin(), q.end());
    Fvc f = find_fvc_for_coloring(g, chi);
    if (!f.empty() && is_reducible(f)) return f;
  }
  return {};
}

}  // namespace antler
