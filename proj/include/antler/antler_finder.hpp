#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "antler/reducer.hpp"
#include "antler/rng.hpp"

namespace antler {

enum class Color3 { Cut, Forest, Rest };

inline char color_letter(Color3 c) {
  switch (c) {
    case Color3::Cut: return 'C';
    case Color3::Forest: return 'F';
    case Color3::Rest: return 'R';
  }
  return '?';
}

// Total assignment of the three colors to vertices and edges.
struct Coloring3 {
  std::map<Vertex, Color3> vertex;
  std::map<EdgeId, Color3> edge;

  bool total_for(const MultiGraph& g) const {
    for (Vertex v : g.vertices())
      if (!vertex.count(v)) return false;
    for (EdgeId id : g.edge_ids())
      if (!edge.count(id)) return false;
    return true;
  }

  VertexSet vertex_part(const MultiGraph& g, Color3 c) const {
    VertexSet r;
    for (Vertex v : g.vertices())
      if (vertex.at(v) == c) r.insert(v);
    return r;
  }
};

namespace detail {

// The graph with rest-colored vertices and edges removed.
inline MultiGraph visible_graph(const MultiGraph& g, const Coloring3& chi) {
  VertexSet rest_v;
  EdgeIdSet rest_e;
  for (Vertex v : g.vertices())
    if (chi.vertex.at(v) == Color3::Rest) rest_v.insert(v);
  for (EdgeId id : g.edge_ids())
    if (chi.edge.at(id) == Color3::Rest) rest_e.insert(id);
  return g.remove(rest_v, rest_e);
}

}  // namespace detail

// Union of the forest-colored components (in the graph without rest
// vertices and edges) whose remaining neighborhood lies inside C.
inline VertexSet enclosed_forest(const MultiGraph& g, const Coloring3& chi, const VertexSet& c) {
  if (!chi.total_for(g)) throw std::invalid_argument("enclosed_forest: coloring not total");
  for (Vertex v : c)
    if (chi.vertex.at(v) != Color3::Cut)
      throw std::invalid_argument("enclosed_forest: C must be cut-colored");
  MultiGraph visible = detail::visible_graph(g, chi);
  VertexSet fv;
  for (Vertex v : visible.vertices())
    if (chi.vertex.at(v) == Color3::Forest) fv.insert(v);
  VertexSet out;
  for (const VertexSet& comp : visible.induced(fv).components()) {
    VertexSet nbrs = visible.neighbors(comp);
    bool enclosed = true;
    for (Vertex x : nbrs)
      if (!c.count(x)) {
        enclosed = false;
        break;
      }
    if (enclosed) out.insert(comp.begin(), comp.end());
  }
  return out;
}

struct ExtractResult {
  Fvc fvc;
  Certificate cert;
  bool cert_verified = false;
};

// Whittles a coloring down to the antler it supports: edges touching rest
// become rest, forest components that are not trees or attach twice to
// rest become rest, and cut vertices survive only while some small subset
// containing them is an optimal feedback vertex set of its enclosed
// forest. The surviving (cut, forest) pair is an antler of order z and
// contains every antler the initial coloring colored properly. The
// certificate is rebuilt from the final marking family and re-verified.
inline ExtractResult extract_antler(const MultiGraph& g, const Coloring3& chi0, int z) {
  if (z < 0) throw std::invalid_argument("extract_antler: z must be >= 0");
  if (!chi0.total_for(g)) throw std::invalid_argument("extract_antler: coloring not total");
  Coloring3 chi = chi0;

  auto recolor_vertex = [&](Vertex v) {
    chi.vertex[v] = Color3::Rest;
    for (EdgeId id : g.incident_edges(v)) chi.edge[id] = Color3::Rest;
  };

  std::vector<VertexSet> mark_family;
  while (true) {
    // edges with a rest endpoint turn rest
    for (EdgeId id : g.edge_ids()) {
      auto [a, b] = g.endpoints(id);
      if (chi.vertex.at(a) == Color3::Rest || chi.vertex.at(b) == Color3::Rest)
        chi.edge[id] = Color3::Rest;
    }
    // forest components must be trees attached at most once to rest
    bool changed = true;
    while (changed) {
      changed = false;
      VertexSet fv = chi.vertex_part(g, Color3::Forest);
      VertexSet rv = chi.vertex_part(g, Color3::Rest);
      MultiGraph sub = g.induced(fv);
      for (const VertexSet& comp : sub.components()) {
        bool bad = !sub.induced(comp).is_acyclic();
        if (!bad) bad = g.edges_between(comp, rv) > 1;
        if (bad) {
          for (Vertex v : comp) recolor_vertex(v);
          changed = true;
          break;
        }
      }
    }

    MultiGraph visible = detail::visible_graph(g, chi);
    VertexSet cv = chi.vertex_part(g, Color3::Cut);
    VertexSet fv = chi.vertex_part(g, Color3::Forest);
    std::vector<VertexSet> comps = visible.induced(fv).components();
    std::vector<VertexSet> comp_nbrs;
    for (const VertexSet& comp : comps) comp_nbrs.push_back(visible.neighbors(comp));

    auto enclosed = [&](const VertexSet& c) {
      VertexSet w;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        bool inside = true;
        for (Vertex x : comp_nbrs[i])
          if (!c.count(x)) {
            inside = false;
            break;
          }
        if (inside) w.insert(comps[i].begin(), comps[i].end());
      }
      return w;
    };

    // mark every small cut subset that is an optimal feedback vertex set
    // of its enclosed forest
    mark_family.clear();
    VertexSet marked;
    std::vector<Vertex> cv_list(cv.begin(), cv.end());
    const int ncv = static_cast<int>(cv_list.size());
    for (int size = 0; size <= std::min(z, ncv); ++size) {
      std::vector<int> comb(size);
      for (int i = 0; i < size; ++i) comb[i] = i;
      while (true) {
        VertexSet c;
        for (int i : comb) c.insert(cv_list[i]);
        MultiGraph h = visible.induced(set_union(c, enclosed(c)));
        auto r = fvs_bounded(h, z);
        if (r && r->size == size) {
          marked.insert(c.begin(), c.end());
          mark_family.push_back(c);
        }
        int i = size - 1;
        while (i >= 0 && comb[i] == ncv - size + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
      }
    }

    VertexSet unmarked = set_minus(cv, marked);
    if (unmarked.empty()) {
      ExtractResult res;
      res.fvc = {cv, fv};
      // certificate: disjoint slices, one per newly-covered marked subset
      VertexSet covered, covered_forest;
      for (const VertexSet& ci : mark_family) {
        VertexSet di = set_minus(ci, covered);
        covered = set_union(covered, ci);
        VertexSet w_now = enclosed(covered);
        VertexSet slice = set_union(di, set_minus(w_now, covered_forest));
        covered_forest = set_union(covered_forest, w_now);
        MultiGraph part = visible.induced(slice);
        res.cert.vertices.insert(slice.begin(), slice.end());
        for (EdgeId id : part.edge_ids()) res.cert.edges.insert(id);
      }
      res.cert.order = z;
      res.cert_verified =
          verify_fvc(g, res.fvc) && verify_certificate(g, cv, res.cert, z, std::max(40, g.n()));
      return res;
    }
    for (Vertex v : unmarked) recolor_vertex(v);
  }
}

// Canonical proper coloring of a certified antler: cut and forest vertices
// take their colors, certificate edges are forest-colored, everything else
// is rest.
inline Coloring3 make_proper_coloring(const MultiGraph& g, const Fvc& fvc, const Certificate& cert) {
  Coloring3 chi;
  for (Vertex v : g.vertices()) {
    if (fvc.cut.count(v))
      chi.vertex[v] = Color3::Cut;
    else if (fvc.forest.count(v))
      chi.vertex[v] = Color3::Forest;
    else
      chi.vertex[v] = Color3::Rest;
  }
  for (EdgeId id : g.edge_ids())
    chi.edge[id] = cert.edges.count(id) ? Color3::Forest : Color3::Rest;
  return chi;
}

// Samples a coloring the way the two-subset construction would: membership
// in the first subset gives the cut color, membership in the second alone
// gives the forest color. Weights are biased toward forest, which carries
// most of the relevant elements of an antler.
inline Coloring3 sample_coloring(const MultiGraph& g, Rng& rng, double p_cut = 0.25,
                                 double p_forest_rest_split = 2.0 / 3.0) {
  Coloring3 chi;
  auto draw = [&]() {
    if (rng.chance(p_cut)) return Color3::Cut;
    return rng.chance(p_forest_rest_split) ? Color3::Forest : Color3::Rest;
  };
  for (Vertex v : g.vertices()) chi.vertex[v] = draw();
  for (EdgeId id : g.edge_ids()) chi.edge[id] = draw();
  return chi;
}

// How the reducible-cut search sources its coloring family inside the
// driver. Auto keeps runs cheap: the exhaustive family up to a size cap,
// budgeted random 2-colorings beyond it. The explicit modes defer to
// build_universal and propagate its refusals.
enum class FvcSearchMode { Auto, Exhaustive, Random, RandomVerified };

struct ReduceOptions {
  int k = 1;
  int z = 1;
  std::uint64_t seed = 1;
  // reducible-cut path
  FvcSearchMode fvc_mode = FvcSearchMode::Auto;
  int exhaustive_cap = 12;     // Auto: exhaustive 2-coloring family only up to this size
  int fvc_trial_budget = 500;  // Auto: random 2-colorings past the cap (0 disables)
  // antler-coloring path
  int coloring_trial_budget = 200;  // random 3-colorings (0 disables)
  std::vector<Coloring3> oracle_colorings;  // consumed once each, in order
  int verify_cap = 1 << 20;
};

struct ReduceResult {
  MultiGraph final_graph;
  VertexSet solution;  // S: vertices contained in some minimum feedback vertex set
  ReductionTrace trace;
  long double failure_probability = 0.0L;
};

namespace detail {

struct ReduceState {
  Rng rng;
  std::vector<bool> oracle_used;
};

inline std::optional<std::pair<MultiGraph, ReductionStep>> find_and_apply_once(
    const MultiGraph& g, const ReduceOptions& opts, ReduceState& state) {
  // injected colorings apply to the snapshot they were written for
  for (std::size_t i = 0; i < opts.oracle_colorings.size(); ++i) {
    if (state.oracle_used[i]) continue;
    const Coloring3& chi = opts.oracle_colorings[i];
    if (!chi.total_for(g)) continue;
    state.oracle_used[i] = true;
    ExtractResult res = extract_antler(g, chi, opts.z);
    if (!res.fvc.empty() && res.cert_verified)
      return op3_remove_antler(g, res.fvc, opts.verify_cap);
  }

  if (auto t = try_trivial_operation(g)) return *t;

  // color-coded reducible-cut search, then the operation driver
  Fvc reducible;
  if (opts.fvc_mode != FvcSearchMode::Auto) {
    ReducibleSearchOptions ro;
    ro.auto_backend = false;
    ro.seed = state.rng.next_u64();
    switch (opts.fvc_mode) {
      case FvcSearchMode::Exhaustive: ro.backend = UniversalBackend::Exhaustive; break;
      case FvcSearchMode::Random: ro.backend = UniversalBackend::Random; break;
      default: ro.backend = UniversalBackend::RandomVerified; break;
    }
    reducible = find_reducible_fvc(g, opts.k, ro);
  } else if (g.n() <= opts.exhaustive_cap) {
    ReducibleSearchOptions ro;
    ro.backend = UniversalBackend::Exhaustive;
    ro.auto_backend = false;
    ro.limits.exhaustive_cap = opts.exhaustive_cap;
    reducible = find_reducible_fvc(g, opts.k, ro);
  } else {
    for (int t = 0; t < opts.fvc_trial_budget; ++t) {
      Coloring2 chi;
      for (Vertex v : g.vertices())
        if (state.rng.next_u64() & 1) chi.cut_colored.insert(v);
      Fvc f = find_fvc_for_coloring(g, chi);
      if (!f.empty() && is_reducible(f)) {
        reducible = f;
        break;
      }
    }
  }
  if (!reducible.empty() && is_reducible(reducible)) return apply_operation(g, reducible);

  for (int t = 0; t < opts.coloring_trial_budget; ++t) {
    Coloring3 chi = sample_coloring(g, state.rng);
    ExtractResult res = extract_antler(g, chi, opts.z);
    if (!res.fvc.empty() && res.cert_verified)
      return op3_remove_antler(g, res.fvc, opts.verify_cap);
  }
  return std::nullopt;
}

}  // namespace detail

// Tries one round of finding and applying an operation. Order: injected
// oracle colorings, the always-applicable operations, the color-coded
// reducible-cut search feeding the operation driver, then budgeted random
// antler colorings.
inline std::optional<std::pair<MultiGraph, ReductionStep>> find_and_apply(
    const MultiGraph& g, const ReduceOptions& opts) {
  if (opts.k < opts.z || opts.z < 0) throw std::invalid_argument("find_and_apply: need k >= z >= 0");
  detail::ReduceState state{Rng(opts.seed), std::vector<bool>(opts.oracle_colorings.size(), false)};
  return detail::find_and_apply_once(g, opts, state);
}

// Applies operations until none is found. Every vertex of the returned
// solution set lies in some minimum feedback vertex set of the input, so
// fvs(G) = |S| + fvs(G - S). The failure probability bounds the chance
// that the final "nothing found" pass missed an existing antler of width
// at most k (0 when the final graph is acyclic).
inline ReduceResult reduce_all(const MultiGraph& g0, const ReduceOptions& opts) {
  if (opts.k < opts.z || opts.z < 0) throw std::invalid_argument("reduce_all: need k >= z >= 0");
  detail::ReduceState state{Rng(opts.seed), std::vector<bool>(opts.oracle_colorings.size(), false)};
  ReduceResult res;
  res.final_graph = g0;
  while (true) {
    auto step = detail::find_and_apply_once(res.final_graph, opts, state);
    if (!step) break;
    res.final_graph = step->first;
    res.trace.record(step->second);
  }
  res.solution = res.trace.accumulated;

  if (res.final_graph.is_acyclic()) {
    res.failure_probability = 0.0L;
  } else if (opts.coloring_trial_budget <= 0) {
    res.failure_probability = 1.0L;
  } else {
    long double relevant = 26.0L;
    for (int i = 0; i < 5; ++i) relevant *= opts.k;
    relevant *= opts.z * opts.z;
    relevant = std::min<long double>(relevant, res.final_graph.n() + res.final_graph.m());
    relevant = std::max<long double>(relevant, 1.0L);
    long double p_hit = std::exp(relevant * std::log(0.25L));
    res.failure_probability =
        std::exp(static_cast<long double>(opts.coloring_trial_budget) * std::log1p(-p_hit));
  }
  return res;
}

struct SolveOptions {
  int grid_cap = 3;  // explore 1 <= z' <= k' <= grid_cap
  std::uint64_t seed = 1;
  ReduceOptions reduce;  // k and z are overwritten per grid pair
};

struct SolveResult {
  VertexSet solution;
  int k_used = 0;
  int z_used = 0;
};

// Tries parameter pairs in increasing order of the running-time proxy
// 2^(k^5 z^2) * n^z, running the reduction loop for each, until the found
// set is a full feedback vertex set.
inline SolveResult solve_by_antler_complexity(const MultiGraph& g, const SolveOptions& opts = {}) {
  std::vector<std::pair<int, int>> grid;  // (k', z')
  for (int k = 1; k <= opts.grid_cap; ++k)
    for (int z = 1; z <= k; ++z) grid.push_back({k, z});
  const long double log_n = std::log2(static_cast<long double>(std::max(g.n(), 2)));
  auto cost = [&](const std::pair<int, int>& p) {
    long double c = 1.0L;
    for (int i = 0; i < 5; ++i) c *= p.first;
    c *= p.second * p.second;
    return c + p.second * log_n;
  };
  std::stable_sort(grid.begin(), grid.end(),
                   [&](const auto& a, const auto& b) { return cost(a) < cost(b); });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    ReduceOptions ro = opts.reduce;
    ro.k = grid[i].first;
    ro.z = grid[i].second;
    ro.seed = opts.seed + i;
    ReduceResult r = reduce_all(g, ro);
    if (g.remove(r.solution).is_acyclic()) return {r.solution, ro.k, ro.z};
  }
  throw grid_exhausted("solve_by_antler_complexity: antler complexity exceeds cap " +
                       std::to_string(opts.grid_cap));
}

// A sequence of certified antlers, each valid in the graph left by its
// predecessors.
struct AntlerSequence {
  std::vector<AntlerWitness> pieces;
  int z = 1;

  int width() const {
    int w = 0;
    for (const auto& p : pieces) w = std::max(w, p.fvc.width());
    return w;
  }

  VertexSet cut_union() const {
    VertexSet r;
    for (const auto& p : pieces) r.insert(p.fvc.cut.begin(), p.fvc.cut.end());
    return r;
  }
};

inline bool verify_antler_sequence(const MultiGraph& g0, const AntlerSequence& seq,
                                   int verify_cap = 64) {
  MultiGraph g = g0;
  for (const auto& piece : seq.pieces) {
    if (!verify_antler(g, piece.fvc, verify_cap)) return false;
    if (!verify_certificate(g, piece.fvc.cut, piece.cert, seq.z, verify_cap)) return false;
    g = g.remove(piece.fvc.all());
  }
  return true;
}

}  // namespace antler
