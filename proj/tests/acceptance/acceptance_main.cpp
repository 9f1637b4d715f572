// Acceptance suite: property- and oracle-based checks at desk scale, one
// pass/fail line per criterion. Exits with the number of failed criteria.

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "antler/antler_finder.hpp"
#include "antler/cli.hpp"
#include "antler/gen.hpp"
#include "antler/io.hpp"

using namespace antler;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- A1
void a1_solver_agreement() {
  auto t0 = Clock::now();
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);           // up to 12
    int m = 4 + static_cast<int>((seed * 7) % 21);    // up to 24
    MultiGraph g = random_multigraph(n, std::min(m, 24), seed, 0.1);
    if (fvs_exact(g).size != fvs_bruteforce(g).size) ++bad;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "300 graphs, " << bad << " disagreements, " << secs << "s";
  report("exact solver agrees with the enumeration oracle", bad == 0 && secs < 60.0, d.str());
}

// ---------------------------------------------------------------- A2
void a2_operation_safety() {
  int checked[5] = {0, 0, 0, 0, 0};
  int bad = 0;
  auto audit = [&](const MultiGraph& before, const MultiGraph& after, const ReductionStep& step) {
    int idx = static_cast<int>(step.kind);
    ++checked[idx];
    if (fvs_bruteforce(before, 16).size !=
        static_cast<int>(step.removed.size()) + fvs_bruteforce(after, 16).size)
      ++bad;
  };

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    {  // multiplicity trimming on a random host
      MultiGraph g = random_multigraph(8, 10, seed);
      Rng rng(seed);
      Vertex u = rng.range(1, 7), v = u + 1;
      for (int i = 0; i < 3; ++i) g.add_edge(u, v);
      auto [g2, step] = op1_trim_multiplicity(g, u, v);
      audit(g, g2, step);
    }
    {  // degree-2 contraction: subdivide a host edge
      MultiGraph g = random_multigraph(8, 12, seed + 500, 0.0);
      EdgeId first = *g.edge_ids().begin();
      auto [a, b] = g.endpoints(first);
      MultiGraph sub = g.remove_edges({first});
      Vertex mid = 9;
      sub.add_vertex(mid);
      sub.add_edge(a, mid);
      sub.add_edge(mid, b);
      auto [g2, step] = op2_contract_degree2(sub, mid);
      audit(sub, g2, step);
    }
    {  // antler removal on a planted instance
      auto p = gen_planted(1 + seed % 2, 1, seed % 2, 4, seed + 1000);
      if (p.graph.n() <= 16) {
        auto [g2, step] = op3_remove_antler(p.graph, p.witness.fvc, 64);
        audit(p.graph, g2, step);
      }
    }
    {  // flower-center removal: center with width+1 petals plus a host
      Rng rng(seed + 1500);
      MultiGraph g = random_multigraph(5, 6, seed + 1500);
      Vertex center = 6;
      g.add_vertex(center);
      VertexSet forest;
      int petals = 2 + static_cast<int>(rng.below(2));
      Vertex next = 7;
      for (int p = 0; p < petals; ++p) {
        Vertex x = next++, y = next++;
        g.add_vertex(x);
        g.add_vertex(y);
        g.add_edge(center, x);
        g.add_edge(x, y);
        g.add_edge(y, center);
        forest.insert(x);
        forest.insert(y);
      }
      g.add_edge(center, rng.range(1, 5));
      auto [g2, step] = op4_remove_flower_center(g, {{center}, forest}, center);
      audit(g, g2, step);
    }
    {  // tree rewiring gadget tied into a host
      Rng rng(seed + 2000);
      MultiGraph host = random_multigraph(5, 6, seed + 2000);
      Vertex v = 6, u = 7;
      host.add_vertex(v);
      host.add_vertex(u);
      VertexSet forest;
      int common = 2 + static_cast<int>(rng.below(2));  // more than |C| = 1 other trees
      Vertex next = 8;
      std::vector<Vertex> trees;
      for (int i = 0; i < common + 1; ++i) {
        Vertex t = next++;
        host.add_vertex(t);
        host.add_edge(v, t);
        host.add_edge(u, t);
        forest.insert(t);
        trees.push_back(t);
      }
      host.add_edge(u, rng.range(1, 5));
      host.add_edge(v, rng.range(1, 5));
      Vertex w = trees.front();
      auto [g2, step] = op5_rewire_tree(host, {{v}, forest}, v, {}, {w}, w);
      audit(host, g2, step);
    }
  }
  std::ostringstream d;
  d << "applications per operation:";
  for (int i = 0; i < 5; ++i) d << " " << checked[i];
  d << ", " << bad << " violations";
  bool enough = true;
  for (int i = 0; i < 5; ++i) enough = enough && checked[i] >= 50;
  report("every operation preserves the optimum exactly", bad == 0 && enough, d.str());
}

// ---------------------------------------------------------------- A3
void a3_antler_preservation() {
  int applied = 0, targets = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int n = 4 + static_cast<int>(seed % 4);  // up to 7
    MultiGraph g = random_multigraph(n, 3 + static_cast<int>(seed % 10), seed, 0.12);
    ReduceOptions opts;
    opts.k = 2;
    opts.z = 1;
    opts.coloring_trial_budget = 0;
    opts.fvc_trial_budget = 0;
    opts.exhaustive_cap = 7;
    auto step = find_and_apply(g, opts);
    if (!step) continue;
    ++applied;
    const MultiGraph& g2 = step->first;
    const VertexSet& s = step->second.removed;

    std::map<std::pair<VertexSet, int>, bool> available;
    for (const auto& w : enumerate_antlers(g2, g2.n(), 1))
      available[{w.fvc.all(), w.fvc.width()}] = true;
    for (const auto& w : enumerate_antlers(g, 2, 1)) {
      ++targets;
      VertexSet projected;
      for (Vertex v : w.fvc.all())
        if (g2.has_vertex(v)) projected.insert(v);
      int want_width =
          w.fvc.width() - static_cast<int>(set_intersect(w.fvc.all(), s).size());
      if (!available.count({projected, want_width})) ++bad;
    }
  }
  std::ostringstream d;
  d << applied << " graphs with an applicable operation, " << targets << " antlers projected, "
    << bad << " violations";
  report("applied operations preserve every small antler", applied > 0 && bad == 0, d.str());
}

// ---------------------------------------------------------------- A4
void a4_reduction_is_solution_safe() {
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int n = 6 + static_cast<int>(seed % 9);  // up to 14
    MultiGraph g = random_multigraph(n, 2 * n - 4, seed, 0.08);
    ReduceOptions opts;
    opts.k = 1 + static_cast<int>(seed % 2);
    opts.z = 1;
    opts.seed = seed;
    ReduceResult r = reduce_all(g, opts);
    if (fvs_bruteforce(g).size !=
        static_cast<int>(r.solution.size()) + fvs_bruteforce(g.remove(r.solution)).size)
      ++bad;
  }
  report("the reduction loop only takes solution vertices",
         bad == 0, "100 graphs, " + std::to_string(bad) + " violations");
}

// ---------------------------------------------------------------- A5
void a5_planted_guarantee() {
  int cases = 0, ok = 0;
  // injected-coloring path
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    int k = 1 + static_cast<int>(seed % 2);
    auto p = gen_planted(k, 1, 1 + seed % 2, 4 + seed % 7, seed);
    ReduceOptions opts;
    opts.k = k;
    opts.z = 1;
    opts.seed = seed;
    opts.oracle_colorings = {p.proper_coloring};
    ReduceResult r = reduce_all(p.graph, opts);
    ++cases;
    if (static_cast<int>(r.solution.size()) >= k) ++ok;
  }
  // family-search path on degree-padded single-tree instances
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    PlantedOptions po;
    po.min_degree3 = true;
    po.cycle_min = 6;
    po.cycle_max = 7;
    Rng rest_rng(seed);
    auto p = plant_over(random_connected(3 + seed % 3, rest_rng), 1, 1, 0, seed, po);
    ReduceOptions opts;
    opts.k = 1;
    opts.z = 1;
    opts.seed = seed;
    opts.coloring_trial_budget = 0;
    ReduceResult r = reduce_all(p.graph, opts);
    ++cases;
    if (static_cast<int>(r.solution.size()) >= 1) ++ok;
  }
  report("planted antlers always yield at least their width",
         cases == 50 && ok == cases, std::to_string(ok) + "/" + std::to_string(cases));
}

// ---------------------------------------------------------------- A6
void a6_degree_three_bound() {
  int cuts = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);  // up to 8
    MultiGraph g = random_min_deg3(n, seed);
    std::vector<Vertex> ids(g.vertices().begin(), g.vertices().end());
    std::vector<int> assign(ids.size(), 0);
    while (true) {
      Fvc f;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (assign[i] == 1) f.cut.insert(ids[i]);
        if (assign[i] == 2) f.forest.insert(ids[i]);
      }
      if (verify_fvc(g, f)) {
        ++cuts;
        if (static_cast<int>(f.forest.size()) > g.edges_between(f.cut, f.forest)) ++bad;
      }
      std::size_t i = 0;
      while (i < ids.size() && assign[i] == 2) assign[i++] = 0;
      if (i == ids.size()) break;
      ++assign[i];
    }
  }
  std::ostringstream d;
  d << cuts << " cuts over 30 graphs, " << bad << " violations";
  report("forests of cuts in degree-3 graphs are edge-bounded", bad == 0 && cuts > 0, d.str());
}

// ---------------------------------------------------------------- A7
void a7_antler_algebra() {
  int graphs = 0, bad = 0;
  long long checks = 0;
  std::map<std::string, int> violation_kind;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int n = 4 + static_cast<int>(seed % 4);  // up to 7
    MultiGraph g = random_multigraph(n, 3 + static_cast<int>(seed % 7), seed, 0.1);
    ++graphs;
    auto ants = enumerate_antlers(g, n, 1);

    // projection under vertex removal stays a cut
    Rng rng(seed * 19);
    for (const auto& w : ants) {
      VertexSet x;
      for (Vertex v : g.vertices())
        if (rng.chance(0.35)) x.insert(v);
      Fvc proj{set_minus(w.fvc.cut, x), set_minus(w.fvc.forest, x)};
      ++checks;
      if (!verify_fvc(g.remove(x), proj)) {
        ++bad;
        ++violation_kind["cut-projection"];
      }
    }
    // removing an antler drops the optimum by its width
    for (const auto& w : ants) {
      ++checks;
      if (fvs_bruteforce(g).size !=
          w.fvc.width() + fvs_bruteforce(g.remove(w.fvc.all())).size) {
        ++bad;
        ++violation_kind["optimum-drop"];
      }
    }
    // restriction of the cut keeps a certified antler
    for (const auto& w : ants) {
      for (Vertex v : w.fvc.cut) {
        MultiGraph g2 = g.remove(v);
        Fvc proj{set_minus(w.fvc.cut, {v}), w.fvc.forest};
        ++checks;
        if (!verify_antler(g2, proj, 64) ||
            !find_certificate(g2, proj.cut, proj.forest, 1).has_value()) {
          ++bad;
          ++violation_kind["cut-restriction"];
        }
      }
    }
    // cross-intersections balance
    for (std::size_t i = 0; i < ants.size(); ++i)
      for (std::size_t j = i + 1; j < ants.size(); ++j) {
        ++checks;
        if (set_intersect(ants[i].fvc.cut, ants[j].fvc.forest).size() !=
            set_intersect(ants[j].fvc.cut, ants[i].fvc.forest).size()) {
          ++bad;
          ++violation_kind["cross-intersection"];
        }
      }
    // difference of antlers stays a certified antler
    for (std::size_t i = 0; i < ants.size(); ++i)
      for (std::size_t j = 0; j < ants.size(); ++j) {
        if (i == j) continue;
        const Fvc& a = ants[i].fvc;
        const Fvc& b = ants[j].fvc;
        MultiGraph g2 = g.remove(b.all());
        Fvc diff{set_minus(a.cut, b.all()), set_minus(a.forest, b.all())};
        ++checks;
        if (!verify_antler(g2, diff, 64) ||
            !find_certificate(g2, diff.cut, diff.forest, 1).has_value()) {
          ++bad;
          ++violation_kind["difference"];
        }
      }
    // combination across a removal is an antler of the original graph
    std::map<VertexSet, std::vector<Fvc>> reduced_cache;
    for (const auto& w : ants) {
      MultiGraph g2 = g.remove(w.fvc.all());
      if (!reduced_cache.count(g2.vertices())) {
        std::vector<Fvc> inner;
        for (const auto& w2 : enumerate_antlers(g2, g2.n(), 1)) inner.push_back(w2.fvc);
        reduced_cache[g2.vertices()] = inner;
      }
      for (const Fvc& w2 : reduced_cache[g2.vertices()]) {
        Fvc merged{set_union(w.fvc.cut, w2.cut), set_union(w.fvc.forest, w2.forest)};
        ++checks;
        if (!verify_antler(g, merged, 64) ||
            !find_certificate(g, merged.cut, merged.forest, 1).has_value()) {
          ++bad;
          ++violation_kind["combination"];
        }
      }
    }
  }
  std::ostringstream d;
  d << graphs << " graphs, " << checks << " checks, " << bad << " violations";
  for (auto& [kind, cnt] : violation_kind) d << " " << kind << ":" << cnt;
  report("antler set algebra holds exhaustively on small graphs", bad == 0, d.str());
}

// ---------------------------------------------------------------- A8
void a8_certificate_pruning() {
  int certs = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int k = 1 + static_cast<int>(seed % 3);         // |C| <= 3
    int z = 1 + static_cast<int>((seed / 3) % 2);   // z <= 2
    if (z > k) z = k;
    PlantedOptions po;
    po.cycle_min = 3;
    po.cycle_max = 3;
    auto p = plant_over({}, k, z, 2, seed, po);  // extra head trees pad the certificate side
    MultiGraph host = p.graph.induced(p.witness.fvc.all());
    Certificate full{host.vertices(), host.edge_ids(), z};
    if (!verify_certificate(p.graph, p.witness.fvc.cut, full, z, 64)) continue;
    ++certs;
    Certificate pruned = prune_certificate(p.graph, p.witness.fvc.cut, full, z);
    MultiGraph h;
    for (Vertex v : pruned.vertices) h.add_vertex(v);
    for (EdgeId id : pruned.edges) {
      auto [a, b] = p.graph.endpoints(id);
      h.add_edge_with_id(id, a, b);
    }
    long long trees =
        static_cast<long long>(h.remove(p.witness.fvc.cut).components().size());
    bool ok = trees <= certificate_tree_bound(k, z) &&
              verify_certificate(p.graph, p.witness.fvc.cut, pruned, z, 64);
    if (!ok) ++bad;
  }
  std::ostringstream d;
  d << certs << " certificates, " << bad << " violations";
  report("certificate pruning meets the tree bound and keeps optimality",
         certs >= 30 && bad == 0, d.str());
}

// ---------------------------------------------------------------- A9
void a9_universal_families() {
  int bad = 0, cases = 0;
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= std::min(3, n); ++k) {
      std::vector<int> ground(n);
      for (int i = 0; i < n; ++i) ground[i] = i + 1;
      ++cases;
      if (!verify_universal(build_universal(ground, k, UniversalBackend::Exhaustive, 1))) ++bad;
    }
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    for (int n : {6, 9, 12})
      for (int k = 1; k <= 3; ++k) {
        std::vector<int> ground(n);
        for (int i = 0; i < n; ++i) ground[i] = i + 1;
        ++cases;
        auto fam = build_universal(ground, k, UniversalBackend::RandomVerified, seed);
        if (!verify_universal(fam) || fam.failure_probability != 0.0L) ++bad;
      }
  report("universal families pass the trace property",
         bad == 0, std::to_string(cases) + " families, " + std::to_string(bad) + " failures");
}

// ---------------------------------------------------------------- A10
void a10_extraction_superset() {
  int colorings = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 4 + static_cast<int>(seed % 4);  // up to 7
    MultiGraph g = random_multigraph(n, 3 + static_cast<int>(seed % 7), seed * 3, 0.1);
    for (const auto& w : enumerate_antlers(g, n, 1)) {
      Coloring3 chi = make_proper_coloring(g, w.fvc, w.cert);
      auto res = extract_antler(g, chi, 1);
      ++colorings;
      bool contains = true;
      for (Vertex v : w.fvc.cut)
        if (!res.fvc.cut.count(v)) contains = false;
      for (Vertex v : w.fvc.forest)
        if (!res.fvc.forest.count(v)) contains = false;
      bool valid = res.cert_verified && verify_fvc(g, res.fvc) &&
                   (res.fvc.empty() || verify_antler(g, res.fvc, 64));
      if (!contains || !valid) ++bad;
    }
  }
  std::ostringstream d;
  d << colorings << " proper colorings, " << bad << " violations";
  report("extraction returns a certified superset of every properly colored antler",
         colorings > 0 && bad == 0, d.str());
}

// ---------------------------------------------------------------- A11
void a11_solver_on_composites() {
  auto t0 = Clock::now();
  int bad = 0, cases = 0;
  PlantedOptions small;
  small.cycle_min = 3;
  small.cycle_max = 3;
  small.tree_size_min = 1;
  small.tree_size_max = 2;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    MultiGraph g;
    if (seed % 2) {  // chain: plant one antler over another
      auto inner = gen_planted(1 + seed % 2, 1, 1, 0, seed, small);
      auto outer = plant_over(inner.graph, 1, 1, 0, seed + 7, small);
      g = outer.graph;
    } else {  // disjoint union of planted pieces
      auto a = gen_planted(1 + seed % 2, 1, 1, 0, seed, small);
      auto b = gen_planted(1, 1, 1, 3, seed + 13, small);
      g = disjoint_union(a.graph, b.graph);
    }
    ++cases;
    SolveOptions opts;
    opts.seed = seed;
    try {
      SolveResult r = solve_by_antler_complexity(g, opts);
      if (g.n() > 18 || static_cast<int>(r.solution.size()) != fvs_bruteforce(g, 18).size ||
          !g.remove(r.solution).is_acyclic())
        ++bad;
    } catch (const grid_exhausted&) {
      ++bad;
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << cases << " composites, " << bad << " failures, " << secs << "s";
  report("the grid solver assembles full optima on composed instances",
         bad == 0 && secs < 120.0, d.str());
}

// ---------------------------------------------------------------- A12
void a12_io_roundtrip() {
  int bad = 0;
  std::vector<MultiGraph> corpus;
  corpus.push_back(MultiGraph{});
  corpus.push_back(make_graph(1, {{1, 1}}));
  corpus.push_back(make_graph(2, {{1, 2}, {1, 2}}));
  corpus.push_back(make_graph(3, {{1, 2}, {2, 3}, {1, 3}}));
  corpus.push_back(make_graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}, {1, 3}, {2, 2}}));
  corpus.push_back(make_graph(5, {}).remove(Vertex{3}));  // sparse ids
  for (std::uint64_t seed = 1; corpus.size() < 20; ++seed)
    corpus.push_back(random_multigraph(3 + seed % 9, (seed * 5) % 18, seed, 0.15));

  for (const auto& g : corpus) {
    std::string canon = serialize_graph(g);
    MultiGraph back = parse_graph(canon);
    if (!back.same_structure(g)) ++bad;
    if (serialize_graph(back) != canon) ++bad;  // parse o serialize is the identity on text
  }

  // reduce traces replay to the same final graph, bit for bit
  int replays = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    MultiGraph g = random_multigraph(8 + seed, 14 + seed, seed, 0.1);
    std::string file_text = serialize_graph(g);
    MultiGraph parsed = parse_graph(file_text);
    ReduceOptions opts;
    opts.k = 1;
    opts.z = 1;
    opts.seed = seed;
    ReduceResult r = reduce_all(parsed, opts);
    ReductionTrace back = trace_from_json(trace_to_json(r.trace));
    MultiGraph replayed = replay_trace(parse_graph(file_text), back);
    ++replays;
    if (serialize_graph(replayed) != serialize_graph(r.final_graph) ||
        !(replayed == r.final_graph))
      ++bad;
  }
  std::ostringstream d;
  d << corpus.size() << " files, " << replays << " trace replays, " << bad << " mismatches";
  report("instance text and traces round-trip exactly", bad == 0, d.str());
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  a1_solver_agreement();
  a2_operation_safety();
  a3_antler_preservation();
  a4_reduction_is_solution_safe();
  a5_planted_guarantee();
  a6_degree_three_bound();
  a7_antler_algebra();
  a8_certificate_pruning();
  a9_universal_families();
  a10_extraction_superset();
  a11_solver_on_composites();
  a12_io_roundtrip();
  std::cout << (failures == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(failures)) << "  ("
            << seconds_since(t0) << "s total)" << std::endl;
  return failures;
}
