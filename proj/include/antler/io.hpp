#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "antler/antler_finder.hpp"
#include "antler/multigraph.hpp"

namespace antler {

// Instance text format, one record per line:
//   c ...            comment
//   p fvs <n> <m>    header; without v-lines the vertices are 1..n
//   v <id>           explicit vertex (sparse graphs)
//   e <u> <v>        edge; repeated lines are parallel edges, "e u u" a loop
// Edge ids are assigned 1..m in line order.
inline MultiGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int want_n = 0, want_m = 0, header_line = 0;
  bool explicit_vertices = false;
  MultiGraph g;
  int edges_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw parse_error(line_no, "duplicate header");
      std::string kind;
      if (!(ls >> kind >> want_n >> want_m) || kind != "fvs" || want_n < 0 || want_m < 0)
        throw parse_error(line_no, "malformed header, expected 'p fvs <n> <m>'");
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (!have_header) throw parse_error(line_no, "record before header");
    if (tag == "v") {
      int id;
      if (!(ls >> id)) throw parse_error(line_no, "malformed vertex line");
      if (!explicit_vertices && g.n() > 0)
        throw parse_error(line_no, "vertex lines must precede edge lines");
      explicit_vertices = true;
      if (g.has_vertex(id)) throw parse_error(line_no, "duplicate vertex id");
      g.add_vertex(id);
      continue;
    }
    if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw parse_error(line_no, "malformed edge line");
      if (!explicit_vertices && g.n() == 0)
        for (int i = 1; i <= want_n; ++i) g.add_vertex(i);
      if (!explicit_vertices && (u < 1 || u > want_n || v < 1 || v > want_n))
        throw parse_error(line_no, "vertex id out of range [1, n]");
      if (explicit_vertices && (!g.has_vertex(u) || !g.has_vertex(v)))
        throw parse_error(line_no, "edge endpoint not declared");
      g.add_edge_with_id(++edges_read, std::min(u, v), std::max(u, v));
      continue;
    }
    throw parse_error(line_no, "unknown record '" + tag + "'");
  }
  if (!have_header) throw parse_error(line_no == 0 ? 1 : line_no, "missing header");
  if (!explicit_vertices && g.n() == 0)
    for (int i = 1; i <= want_n; ++i) g.add_vertex(i);
  if (explicit_vertices && g.n() != want_n)
    throw parse_error(header_line, "vertex count does not match header");
  if (edges_read != want_m) throw parse_error(header_line, "edge count does not match header");
  return g;
}

// Canonical text: header, vertex lines only when ids are not exactly
// 1..n, edge lines sorted.
inline std::string serialize_graph(const MultiGraph& g) {
  bool dense = true;
  int expect = 1;
  for (Vertex v : g.vertices())
    if (v != expect++) {
      dense = false;
      break;
    }
  std::ostringstream out;
  out << "p fvs " << g.n() << " " << g.m() << "\n";
  if (!dense)
    for (Vertex v : g.vertices()) out << "v " << v << "\n";
  std::vector<std::pair<Vertex, Vertex>> lines;
  for (EdgeId id : g.edge_ids()) lines.push_back(g.endpoints(id));
  std::sort(lines.begin(), lines.end());
  for (auto [u, v] : lines) out << "e " << u << " " << v << "\n";
  return out.str();
}

// Coloring file, for the oracle-coloring mode:
//   v <vertex-id> C|F|R
//   g <edge-id> C|F|R
// Edge ids refer to the instance file's edge order (1-based).
inline Coloring3 parse_coloring(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  Coloring3 chi;
  auto to_color = [&](const std::string& s) {
    if (s == "C") return Color3::Cut;
    if (s == "F") return Color3::Forest;
    if (s == "R") return Color3::Rest;
    throw parse_error(line_no, "unknown color '" + s + "'");
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag, color;
    int id;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (!(ls >> id >> color)) throw parse_error(line_no, "malformed coloring line");
    if (tag == "v")
      chi.vertex[id] = to_color(color);
    else if (tag == "g")
      chi.edge[id] = to_color(color);
    else
      throw parse_error(line_no, "unknown record '" + tag + "'");
  }
  return chi;
}

inline std::string serialize_coloring(const Coloring3& chi) {
  std::ostringstream out;
  for (const auto& [v, c] : chi.vertex) out << "v " << v << " " << color_letter(c) << "\n";
  for (const auto& [e, c] : chi.edge) out << "g " << e << " " << color_letter(c) << "\n";
  return out.str();
}

// Ground-truth sidecar for generated instances.
struct Sidecar {
  int k = 0;
  int z = 0;
  Fvc antler;
  Certificate cert;
  std::optional<int> optimum;
};

inline nlohmann::json sidecar_to_json(const Sidecar& sc) {
  nlohmann::json js;
  js["k"] = sc.k;
  js["z"] = sc.z;
  js["C"] = std::vector<Vertex>(sc.antler.cut.begin(), sc.antler.cut.end());
  js["F"] = std::vector<Vertex>(sc.antler.forest.begin(), sc.antler.forest.end());
  js["certificate"] = {
      {"vertices", std::vector<Vertex>(sc.cert.vertices.begin(), sc.cert.vertices.end())},
      {"edges", std::vector<EdgeId>(sc.cert.edges.begin(), sc.cert.edges.end())}};
  if (sc.optimum)
    js["optimum"] = *sc.optimum;
  else
    js["optimum"] = nullptr;
  return js;
}

inline Sidecar sidecar_from_json(const nlohmann::json& js) {
  Sidecar sc;
  sc.k = js.at("k").get<int>();
  sc.z = js.at("z").get<int>();
  for (Vertex v : js.at("C").get<std::vector<Vertex>>()) sc.antler.cut.insert(v);
  for (Vertex v : js.at("F").get<std::vector<Vertex>>()) sc.antler.forest.insert(v);
  for (Vertex v : js.at("certificate").at("vertices").get<std::vector<Vertex>>())
    sc.cert.vertices.insert(v);
  for (EdgeId e : js.at("certificate").at("edges").get<std::vector<EdgeId>>())
    sc.cert.edges.insert(e);
  sc.cert.order = sc.z;
  if (!js.at("optimum").is_null()) sc.optimum = js.at("optimum").get<int>();
  return sc;
}

// DOT text with parallel edges as repeated lines and loops rendered.
inline std::string export_dot(const MultiGraph& g) {
  std::ostringstream out;
  out << "graph fvs {\n";
  for (Vertex v : g.vertices()) out << "  " << v << ";\n";
  std::vector<std::pair<Vertex, Vertex>> lines;
  for (EdgeId id : g.edge_ids()) lines.push_back(g.endpoints(id));
  std::sort(lines.begin(), lines.end());
  for (auto [u, v] : lines) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace antler
