#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antler/gen.hpp"
#include "antler/io.hpp"

namespace antler {

// Exit codes: 0 success, 2 unreadable or malformed input, 3 a cap refusal,
// 4 nothing found (failed verification, exhausted solver grid).
namespace cli_exit {
constexpr int ok = 0;
constexpr int error = 1;
constexpr int parse = 2;
constexpr int refusal = 3;
constexpr int not_found = 4;
}  // namespace cli_exit

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(1, "cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw parse_error(1, "cannot write file " + path);
  out << text;
}

}  // namespace detail

inline int cli_main(std::vector<std::string> args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"antler decompositions for feedback vertex set preprocessing"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "find solution vertices and shrink the instance");
  int rk = 1, rz = 1;
  std::string r_universal = "auto";
  std::uint64_t r_seed = 1;
  std::string r_coloring, r_in;
  int r_trials = -1, r_fvc_trials = -1;
  bool r_json = false;
  reduce->add_option("--k", rk, "width bound");
  reduce->add_option("--z", rz, "certificate order bound");
  reduce->add_option("--universal", r_universal, "auto|exhaustive|random|random_verified")
      ->check(CLI::IsMember({"auto", "exhaustive", "random", "random_verified"}));
  reduce->add_option("--seed", r_seed, "random seed");
  reduce->add_option("--coloring", r_coloring, "oracle coloring file");
  reduce->add_option("--trials", r_trials, "random 3-coloring budget per round");
  reduce->add_option("--fvc-trials", r_fvc_trials, "random 2-coloring budget per round");
  reduce->add_flag("--json", r_json, "machine-readable output");
  reduce->add_option("input", r_in, "instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "assemble a full optimal feedback vertex set");
  int s_cap = 3;
  std::uint64_t s_seed = 1;
  std::string s_in;
  bool s_json = false;
  solve->add_option("--cap", s_cap, "largest width explored");
  solve->add_option("--seed", s_seed, "random seed");
  solve->add_flag("--json", s_json, "machine-readable output");
  solve->add_option("input", s_in, "instance file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check a cut/antler/certificate against an instance");
  std::string v_what, v_in, v_sets;
  verify->add_option("--what", v_what, "fvc|antler|certificate")
      ->required()
      ->check(CLI::IsMember({"fvc", "antler", "certificate"}));
  verify->add_option("input", v_in, "instance file")->required();
  verify->add_option("sets", v_sets, "sidecar JSON with C/F/certificate")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "write a planted instance with ground-truth sidecar");
  int g_k = 1, g_z = 1, g_trees = 1, g_rest = 4;
  std::uint64_t g_seed = 1;
  bool g_mindeg3 = false;
  std::string g_out;
  gen->add_option("--k", g_k, "antler width");
  gen->add_option("--z", g_z, "certificate order");
  gen->add_option("--trees", g_trees, "extra trees per head");
  gen->add_option("--rest", g_rest, "size of the random rest");
  gen->add_option("--seed", g_seed, "random seed");
  gen->add_flag("--min-deg3", g_mindeg3, "pad forest degrees to three");
  gen->add_option("--out", g_out, "output path prefix")->required();

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "write the instance as DOT");
  std::string d_in, d_out;
  dot->add_option("input", d_in, "instance file")->required();
  dot->add_option("--out", d_out, "output file (default stdout)");

  try {
    std::vector<const char*> argv;
    argv.push_back("antler");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (*reduce) {
      MultiGraph g = parse_graph(detail::slurp(r_in));
      ReduceOptions opts;
      opts.k = rk;
      opts.z = rz;
      opts.seed = r_seed;
      if (r_universal == "exhaustive") opts.fvc_mode = FvcSearchMode::Exhaustive;
      if (r_universal == "random") opts.fvc_mode = FvcSearchMode::Random;
      if (r_universal == "random_verified") opts.fvc_mode = FvcSearchMode::RandomVerified;
      if (r_trials >= 0) opts.coloring_trial_budget = r_trials;
      if (r_fvc_trials >= 0) opts.fvc_trial_budget = r_fvc_trials;
      if (!r_coloring.empty()) {
        Coloring3 chi = parse_coloring(detail::slurp(r_coloring));
        if (!chi.total_for(g))
          throw parse_error(1, "coloring does not cover every vertex and edge of the instance");
        opts.oracle_colorings.push_back(std::move(chi));
      }
      auto t0 = std::chrono::steady_clock::now();
      ReduceResult r = reduce_all(g, opts);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      if (r_json) {
        nlohmann::json js;
        js["S"] = std::vector<Vertex>(r.solution.begin(), r.solution.end());
        js["S_size"] = r.solution.size();
        js["residual"] = serialize_graph(r.final_graph);
        js["trace"] = trace_to_json(r.trace);
        js["failure_probability"] = static_cast<double>(r.failure_probability);
        js["elapsed_ms"] = ms;
        out << js.dump(2) << "\n";
      } else {
        out << "S " << r.solution.size() << " :";
        for (Vertex v : r.solution) out << " " << v;
        out << "\n";
        out << "residual:\n" << serialize_graph(r.final_graph);
        out << "trace: " << trace_to_json(r.trace).dump() << "\n";
        out << "failure_probability: " << static_cast<double>(r.failure_probability) << "\n";
      }
      return cli_exit::ok;
    }

    if (*solve) {
      MultiGraph g = parse_graph(detail::slurp(s_in));
      SolveOptions opts;
      opts.grid_cap = s_cap;
      opts.seed = s_seed;
      SolveResult r = solve_by_antler_complexity(g, opts);
      if (s_json) {
        nlohmann::json js;
        js["S"] = std::vector<Vertex>(r.solution.begin(), r.solution.end());
        js["S_size"] = r.solution.size();
        js["k"] = r.k_used;
        js["z"] = r.z_used;
        out << js.dump(2) << "\n";
      } else {
        out << "S " << r.solution.size() << " :";
        for (Vertex v : r.solution) out << " " << v;
        out << "\n";
        out << "found at k=" << r.k_used << " z=" << r.z_used << "\n";
      }
      return cli_exit::ok;
    }

    if (*verify) {
      MultiGraph g = parse_graph(detail::slurp(v_in));
      Sidecar sc = sidecar_from_json(nlohmann::json::parse(detail::slurp(v_sets)));
      bool ok = false;
      if (v_what == "fvc") ok = verify_fvc(g, sc.antler);
      if (v_what == "antler") ok = verify_antler(g, sc.antler, std::max(40, g.n()));
      if (v_what == "certificate")
        ok = verify_certificate(g, sc.antler.cut, sc.cert, sc.z, std::max(40, g.n()));
      out << (ok ? "OK" : "FAIL") << "\n";
      return ok ? cli_exit::ok : cli_exit::not_found;
    }

    if (*gen) {
      PlantedOptions po;
      po.min_degree3 = g_mindeg3;
      PlantedResult p = gen_planted(g_k, g_z, g_trees, g_rest, g_seed, po);
      detail::spit(g_out, serialize_graph(p.graph));
      Sidecar sc;
      sc.k = g_k;
      sc.z = g_z;
      sc.antler = p.witness.fvc;
      sc.cert = p.witness.cert;
      sc.optimum = p.optimum;
      detail::spit(g_out + ".json", sidecar_to_json(sc).dump(2) + "\n");
      detail::spit(g_out + ".coloring", serialize_coloring(p.proper_coloring));
      out << "wrote " << g_out << " " << g_out << ".json " << g_out << ".coloring\n";
      return cli_exit::ok;
    }

    if (*dot) {
      MultiGraph g = parse_graph(detail::slurp(d_in));
      std::string text = export_dot(g);
      if (d_out.empty())
        out << text;
      else
        detail::spit(d_out, text);
      return cli_exit::ok;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return cli_exit::parse;
  } catch (const refusal_error& e) {
    err << "refused: " << e.what() << "\n";
    return cli_exit::refusal;
  } catch (const budget_exhausted& e) {
    err << "refused: " << e.what() << "\n";
    return cli_exit::refusal;
  } catch (const grid_exhausted& e) {
    err << "not found: " << e.what() << "\n";
    return cli_exit::not_found;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return cli_exit::parse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return cli_exit::error;
  }
  return cli_exit::error;
}

}  // namespace antler
