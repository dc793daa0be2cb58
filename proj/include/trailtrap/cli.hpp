#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trailtrap/census.hpp"
#include "trailtrap/graph_io.hpp"
#include "trailtrap/hardness.hpp"
#include "trailtrap/solver.hpp"
#include "trailtrap/strategy.hpp"
#include "trailtrap/tree.hpp"

namespace trailtrap::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kBudget = 2 };

/// Graph input: exactly one of an edge-list file, a graph6 string or a
/// family spec.
struct GraphSource {
  std::string edges_file;
  std::string graph6;
  std::string family;
};

struct RunConfig {
  std::string subcommand;
  GraphSource input;
  std::uint64_t budget = 0;
  int jobs = 1;
  bool json = false;
};

namespace detail {

inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad integer '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

}  // namespace detail

/// "k_n:7", "k_pq:3,5", "grid:2,7", "prism:5", "path:9", "cycle:6",
/// "star:3", "hypercube:3", "diamond".
inline Graph parse_family(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::vector<int> a = colon == std::string::npos ? std::vector<int>{} : detail::parse_ints(spec.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (a.size() != k) throw InputError("family '" + name + "' takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "diamond") {
    need(0);
    return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  }
  if (name == "k_n") return need(1), generators::complete(a[0]);
  if (name == "k_pq") return need(2), generators::complete_bipartite(a[0], a[1]);
  if (name == "grid") return need(2), generators::grid(a[0], a[1]);
  if (name == "prism") return need(1), generators::prism(a[0]);
  if (name == "path") return need(1), generators::path(a[0]);
  if (name == "cycle") return need(1), generators::cycle(a[0]);
  if (name == "star") return need(1), generators::star(a[0]);
  if (name == "hypercube") return need(1), generators::hypercube(a[0]);
  throw InputError("unknown family '" + name + "'");
}

inline Graph load_graph(const GraphSource& src) {
  const int given = !src.edges_file.empty() + !src.graph6.empty() + !src.family.empty();
  if (given != 1) throw InputError("give exactly one of --edges, --graph6, --family");
  if (!src.edges_file.empty()) return read_edge_list_file(src.edges_file);
  if (!src.graph6.empty()) return from_graph6(src.graph6);
  return parse_family(src.family);
}

inline nlohmann::json meta_json(std::uint64_t nodes, double millis, std::uint64_t budget) {
  return {{"nodes", nodes}, {"millis", millis}, {"budget", budget}};
}

inline std::optional<Vertex> parse_vertex(const Graph& g, const std::string& tok) {
  if (auto v = g.find(tok)) return v;
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 0 && v < g.order()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

/// Text play loop: the human enters moves as "a b" (vertex names or
/// indices); the engine answers with an optimal move.
inline int play(const Graph& g, Player human, const SolverOptions& opt, std::istream& in, std::ostream& out) {
  PartialGame game(g);
  out << "graph: " << g.order() << " vertices, " << g.size() << " edges; you are " << to_string(human) << "\n";
  while (!game.is_terminal()) {
    if (game.to_move() == human) {
      out << to_string(human) << " move> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\nbye\n";
        return kOk;
      }
      std::istringstream row(line);
      std::string a, b, extra;
      if (line == "quit") return kOk;
      if (!(row >> a >> b) || (row >> extra)) {
        out << "enter a move as two vertices, e.g. '0 1'\n";
        continue;
      }
      const auto va = parse_vertex(g, a), vb = parse_vertex(g, b);
      if (!va || !vb || !g.adjacent(*va, *vb)) {
        out << "no edge " << a << "-" << b << "\n";
        continue;
      }
      const Move m = make_move(g, *va, *vb);
      if (auto why = game.why_illegal(m); !why.empty()) {
        out << "illegal: " << why << "\n";
        continue;
      }
      game.apply(m);
    } else {
      const Move m = *best_move(game, opt);
      game.apply(m);
      out << to_string(opponent(human)) << " plays " << to_string(g, m) << "\n";
    }
  }
  out << to_string(game.loser()) << " cannot move; " << to_string(opponent(game.loser())) << " wins\n";
  return kOk;
}

/// Parses argv and runs one subcommand. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trail Trap solver and experiment driver"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--budget", cfg.budget, "node budget")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--edges", cfg.input.edges_file, "edge-list file");
    sub->add_option("--graph6", cfg.input.graph6, "graph6 string");
    sub->add_option("--family", cfg.input.family, "k_n:N | k_pq:P,Q | grid:M,N | prism:N | path:N | cycle:N | star:K | hypercube:D | diamond");
  };

  bool no_symmetry = false, no_prune = false, no_separation = false, by_components = false;
  int table_bits = 22;
  auto* solve_cmd = app.add_subcommand("solve", "winner under optimal play");
  add_input(solve_cmd);
  solve_cmd->add_flag("--no-symmetry", no_symmetry);
  solve_cmd->add_flag("--no-prune", no_prune);
  solve_cmd->add_flag("--no-separation", no_separation);
  solve_cmd->add_flag("--by-components", by_components, "combine per-component analysis");
  solve_cmd->add_option("--table-bits", table_bits)->check(CLI::Range(10, 30));

  int census_n = 0;
  std::string graph6_file;
  bool emit_p1 = false, brute = false, entries = false;
  auto* census_cmd = app.add_subcommand("census", "solve every connected graph on n vertices");
  census_cmd->add_option("--n", census_n)->required()->check(CLI::Range(1, 7));
  census_cmd->add_option("--graph6-file", graph6_file);
  census_cmd->add_flag("--emit-p1-list", emit_p1);
  census_cmd->add_flag("--brute-force", brute, "enumerate n = 7 without a file (slow)");
  census_cmd->add_flag("--entries", entries, "per-graph rows in JSON");

  bool explain = false;
  auto* tree_cmd = app.add_subcommand("tree", "tree analysis and winner");
  add_input(tree_cmd);
  tree_cmd->add_flag("--explain", explain, "centers, failed clause or winning opening with refuted replies");

  std::string strategy;
  int param = 0, playouts = 10000;
  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "check a strategy against every adversary line");
  verify_cmd->add_option("--strategy", strategy)->required()->check(CLI::IsMember({"copycat", "grid", "prism", "k3q"}));
  verify_cmd->add_option("--params", param, "n for grid/prism, q for k3q");
  verify_cmd->add_option("--playouts", playouts, "random playouts for k3q")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);
  add_input(verify_cmd);

  std::string kind = "thm55", emit, out_file;
  std::vector<int> edge_uv;
  int w = 0;
  bool check = false, relax = false;
  auto* gadget_cmd = app.add_subcommand("gadget", "hardness constructions");
  gadget_cmd->add_option("--type,--kind", kind)->check(CLI::IsMember({"thm55", "fig11", "pendant"}));
  gadget_cmd->add_option("--edge", edge_uv, "host edge u v for fig11")->expected(2)->delimiter(',');
  gadget_cmd->add_option("--vertex,--w", w, "attachment vertex");
  gadget_cmd->add_option("--out", out_file, "write the edge list to FILE and the anchor map to FILE.anchors.json");
  gadget_cmd->add_flag("--check", check, "run the equivalence check");
  gadget_cmd->add_flag("--relax-bipartite", relax);
  gadget_cmd->add_option("--emit", emit, "print the built graph")->check(CLI::IsMember({"edges", "graph6"}));
  add_input(gadget_cmd);
  gadget_cmd->add_option("--host", cfg.input.edges_file, "host edge-list file");

  std::string human = "p1";
  auto* play_cmd = app.add_subcommand("play", "interactive game against the engine");
  play_cmd->add_option("--human", human)->check(CLI::IsMember({"p1", "p2"}));
  add_input(play_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  SolverOptions opt;
  opt.node_budget = cfg.budget;
  opt.jobs = cfg.jobs;
  opt.table_bits = table_bits;
  opt.symmetry = !no_symmetry;
  opt.degree_prune = !no_prune;
  opt.separation = !no_separation;

  auto emit_json = [&](nlohmann::json j) { out << j.dump(2) << "\n"; };

  try {
    if (solve_cmd->parsed()) {
      const Graph g = load_graph(cfg.input);
      const Outcome o = by_components ? analyze_disconnected(g, opt) : solve(g, opt);
      if (cfg.json) {
        emit_json({{"winner", to_string(o.winner)},
                   {"witness", o.witness ? nlohmann::json(to_string(g, *o.witness)) : nlohmann::json()},
                   {"nodes", o.stats.nodes},
                   {"millis", o.stats.millis},
                   {"meta", meta_json(o.stats.nodes, o.stats.millis, cfg.budget)}});
      } else {
        out << "winner " << to_string(o.winner) << "\n";
        if (o.witness) out << "witness " << to_string(g, *o.witness) << "\n";
        out << "nodes " << o.stats.nodes << ", " << o.stats.millis << " ms\n";
      }
      return kOk;
    }

    if (census_cmd->parsed()) {
      EnumerateOptions eo;
      eo.graph6_file = graph6_file;
      eo.brute_force_seven = brute;
      const CensusReport r = run_census(census_n, opt, eo);
      std::uint64_t nodes = 0;
      for (const auto& e : r.entries) nodes += e.nodes;
      if (cfg.json) {
        emit_json({{"counts", census_json(r, entries)}, {"meta", meta_json(nodes, r.millis, cfg.budget)}});
      } else {
        out << census_table({r});
        out << r.p2_win << " / " << r.total_connected << " P2-win\n";
        if (emit_p1)
          for (const auto& s : r.p1_win_list) out << "P1 " << s << "\n";
      }
      return kOk;
    }

    if (tree_cmd->parsed()) {
      const Graph t = load_graph(cfg.input);
      const TreeOutcome to = solve_tree_explained(t, opt);
      const auto& a = to.analysis;
      nlohmann::json centers = nlohmann::json::array();
      for (Vertex c : a.centers) centers.push_back(t.name(c));
      nlohmann::json report{{"centers", centers},
                            {"radius", a.radius},
                            {"diameter", a.diameter},
                            {"necessary_conditions_met", a.necessary_conditions_met},
                            {"failed_clause", a.failed_clause},
                            {"witness", to.outcome.witness ? nlohmann::json(to_string(t, *to.outcome.witness)) : nlohmann::json()}};
      nlohmann::json refuted = nlohmann::json::array();
      for (const Move& m : to.refuted_replies) refuted.push_back(to_string(t, m));
      report["refuted_replies"] = refuted;
      if (cfg.json) {
        emit_json({{"winner", to_string(to.outcome.winner)}, {"report", report},
                   {"meta", meta_json(to.outcome.stats.nodes, to.outcome.stats.millis, cfg.budget)}});
      } else {
        out << "winner " << to_string(to.outcome.winner) << "\n";
        if (to.outcome.witness) out << "witness " << to_string(t, *to.outcome.witness) << "\n";
        if (explain) {
          out << "centers " << centers.dump() << ", radius " << a.radius << ", diameter " << a.diameter << "\n";
          out << "necessary conditions " << (a.necessary_conditions_met ? "met" : "fail at clause " + a.failed_clause) << "\n";
          if (!to.refuted_replies.empty()) out << "refuted replies " << refuted.dump() << "\n";
        }
      }
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      Graph g;
      Strategy s;
      VerifyResult r;
      const bool has_input = !cfg.input.edges_file.empty() || !cfg.input.graph6.empty() || !cfg.input.family.empty();
      if (strategy == "copycat") {
        g = load_graph(cfg.input);
        auto phi = find_involution_no_fixed_edges(g, cfg.budget);
        if (!phi) throw InputError("no fixed-edge-free involution found for this graph");
        s = copycat_strategy(g, *phi);
      } else if (strategy == "grid") {
        g = has_input ? load_graph(cfg.input) : generators::grid(2, param);
        s = grid_p1_strategy(param);
      } else if (strategy == "prism") {
        g = has_input ? load_graph(cfg.input) : generators::prism(param);
        s = prism_p2_strategy(param);
      } else {
        g = has_input ? load_graph(cfg.input) : generators::complete_bipartite(3, param);
        s = k3q_p1_strategy(param);
      }
      VerifyHooks hooks;
      hooks.jobs = cfg.jobs;
      r = strategy == "k3q" ? random_playouts(g, s, playouts, seed) : verify_strategy(g, s, hooks);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      nlohmann::json report{{"strategy", s.name}, {"verdict", to_string(r.verdict)}, {"playouts", r.playouts},
                            {"exhaustive", strategy != "k3q"}};
      if (!r.verified()) {
        report["reason"] = r.reason;
        report["transcript"] = transcript_json(r.transcript);
      }
      if (cfg.json) {
        emit_json({{"report", report}, {"meta", meta_json(0, ms, cfg.budget)}});
      } else {
        out << s.name << ": " << to_string(r.verdict) << " (" << r.playouts << " playouts"
            << (strategy == "k3q" ? ", random adversary" : "") << ")\n";
        if (!r.verified()) {
          out << r.reason << "\n";
          out << "transcript " << transcript_json(r.transcript).dump() << "\n";
        }
      }
      return kOk;
    }

    if (gadget_cmd->parsed()) {
      const Graph host = load_graph(cfg.input);
      Graph built;
      nlohmann::json report{{"kind", kind}};
      nlohmann::json anchors = nlohmann::json::object();
      if (kind == "fig11") {
        Vertex u = host.edge(0).u, v = host.edge(0).v;
        if (!edge_uv.empty()) u = edge_uv[0], v = edge_uv[1];
        const GadgetReplacement gr = build_fig11_gadget(host, u, v);
        built = gr.result;
        for (const auto& [name, x] : gr.anchor_map) anchors[name] = x;
        if (check) {
          const auto walk = highlighted_trail(gr);
          report["hamiltonian_cycle_through_uv"] = hamiltonian_cycle_through(host, u, v, cfg.budget);
          report["highlighted_trail_length"] = walk ? static_cast<int>(walk->size()) - 1 : -1;
          report["highlighted_trail_valid"] = walk && is_trail(built, *walk);
        }
      } else if (kind == "pendant") {
        built = build_pendant_graph(host, w);
        anchors = {{"w", w}, {"pendant", host.order()}};
      } else {
        const Thm55Graph t = build_thm55_graph(host, w, !relax);
        built = t.graph;
        report["u"] = t.u;
        report["c"] = t.c;
        report["deg_c"] = built.degree(t.c);
        anchors = {{"w", w}, {"u", t.u}, {"c", t.c}, {"path_start", t.path_start}};
        if (check) {
          const ReductionReport rr = check_reduction_equivalence(host, w, opt, !relax);
          report["long_trail_in_pendant_graph"] = rr.trail_side;
          report["p2_wins"] = rr.p2_wins ? nlohmann::json(*rr.p2_wins) : nlohmann::json();
          report["agree"] = rr.agree();
          if (!rr.p2_wins) {
            if (cfg.json) emit_json({{"report", report}, {"meta", meta_json(0, 0, cfg.budget)}});
            else err << "node budget exceeded while solving G'\n";
            return kBudget;
          }
        }
      }
      report["vertices"] = built.order();
      report["edges"] = built.size();
      report["bipartite"] = is_bipartite(built);
      report["max_degree"] = built.max_degree();
      report["cubic"] = is_regular(built, 3);
      report["anchors"] = anchors;
      if (!out_file.empty()) {
        std::ofstream edges_out(out_file), anchors_out(out_file + ".anchors.json");
        if (!edges_out || !anchors_out) throw InputError("cannot write " + out_file);
        edges_out << to_edge_list(built);
        anchors_out << anchors.dump(2) << "\n";
      }
      if (cfg.json) {
        if (emit == "graph6") report["graph6"] = to_graph6(built);
        emit_json({{"report", report}, {"meta", meta_json(0, 0, cfg.budget)}});
      } else {
        for (auto& [k, v] : report.items()) out << k << " " << v.dump() << "\n";
        if (emit == "edges") out << to_edge_list(built);
        if (emit == "graph6") out << to_graph6(built) << "\n";
      }
      return kOk;
    }

    if (play_cmd->parsed()) {
      const Graph g = load_graph(cfg.input);
      return play(g, human == "p1" ? Player::kOne : Player::kTwo, opt, in, out);
    }
  } catch (const BudgetExceeded& e) {
    if (cfg.json)
      emit_json({{"error", e.what()}, {"meta", meta_json(e.nodes(), 0, cfg.budget)}});
    else
      err << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace trailtrap::cli
