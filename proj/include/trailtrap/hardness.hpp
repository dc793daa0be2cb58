#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trailtrap/metrics.hpp"
#include "trailtrap/solver.hpp"

namespace trailtrap {

struct GadgetReplacement {
  Graph host;
  std::pair<Vertex, Vertex> replaced_edge;
  Graph result;
  std::map<std::string, Vertex> anchor_map;
};

namespace gadget_data {

// One 8-vertex block: ring g1-g2-g3-g4-g5-g8-g7-g6-g1 plus chords.
inline constexpr std::array<std::pair<int, int>, 11> kBlockEdges{{
    {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 8}, {8, 7}, {7, 6}, {6, 1},  // ring
    {2, 7}, {3, 8}, {5, 6},                                          // chords
}};

inline constexpr std::array<char, 4> kBlocks{'A', 'B', 'C', 'D'};

// Connectors between x, y, u, v and block ports.
inline constexpr std::array<std::pair<const char*, const char*>, 8> kConnectors{{
    {"x", "g4A"}, {"x", "g1B"}, {"x", "g1D"},
    {"y", "g1C"}, {"y", "g4B"}, {"y", "g4D"},
    {"u", "g1A"}, {"v", "g4C"},
}};

// The highlighted trail from x, split where it leaves and re-enters the
// gadget through the host.
inline const std::vector<std::string> kTrailToU{
    "x",   "g1B", "g2B", "g7B", "g6B", "g5B", "g8B", "g3B", "g4B", "y",   "g4D", "g5D", "g8D", "g3D",
    "g2D", "g7D", "g6D", "g1D", "x",   "g4A", "g3A", "g8A", "g5A", "g6A", "g7A", "g2A", "g1A", "u"};
inline const std::vector<std::string> kTrailFromV{"v",   "g4C", "g3C", "g8C", "g5C",
                                                  "g6C", "g7C", "g2C", "g1C", "y"};

}  // namespace gadget_data

inline void require_cubic_bipartite(const Graph& g) {
  if (!is_regular(g, 3)) throw InputError("host graph is not cubic");
  if (!is_bipartite(g)) throw InputError("host graph is not bipartite");
}

/// Replaces host edge uv by the four-block gadget. Host vertices keep their
/// indices; gadget vertices follow (blocks A..D then x, y).
inline GadgetReplacement build_fig11_gadget(const Graph& host, Vertex u, Vertex v) {
  require_cubic_bipartite(host);
  const auto uv = host.edge_between(u, v);
  if (!uv) throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the host");
  GadgetReplacement out{host, {u, v}, {}, {}};
  auto& names = out.anchor_map;
  int next = host.order();
  for (char b : gadget_data::kBlocks)
    for (int i = 1; i <= 8; ++i) names["g" + std::to_string(i) + b] = next++;
  names["x"] = next++;
  names["y"] = next++;
  names["u"] = u;
  names["v"] = v;
  names["x'"] = names["g1B"];
  names["y'"] = names["g1C"];

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeIndex e = 0; e < host.size(); ++e)
    if (e != *uv) edges.emplace_back(host.edge(e).u, host.edge(e).v);
  for (char b : gadget_data::kBlocks)
    for (auto [i, j] : gadget_data::kBlockEdges)
      edges.emplace_back(names["g" + std::to_string(i) + b], names["g" + std::to_string(j) + b]);
  for (auto [a, b] : gadget_data::kConnectors) edges.emplace_back(names[a], names[b]);
  out.result = Graph(next, edges);

  std::vector<std::string> labels(next);
  for (Vertex w = 0; w < host.order(); ++w) labels[w] = host.name(w);
  for (auto& [name, w] : names)
    if (w >= host.order()) labels[w] = name;
  out.result.set_names(std::move(labels));
  return out;
}

/// Hamiltonian u-v path of g, if any (backtracking).
inline std::optional<std::vector<Vertex>> hamiltonian_path(const Graph& g, Vertex from, Vertex to,
                                                           std::uint64_t budget = 0) {
  const int n = g.order();
  std::vector<Vertex> path{from};
  std::vector<char> seen(n, 0);
  seen[from] = 1;
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self) -> bool {
    if (budget && ++nodes > budget) throw BudgetExceeded(nodes);
    const Vertex at = path.back();
    if (static_cast<int>(path.size()) == n) return at == to;
    for (auto inc : g.neighbors(at)) {
      if (seen[inc.to] || (inc.to == to && static_cast<int>(path.size()) + 1 != n)) continue;
      seen[inc.to] = 1;
      path.push_back(inc.to);
      if (self(self)) return true;
      path.pop_back();
      seen[inc.to] = 0;
    }
    return false;
  };
  if (n == 1) return from == to ? std::optional(path) : std::nullopt;
  if (from == to) return std::nullopt;
  if (rec(rec)) return path;
  return std::nullopt;
}

/// True iff g has a Hamiltonian cycle using edge uv.
inline bool hamiltonian_cycle_through(const Graph& g, Vertex u, Vertex v, std::uint64_t budget = 0) {
  if (!g.adjacent(u, v)) return false;
  return hamiltonian_path(g, u, v, budget).has_value();
}

/// The gadget's highlighted trail stitched to a Hamiltonian u-v path of the
/// host (without edge uv), as a vertex sequence in the result graph.
inline std::optional<std::vector<Vertex>> highlighted_trail(const GadgetReplacement& gr) {
  const auto hp = hamiltonian_path(gr.host, gr.replaced_edge.first, gr.replaced_edge.second);
  if (!hp) return std::nullopt;
  std::vector<Vertex> walk;
  for (const auto& s : gadget_data::kTrailToU) walk.push_back(gr.anchor_map.at(s));
  walk.insert(walk.end(), hp->begin() + 1, hp->end() - 1);
  for (const auto& s : gadget_data::kTrailFromV) walk.push_back(gr.anchor_map.at(s));
  return walk;
}

/// True iff consecutive vertices are adjacent and no edge repeats.
inline bool is_trail(const Graph& g, const std::vector<Vertex>& walk) {
  EdgeMask seen = 0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const auto e = g.edge_between(walk[i - 1], walk[i]);
    if (!e || bits::test(seen, *e)) return false;
    seen |= bits::bit<EdgeMask>(*e);
  }
  return true;
}

/// G plus a pendant vertex (index n) attached to w.
inline Graph build_pendant_graph(const Graph& g, Vertex w) {
  if (w < 0 || w >= g.order()) throw InputError("vertex out of range");
  auto edges = g.edge_pairs();
  edges.emplace_back(w, g.order());
  return Graph(g.order() + 1, edges);
}

struct Thm55Graph {
  Graph graph;
  Vertex u = 0;          // the pendant vertex of G-hat
  Vertex c = 0;          // the center of the path Q
  Vertex path_start = 0;  // v_1 of Q; v_i is path_start + i - 1
  int n = 0;             // order of G
};

/// G' = G-hat + path Q on 2n+3 vertices, joined by u-c with c = v_{n+2}.
/// `require_bipartite` may be relaxed for negative-control experiments.
inline Thm55Graph build_thm55_graph(const Graph& g, Vertex w, bool require_bipartite = true) {
  if (!is_connected(g) || !is_regular(g, 3)) throw InputError("G must be connected and cubic");
  if (require_bipartite && !is_bipartite(g)) throw InputError("G must be bipartite");
  const Graph hat = build_pendant_graph(g, w);
  const int n = g.order();
  Thm55Graph out;
  out.n = n;
  out.u = n;
  out.path_start = n + 1;
  out.c = out.path_start + (n + 2) - 1;
  auto edges = hat.edge_pairs();
  for (int i = 0; i + 1 < 2 * n + 3; ++i) edges.emplace_back(out.path_start + i, out.path_start + i + 1);
  edges.emplace_back(out.u, out.c);
  out.graph = Graph(n + 1 + 2 * n + 3, edges);
  return out;
}

struct ReductionReport {
  bool trail_side = false;   // G-hat has a trail of length n + 2
  std::optional<bool> p2_wins;  // unset when the solver budget ran out
  bool agree() const { return p2_wins.has_value() && *p2_wins == trail_side; }
};

/// Both sides of the equivalence by independent oracles: the longest-trail
/// search on G-hat and the game solver on G'.
inline ReductionReport check_reduction_equivalence(const Graph& g, Vertex w, const SolverOptions& opt = {},
                                                   bool require_bipartite = true) {
  const auto built = build_thm55_graph(g, w, require_bipartite);
  ReductionReport r;
  r.trail_side = has_trail(build_pendant_graph(g, w), g.order() + 2);
  try {
    r.p2_wins = solve(built.graph, opt).winner == Player::kTwo;
  } catch (const BudgetExceeded&) {
    r.p2_wins.reset();
  }
  return r;
}

}  // namespace trailtrap
