#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trailtrap/metrics.hpp"
#include "trailtrap/solver.hpp"

namespace trailtrap {

inline void require_tree(const Graph& t) {
  if (!is_tree(t)) throw InputError("input is not a tree");
}

/// Centers of a tree by repeated leaf removal.
inline std::vector<Vertex> tree_centers(const Graph& t) {
  require_tree(t);
  const int n = t.order();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    return all;
  }
  std::vector<int> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] == 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex leaf : layer)
      for (auto inc : t.neighbors(leaf))
        if (--deg[inc.to] == 1) next.push_back(inc.to);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

/// Cut-edge test: after removing uv and xy, v and y lie in
/// different components and y has at least as long a trail as v.
inline bool cut_edge_criterion(const Graph& g, const Move& uv, EdgeIndex xy, Vertex y) {
  if (xy == uv.edge) return false;
  if (!g.edge(xy).touches(y)) throw InputError("y is not an endpoint of edge xy");
  const EdgeMask rest = g.all_edges_mask() & ~bits::bit<EdgeMask>(uv.edge) & ~bits::bit<EdgeMask>(xy);
  const Graph h = spanning_subgraph(g, rest);
  if (distance(h, uv.head, y) != kUnreachable) return false;
  return longest_trail_from(h, y) >= longest_trail_from(h, uv.head);
}

/// Some P2 reply x -> y certifying a P2 win through the cut-edge test.
inline std::optional<Move> cut_edge_reply(const Graph& g, const Move& uv) {
  for (EdgeIndex e = 0; e < g.size(); ++e) {
    if (e == uv.edge) continue;
    for (Vertex y : {g.edge(e).u, g.edge(e).v})
      if (cut_edge_criterion(g, uv, e, y)) return Move{e, g.edge(e).other(y), y};
  }
  return std::nullopt;
}

struct TreeAnalysis {
  std::vector<Vertex> centers;
  int radius = 0;
  int diameter = 0;
  std::vector<Move> candidate_first_moves;
  bool necessary_conditions_met = false;
  std::string failed_clause;  // "degree", "i", "ii", "iii", "iv" or empty
};

namespace detail {

/// The component containing `side` after deleting edge {a, b}.
inline Graph side_of(const Graph& t, Vertex a, Vertex b, Vertex side, std::vector<Vertex>* map = nullptr) {
  const auto e = t.edge_between(a, b);
  const Graph h = spanning_subgraph(t, t.all_edges_mask() & ~bits::bit<EdgeMask>(*e));
  for (auto& c : components(h)) {
    for (std::size_t i = 0; i < c.to_parent.size(); ++i)
      if (c.to_parent[i] == side) {
        if (map) *map = c.to_parent;
        return c.graph;
      }
  }
  throw InputError("vertex not found");
}

inline bool unique_center_is(const Graph& comp, const std::vector<Vertex>& map, Vertex c) {
  auto cs = tree_centers(comp);
  return cs.size() == 1 && map[cs[0]] == c;
}

}  // namespace detail

inline TreeAnalysis analyze_tree(const Graph& t) {
  require_tree(t);
  TreeAnalysis a;
  a.centers = tree_centers(t);
  a.radius = radius(t);
  a.diameter = diameter(t);
  const int r = a.radius;
  if (t.order() <= 2) {
    // K1 and K2 sit outside the degree conditions
    a.necessary_conditions_met = t.order() == 2;
    if (t.order() == 2) a.candidate_first_moves = {Move{0, t.edge(0).u, t.edge(0).v}};
    else a.failed_clause = "degree";
    return a;
  }
  if (a.centers.size() == 1) {
    const Vertex c = a.centers[0];
    if (t.degree(c) != 3) {
      a.failed_clause = "degree";
      return a;
    }
    for (auto inc : t.neighbors(c)) a.candidate_first_moves.push_back({inc.edge, inc.to, c});
    bool some_i = false;
    for (auto inc : t.neighbors(c)) {
      const Graph far = detail::side_of(t, c, inc.to, inc.to);
      if (diameter(far) > r) continue;
      some_i = true;
      std::vector<Vertex> map;
      const Graph near = detail::side_of(t, c, inc.to, c, &map);
      if (detail::unique_center_is(near, map, c)) {
        a.necessary_conditions_met = true;
        return a;
      }
    }
    a.failed_clause = some_i ? "ii" : "i";
    return a;
  }
  Vertex c1 = a.centers[0], c2 = a.centers[1];
  if (t.degree(c2) > t.degree(c1)) std::swap(c1, c2);
  if (t.degree(c1) != 3 || t.degree(c2) != 2) {
    a.failed_clause = "degree";
    return a;
  }
  a.candidate_first_moves.push_back(make_move(t, c2, c1));
  if (diameter(detail::side_of(t, c1, c2, c2)) > r - 1) {
    a.failed_clause = "iii";
    return a;
  }
  std::vector<Vertex> map;
  const Graph near = detail::side_of(t, c1, c2, c1, &map);
  if (!detail::unique_center_is(near, map, c1)) {
    a.failed_clause = "iv";
    return a;
  }
  a.necessary_conditions_met = true;
  return a;
}

/// Winner of the game on tree t with both opening moves fixed.
inline Player rpeg_tree(PartialSolver& solver, const Graph& t, const Move& m1, const Move& m2) {
  PartialGame s(t);
  s.apply(m1);
  s.apply(m2);
  // the separation check settles most openings directly
  if (distance(spanning_subgraph(t, t.all_edges_mask() & ~s.used()), m1.head, m2.head) == kUnreachable) {
    const EdgeMask rest = t.all_edges_mask() & ~s.used();
    return longest_trail_from(t, m1.head, rest) > longest_trail_from(t, m2.head, rest) ? Player::kOne
                                                                                       : Player::kTwo;
  }
  return solver.mover_wins(s) ? Player::kOne : Player::kTwo;
}

inline Player rpeg_tree(const Graph& t, const Move& m1, const Move& m2, const SolverOptions& opt = {}) {
  require_tree(t);
  PartialSolver solver(t, opt);
  return rpeg_tree(solver, t, m1, m2);
}

struct TreeOutcome {
  Outcome outcome;
  TreeAnalysis analysis;
  std::vector<Move> refuted_replies;  // P2 replies examined against the winning opening
};

/// Winner on a tree: only openings into the center are tried, and each
/// against every P2 reply.
inline TreeOutcome solve_tree_explained(const Graph& t, const SolverOptions& opt = {}) {
  require_tree(t);
  TreeOutcome out;
  out.analysis = analyze_tree(t);
  if (t.order() == 2) {
    out.outcome.winner = Player::kOne;
    out.outcome.witness = out.analysis.candidate_first_moves.front();
    return out;
  }
  if (!out.analysis.necessary_conditions_met) return out;
  PartialSolver solver(t, opt);
  for (const Move& m1 : out.analysis.candidate_first_moves) {
    PartialGame s(t);
    s.apply(m1);
    bool all = true;
    std::vector<Move> replies = s.legal_moves();
    for (const Move& m2 : replies) {
      if (rpeg_tree(solver, t, m1, m2) != Player::kOne) {
        all = false;
        break;
      }
    }
    if (all) {
      out.outcome.winner = Player::kOne;
      out.outcome.witness = m1;
      out.refuted_replies = std::move(replies);
      break;
    }
  }
  out.outcome.stats.nodes = solver.nodes();
  return out;
}

inline Outcome solve_tree(const Graph& t, const SolverOptions& opt = {}) { return solve_tree_explained(t, opt).outcome; }

}  // namespace trailtrap
