#pragma once

#include <algorithm>
#include <atomic>
#include <tuple>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "trailtrap/game.hpp"
#include "trailtrap/metrics.hpp"
#include "trailtrap/symmetry.hpp"

namespace trailtrap {

/// A deterministic move rule for one player. next_move sees the whole game
/// (with that player to move) and returns a move or nullopt to resign.
/// Play starts from `opening`, a fixed prefix of moves.
struct Strategy {
  std::string name;
  Player player = Player::kOne;
  std::vector<Move> opening;
  std::function<std::optional<Move>(const PartialGame&)> next_move;
  std::function<bool(const Graph&)> applies = [](const Graph&) { return true; };
};

enum class Verdict { kVerified, kCounterexample, kNotApplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kVerified: return "verified";
    case Verdict::kCounterexample: return "counterexample";
    default: return "not-applicable";
  }
}

struct VerifyResult {
  Verdict verdict = Verdict::kVerified;
  std::vector<Move> transcript;  // the losing line when a counterexample is found
  std::string reason;
  std::uint64_t playouts = 0;

  bool verified() const { return verdict == Verdict::kVerified; }
};

struct VerifyHooks {
  std::function<void(const PartialGame&)> after_strategy_move;
  std::function<void(const PartialGame&)> at_terminal;
  int jobs = 1;
};

namespace detail {

class StrategyVerifier {
 public:
  StrategyVerifier(const Strategy& s, const VerifyHooks& hooks) : s_(s), hooks_(hooks) {}

  bool run(PartialGame& g, VerifyResult& out) {
    if (g.is_terminal()) {
      ++out.playouts;
      if (hooks_.at_terminal) hooks_.at_terminal(g);
      if (g.loser() == s_.player) {
        fail(out, g, to_string(s_.player) + " has no legal move");
        return false;
      }
      return true;
    }
    if (g.to_move() == s_.player) {
      std::optional<Move> m;
      try {
        m = s_.next_move(g);
      } catch (const std::exception& e) {
        fail(out, g, std::string("strategy raised: ") + e.what());
        return false;
      }
      if (!m) {
        fail(out, g, "strategy resigned");
        return false;
      }
      if (auto why = g.why_illegal(*m); !why.empty()) {
        fail(out, g, "strategy chose illegal move " + to_string(g.graph(), *m) + ": " + why);
        return false;
      }
      g.apply(*m);
      if (hooks_.after_strategy_move) hooks_.after_strategy_move(g);
      const bool ok = run(g, out);
      g.undo();
      return ok;
    }
    for (const Move& m : g.legal_moves()) {
      g.apply(m);
      const bool ok = run(g, out);
      g.undo();
      if (!ok) return false;
    }
    return true;
  }

 private:
  static void fail(VerifyResult& out, const PartialGame& g, std::string why) {
    out.verdict = Verdict::kCounterexample;
    out.transcript = g.moves();
    out.reason = std::move(why);
  }

  const Strategy& s_;
  const VerifyHooks& hooks_;
};

}  // namespace detail

/// Plays the strategy against every adversary move sequence.
inline VerifyResult verify_strategy(const Graph& g, const Strategy& s, const VerifyHooks& hooks = {}) {
  VerifyResult out;
  if (!s.applies(g)) {
    out.verdict = Verdict::kNotApplicable;
    out.reason = s.name + " does not apply to this graph";
    return out;
  }
  PartialGame start = replay(g, s.opening);
  if (hooks.jobs <= 1 || start.to_move() == s.player || start.is_terminal()) {
    detail::StrategyVerifier v(s, hooks);
    v.run(start, out);
    return out;
  }
  // split the adversary's first choices across workers
  const auto first = start.legal_moves();
  std::vector<VerifyResult> parts(first.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= first.size()) return;
      PartialGame local = start;
      local.apply(first[i]);
      detail::StrategyVerifier v(s, hooks);
      v.run(local, parts[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < hooks.jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& p : parts) {
    out.playouts += p.playouts;
    if (!p.verified() && out.verified()) {
      out.verdict = p.verdict;
      out.transcript = p.transcript;
      out.reason = p.reason;
    }
  }
  return out;
}

/// Random adversary playouts; stops at the first loss or illegal move.
inline VerifyResult random_playouts(const Graph& g, const Strategy& s, int count, std::uint64_t seed) {
  VerifyResult out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    PartialGame game = replay(g, s.opening);
    for (;;) {
      if (game.is_terminal()) {
        ++out.playouts;
        if (game.loser() == s.player) {
          out.verdict = Verdict::kCounterexample;
          out.transcript = game.moves();
          out.reason = to_string(s.player) + " has no legal move";
          return out;
        }
        break;
      }
      if (game.to_move() == s.player) {
        auto m = s.next_move(game);
        if (!m || !game.is_legal(*m)) {
          out.verdict = Verdict::kCounterexample;
          out.transcript = game.moves();
          out.reason = m ? "illegal move " + to_string(g, *m) : "strategy resigned";
          return out;
        }
        game.apply(*m);
      } else {
        auto moves = game.legal_moves();
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        game.apply(moves[pick(rng)]);
      }
    }
  }
  return out;
}

namespace detail {

inline Move mirror(const Graph& g, const std::vector<Vertex>& phi, const Move& m) {
  const Vertex t = phi[m.tail], h = phi[m.head];
  const auto e = g.edge_between(t, h);
  if (!e) throw IllegalMoveError("mirror image of " + to_string(g, m) + " is not an edge");
  return {*e, t, h};
}

inline std::optional<Move> lowest_legal(const PartialGame& s) {
  auto moves = s.legal_moves();
  if (moves.empty()) return std::nullopt;
  return *std::min_element(moves.begin(), moves.end(), [&](const Move& a, const Move& b) {
    return move_rank(s.graph(), a) < move_rank(s.graph(), b);
  });
}

}  // namespace detail

/// Mirror strategy for P2 through a fixed-edge-free involution.
inline Strategy copycat_strategy(const Graph& g, const Involution& phi) {
  if (!is_fixed_edge_free_involution(g, phi.perm))
    throw InputError("copycat needs an involutive automorphism with no fixed edges");
  Strategy s;
  s.name = "copycat";
  s.player = Player::kTwo;
  s.next_move = [perm = phi.perm](const PartialGame& game) -> std::optional<Move> {
    return detail::mirror(game.graph(), perm, game.moves().back());
  };
  s.applies = [perm = phi.perm](const Graph& h) { return is_fixed_edge_free_involution(h, perm); };
  return s;
}

/// Copycat from the mid-game position `opening`: the player who is not to
/// move mirrors through phi, which must be a fixed-edge-free involution of
/// the unused subgraph minus `ignored`, sending the previous mover's head to
/// the last head. A move on an ignored edge is answered by the lowest legal
/// move.
inline Strategy partial_copycat_strategy(const Graph& g, const std::vector<Move>& opening,
                                         const std::vector<Vertex>& phi, EdgeMask ignored = 0) {
  const PartialGame s0 = replay(g, opening);
  if (s0.move_count() < 2) throw InputError("partial copycat needs at least two opening moves");
  const Graph rest = spanning_subgraph(g, g.all_edges_mask() & ~s0.used() & ~ignored);
  if (!is_fixed_edge_free_involution(rest, phi))
    throw InputError("phi is not a fixed-edge-free involution of the unused subgraph");
  const Vertex v1 = opening[opening.size() - 2].head, v2 = opening.back().head;
  if (phi[v1] != v2) throw InputError("phi does not send the previous head to the last head");
  Strategy s;
  s.name = "partial-copycat";
  s.player = opponent(s0.to_move());
  s.opening = opening;
  s.next_move = [phi, ignored](const PartialGame& game) -> std::optional<Move> {
    const Move last = game.moves().back();
    if (bits::test(ignored, last.edge)) {
      const auto moves = game.legal_moves();
      if (moves.empty()) return std::nullopt;
      return moves.front();
    }
    return detail::mirror(game.graph(), phi, last);
  };
  return s;
}

/// P2 on the prism C_n x K_2. Even n: mirror through the half-turn. Odd n:
/// mirror through u_{c+i} <-> v_{c-i}, where c is the lowest column that
/// P1's opening does not touch; if P1 ever takes the fixed rung u_c v_c,
/// P2 takes the last edge at its own vertex.
inline Strategy prism_p2_strategy(int n) {
  if (n < 3) throw InputError("prism needs n >= 3");
  generators::PrismCoords pc{n};
  Strategy s;
  s.name = "prism-mirror";
  s.player = Player::kTwo;
  s.applies = [n](const Graph& g) { return g.order() == 2 * n && g.size() == 3 * n && is_regular(g, 3); };
  if (n % 2 == 0) {
    std::vector<Vertex> phi(2 * n);
    for (int i = 0; i < n; ++i) {
      phi[pc.u(i)] = pc.u(i + n / 2);
      phi[pc.v(i)] = pc.v(i + n / 2);
    }
    s.next_move = [phi](const PartialGame& game) -> std::optional<Move> {
      return detail::mirror(game.graph(), phi, game.moves().back());
    };
    return s;
  }
  s.next_move = [pc, n](const PartialGame& game) -> std::optional<Move> {
    const Move& first = game.moves().front();
    const int a = pc.column(first.tail), b = pc.column(first.head);
    int c = 0;
    while (c == a || c == b) ++c;
    std::vector<Vertex> phi(2 * n);
    for (int i = 0; i < n; ++i) {
      phi[pc.u(c + i)] = pc.v(c - i);
      phi[pc.v(c - i)] = pc.u(c + i);
    }
    const Move& last = game.moves().back();
    const Edge rung{pc.u(c), pc.v(c)};
    if (game.graph().edge(last.edge).touches(rung.u) && game.graph().edge(last.edge).touches(rung.v))
      return detail::lowest_legal(game);
    return detail::mirror(game.graph(), phi, last);
  };
  return s;
}

namespace detail {

// Takes the next unused step of a planned vertex path from P1's current
// vertex; any legal move when the plan is blocked.
inline std::optional<Move> follow_plan(const PartialGame& game, const std::vector<Vertex>& plan) {
  const Vertex at = *game.position(game.to_move());
  for (std::size_t i = 0; i + 1 < plan.size(); ++i) {
    if (plan[i] != at) continue;
    if (auto e = game.graph().edge_between(plan[i + 1], at); e && !game.is_used(*e)) return Move{*e, at, plan[i + 1]};
  }
  return lowest_legal(game);
}

}  // namespace detail

/// P1 on the ladder P_2 x P_n for odd n >= 5: open u0 -> v0 and answer P2's
/// first move per the case table (block, two involutions, chase, zigzag,
/// loop, blocking). P2's move is first reflected to nonnegative columns.
inline Strategy grid_p1_strategy(int n) {
  if (n % 2 == 0 || n <= 3) throw InputError("grid strategy needs odd n > 3");
  const generators::Ladder lad{n};
  const int k = lad.k();
  Strategy s;
  s.name = "grid-table";
  s.player = Player::kOne;
  s.applies = [n](const Graph& g) { return g.order() == 2 * n && g.size() == 3 * n - 2; };

  s.next_move = [lad, k](const PartialGame& game) -> std::optional<Move> {
    const Graph& g = game.graph();
    if (game.move_count() == 0) return make_move(g, lad.u(0), lad.v(0));

    // reflect so that P2's opening sits in nonnegative columns
    const Move& p2first = game.moves()[1];
    const bool flip = lad.column(p2first.tail) < 0 || lad.column(p2first.head) < 0;
    auto refl = [&](Vertex w) {
      if (!flip) return w;
      return lad.on_u(w) ? lad.u(-lad.column(w)) : lad.v(-lad.column(w));
    };
    auto U = [&](int i) { return refl(lad.u(i)); };
    auto V = [&](int i) { return refl(lad.v(i)); };
    auto is = [&](const Move& m, Vertex t, Vertex h) { return m.tail == t && m.head == h; };
    auto involution = [&](bool rotate) {
      std::vector<Vertex> phi(2 * lad.n);
      for (int x = -k; x <= k; ++x) {
        if (rotate) {
          phi[U(-x)] = V(x);
          phi[V(-x)] = U(x);
        } else {
          phi[U(-x)] = U(x);
          phi[V(-x)] = V(x);
        }
      }
      return phi;
    };
    auto mirror_or_any = [&](const std::vector<Vertex>& phi) -> std::optional<Move> {
      const Move m = detail::mirror(g, phi, game.moves().back());
      if (game.is_legal(m)) return m;
      return detail::lowest_legal(game);
    };
    auto zigzag = [&] {
      std::vector<Vertex> plan{V(0)};
      for (int j = 1; j <= k; ++j) {
        // odd columns are entered on the v row, even columns on the u row
        const bool on_v = j % 2 == 1;
        plan.push_back(on_v ? V(-j) : U(-j));
        plan.push_back(on_v ? U(-j) : V(-j));
      }
      const Vertex last = plan.back();
      plan.push_back(last == U(-k) ? U(-k + 1) : V(-k + 1));
      return plan;
    };
    auto blocking = [&] {
      std::vector<Vertex> plan{V(0), V(1), U(1), U(0)};
      for (int j = 1; j <= k; ++j) {
        const bool on_u = j % 2 == 1;
        plan.push_back(on_u ? U(-j) : V(-j));
        plan.push_back(on_u ? V(-j) : U(-j));
      }
      const Vertex last = plan.back();
      plan.push_back(last == U(-k) ? U(-k + 1) : V(-k + 1));
      return plan;
    };
    auto chase = [&] {
      std::vector<Vertex> plan;
      for (int j = 0; j <= k; ++j) plan.push_back(V(-j));
      for (int j = k; j >= 0; --j) plan.push_back(U(-j));
      return plan;
    };

    const Move& m2 = p2first;
    const bool second_move = game.move_count() == 2;

    // (viii) blocking: P2 opens far enough right
    const int ht = lad.column(refl(m2.head));
    const bool head_on_u = lad.on_u(refl(m2.head));
    const bool blocking_case = is(m2, U(1), U(2)) || is(m2, U(2), U(3)) || (head_on_u && ht >= 4) ||
                               (!head_on_u && ht >= 3);
    if (blocking_case) return detail::follow_plan(game, blocking());

    if (second_move) return make_move(g, V(0), V(-1));

    if (is(m2, V(1), V(0))) return detail::lowest_legal(game);             // (i)
    if (is(m2, U(0), U(1))) return mirror_or_any(involution(true));        // (ii)
    if (is(m2, V(0), V(1)) || is(m2, U(1), V(1))) return mirror_or_any(involution(false));  // (iii), (v)
    if (is(m2, U(1), U(0))) return detail::follow_plan(game, chase());     // (iv)
    if (is(m2, V(2), U(2))) {                                              // (vii)
      const auto p2 = game.trail_of(Player::kTwo);
      if (p2.size() < 2 || is(p2[1], U(2), U(1))) return detail::follow_plan(game, zigzag());
      // loop: P2 runs right along the u row, drops to v at column a, then
      // turns one way or the other
      std::size_t drop = 0;
      for (std::size_t i = 1; i < p2.size(); ++i)
        if (!lad.on_u(refl(p2[i].head))) {
          drop = i;
          break;
        }
      int turn = 0;
      if (drop && drop + 1 < p2.size()) turn = lad.column(refl(p2[drop + 1].head)) - lad.column(refl(p2[drop].head));
      const int a = drop ? lad.column(refl(p2[drop].head)) : k;
      const int t = turn > 0 ? k : a;
      std::vector<Vertex> plan;
      if (turn == 0) {
        for (int j = 0; j <= k; ++j) plan.push_back(V(-j));
      } else {
        for (int j = 0; j <= t; ++j) plan.push_back(V(-j));
        for (int j = t; j >= 0; --j) plan.push_back(U(-j));
      }
      return detail::follow_plan(game, plan);
    }
    return detail::follow_plan(game, zigzag());  // (vi)
  };
  return s;
}

/// P1 on K_{3,q}, q odd >= 13: open u1 -> v1; entering R prefer finishing a
/// vertex with two unused edges, else a fresh vertex; entering L prefer the
/// vertex visited least. Immediate wins are always taken.
inline Strategy k3q_p1_strategy(int q) {
  if (q < 13 || q % 2 == 0) throw InputError("k3q strategy needs odd q >= 13");
  Strategy s;
  s.name = "k3q-fresh";
  s.player = Player::kOne;
  s.applies = [q](const Graph& g) { return g.order() == 3 + q && g.size() == 3 * q; };
  s.next_move = [](const PartialGame& game) -> std::optional<Move> {
    const Graph& g = game.graph();
    if (game.move_count() == 0) return make_move(g, 0, 3);
    auto moves = game.legal_moves();
    if (moves.empty()) return std::nullopt;
    const Vertex me = *game.position(Player::kOne);
    const Vertex them = *game.position(Player::kTwo);
    auto unused_at = [&](Vertex w, EdgeMask extra) {
      int c = 0;
      for (auto inc : g.neighbors(w))
        if (!game.is_used(inc.edge) && !bits::test(extra, inc.edge)) ++c;
      return c;
    };
    // immediate win: P2 has nothing left after this move
    for (const Move& m : moves)
      if (unused_at(them, bits::bit<EdgeMask>(m.edge)) == 0) return m;

    // safe: after the move and any P2 reply, P1 still has a move
    auto safe = [&](const Move& m) {
      const EdgeMask after = bits::bit<EdgeMask>(m.edge);
      const int left = unused_at(m.head, after);
      if (left == 0) return false;
      if (left >= 2) return true;
      // one edge left at the head: P2 must not be able to take it
      if (m.head == them) return false;
      for (auto inc : g.neighbors(m.head))
        if (!game.is_used(inc.edge) && !bits::test(after, inc.edge)) return inc.to != them;
      return true;
    };
    std::vector<Move> ok;
    for (const Move& m : moves)
      if (safe(m)) ok.push_back(m);
    if (ok.empty()) ok = moves;

    const bool into_r = me < 3;
    std::vector<int> visits(g.order(), 0);
    visits[game.moves().front().tail] = 1;
    for (const Move& m : game.trail_of(Player::kOne)) ++visits[m.head];
    auto key = [&](const Move& m) {
      const int u = unused_at(m.head, 0);
      if (into_r) return std::make_tuple(u == 2 ? 0 : (u == 3 ? 1 : 2), -u, m.head);
      return std::make_tuple(visits[m.head], -u, -m.head);
    };
    return *std::min_element(ok.begin(), ok.end(), [&](const Move& a, const Move& b) { return key(a) < key(b); });
  };
  return s;
}

}  // namespace trailtrap
