#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "trailtrap/game.hpp"
#include "trailtrap/metrics.hpp"
#include "trailtrap/symmetry.hpp"

namespace trailtrap {

struct SolverOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  int table_bits = 22;            // transposition table holds 2^table_bits entries
  bool symmetry = true;           // orbit reduction of the two opening moves
  bool degree_prune = true;       // P1 opens into a vertex of degree >= 3
  bool separation = true;         // exact cutoff once the tokens are separated
  int jobs = 1;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  double millis = 0;
};

struct Outcome {
  Player winner = Player::kTwo;
  std::optional<Move> witness;  // lowest-ranked winning first move when P1 wins
  SolveStats stats;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

template <class M>
std::uint64_t hash_mask(M m) {
  if constexpr (sizeof(M) == 16)
    return mix64(static_cast<std::uint64_t>(m) ^ mix64(static_cast<std::uint64_t>(m >> 64) + 0x9e3779b97f4a7c15ULL));
  else
    return mix64(m);
}

/// Shared node counter so one budget covers all workers.
class NodeMeter {
 public:
  explicit NodeMeter(std::uint64_t budget) : budget_(budget) {}
  void add(std::uint64_t k) {
    const auto total = count_.fetch_add(k, std::memory_order_relaxed) + k;
    if (budget_ && total > budget_) throw BudgetExceeded(total);
  }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> count_{0};
};

// Win/loss search over (used edges, mover position, other position). The
// turn is not part of the key: it is the parity of the used-edge count.
template <class M>
class Search {
 public:
  Search(const Graph& g, const SolverOptions& opt, NodeMeter& meter)
      : g_(g), opt_(opt), meter_(meter), inc_(g.order()), table_(std::size_t{1} << table_bits(g, opt)) {
    for (Vertex v = 0; v < g.order(); ++v)
      for (auto i : g.neighbors(v)) inc_[v] |= bits::bit<M>(i.edge);
    for (Vertex v = 0; v < g.order(); ++v) {
      std::vector<Incidence> list(g.neighbors(v).begin(), g.neighbors(v).end());
      // higher-degree heads first
      std::stable_sort(list.begin(), list.end(),
                       [&](Incidence a, Incidence b) { return g.degree(a.to) > g.degree(b.to); });
      order_.push_back(std::move(list));
    }
    full_ = static_cast<M>(g.all_edges_mask());
  }

  void flush() {
    if (pending_) {
      const auto k = pending_;
      pending_ = 0;
      meter_.add(k);
    }
  }

  M inc(Vertex v) const { return inc_[v]; }

  /// True iff the player to move wins. `a` is the mover's vertex and `b`
  /// the other token; -1 means that token has not been placed yet.
  bool wins(M used, Vertex a, Vertex b) {
    count();
    if (a < 0) {
      const M free = full_ & ~used;
      for (M rest = free; rest; rest &= rest - 1) {
        const int e = bits::lowest(rest);
        const Edge& ed = g_.edge(e);
        if (!wins(used | bits::bit<M>(e), b, ed.v)) return true;
        if (!wins(used | bits::bit<M>(e), b, ed.u)) return true;
      }
      return false;
    }
    if (b < 0) {
      for (auto i : order_[a]) {
        if (bits::test(used, i.edge)) continue;
        if (!wins(used | bits::bit<M>(i.edge), -1, i.to)) return true;
      }
      return false;
    }
    return wins_placed(used, a, b);
  }

  bool wins_placed(M used, Vertex a, Vertex b) {
    const M free = ~used & full_;
    const M mine = inc_[a] & free;
    if (!mine) return false;
    const M theirs = inc_[b] & free;
    // a move that leaves the opponent stuck
    if (!theirs) return true;
    if ((theirs & (theirs - 1)) == 0 && (theirs & mine)) return true;

    auto& slot = table_[index(used, a, b)];
    if (slot.used == used && slot.a == a && slot.b == b && slot.set) return slot.win;

    bool win = false;
    std::optional<bool> split;
    if (opt_.separation) split = separated_verdict(free, a, b);
    if (split) {
      win = *split;
    } else {
      for (auto i : order_[a]) {
        if (!bits::test(mine, i.edge)) continue;
        count();
        if (!wins_placed(used | bits::bit<M>(i.edge), b, i.to)) {
          win = true;
          break;
        }
      }
    }
    auto& s = table_[index(used, a, b)];
    s.used = used;
    s.a = static_cast<std::int16_t>(a);
    s.b = static_cast<std::int16_t>(b);
    s.win = win;
    s.set = true;
    return win;
  }

 private:
  // no larger than the number of distinct keys could need
  static int table_bits(const Graph& g, const SolverOptions& opt) {
    int logn = 0;
    while ((1 << logn) < g.order()) ++logn;
    return std::clamp(g.size() + 2 * logn, 10, std::max(10, opt.table_bits));
  }

  struct Entry {
    M used = 0;
    std::int16_t a = -1;
    std::int16_t b = -1;
    bool win = false;
    bool set = false;
  };

  std::size_t index(M used, Vertex a, Vertex b) const {
    const std::uint64_t h = hash_mask(used) ^ mix64((static_cast<std::uint64_t>(a) << 20) | static_cast<std::uint64_t>(b));
    return h & (table_.size() - 1);
  }

  void count() {
    if (++pending_ >= 4096) flush();
  }

  M component(M free, Vertex start) const {
    M comp = 0;
    M frontier = inc_[start] & free;
    std::uint64_t seen_small = 0;
    std::vector<char> seen;
    const bool small = g_.order() <= 64;
    if (!small) seen.assign(g_.order(), 0);
    auto mark = [&](Vertex v) {
      if (small) {
        if (seen_small >> v & 1) return false;
        seen_small |= std::uint64_t{1} << v;
        return true;
      }
      if (seen[v]) return false;
      seen[v] = 1;
      return true;
    };
    mark(start);
    while (frontier) {
      comp |= frontier;
      M next = 0;
      for (M r = frontier; r; r &= r - 1) {
        const Edge& ed = g_.edge(bits::lowest(r));
        if (mark(ed.u)) next |= inc_[ed.u];
        if (mark(ed.v)) next |= inc_[ed.v];
      }
      frontier = next & free & ~comp;
    }
    return comp;
  }

  // When the tokens sit in different components of the unused graph, each
  // player just runs their longest trail and the mover needs strictly more.
  std::optional<bool> separated_verdict(M free, Vertex a, Vertex b) {
    const M ca = component(free, a);
    if (ca & inc_[b]) return std::nullopt;
    const int na = bits::popcount(ca);
    const M cb = component(free, b);
    TrailSearch ts(g_, 0);
    const int lb = ts.run(b, static_cast<EdgeMask>(cb), 0, na);
    pending_ += ts.nodes();
    if (lb >= na) return false;
    TrailSearch ts2(g_, 0);
    const int la = ts2.run(a, static_cast<EdgeMask>(ca), 0, lb + 1);
    pending_ += ts2.nodes();
    return la > lb;
  }

  const Graph& g_;
  const SolverOptions& opt_;
  NodeMeter& meter_;
  std::vector<M> inc_;
  std::vector<std::vector<Incidence>> order_;
  M full_ = 0;
  std::vector<Entry> table_;
  std::uint64_t pending_ = 0;
};

template <class F>
auto with_mask_type(const Graph& g, F&& f) {
  if (g.size() <= 64) return f(std::uint64_t{});
  return f(EdgeMask{});
}

inline Move arc_move(const Graph& g, int arc) {
  const Edge& e = g.edge(arc / 2);
  return arc % 2 == 0 ? Move{arc / 2, e.u, e.v} : Move{arc / 2, e.v, e.u};
}

/// Arcs that are orbit representatives (smallest index in their orbit).
inline std::vector<int> representative_arcs(const Graph& g, std::span<const Vertex> fixed, EdgeMask skip) {
  auto orbit = arc_orbits(g, fixed);
  std::vector<int> out;
  for (int a = 0; a < 2 * g.size(); ++a) {
    if (bits::test(skip, a / 2)) continue;
    // the smallest arc of each orbit stands for the whole orbit
    bool smallest = true;
    for (int b = 0; b < a; ++b)
      if (orbit[b] == orbit[a] && !bits::test(skip, b / 2)) {
        smallest = false;
        break;
      }
    if (smallest) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// P1's opening moves that can contain a winning move, in rank order. Moves
/// into a vertex of degree < 3 never win; symmetric openings keep one
/// representative; on trees only the center-entering moves survive.
inline std::vector<Move> prune_first_moves(const Graph& g, const SolverOptions& opt = {}) {
  std::vector<int> arcs;
  if (opt.symmetry)
    arcs = detail::representative_arcs(g, {}, 0);
  else
    for (int a = 0; a < 2 * g.size(); ++a) arcs.push_back(a);
  std::vector<Move> out;
  std::vector<Vertex> centers;
  // with a single edge P2 has no reply at all, so nothing is pruned
  const bool prune = opt.degree_prune && g.size() >= 2;
  const bool tree = prune && is_tree(g);
  if (tree) centers = center(g);
  for (int a : arcs) {
    const Move m = detail::arc_move(g, a);
    if (prune && g.degree(m.head) < 3) continue;
    if (tree) {
      if (centers.size() == 1) {
        if (m.head != centers[0] || g.degree(m.head) != 3) continue;
      } else {
        // two centers: only c2 -> c1 with degrees (2, 3)
        const bool between = (m.head == centers[0] && m.tail == centers[1]) ||
                             (m.head == centers[1] && m.tail == centers[0]);
        if (!between || g.degree(m.head) != 3 || g.degree(m.tail) != 2) continue;
      }
    }
    out.push_back(m);
  }
  return out;
}

namespace detail {

/// P2 replies to P1's opening, reduced by the stabilizer of the opening arc.
inline std::vector<Move> reply_candidates(const Graph& g, const Move& first, bool symmetry) {
  std::vector<Move> out;
  const EdgeMask used = bits::bit<EdgeMask>(first.edge);
  if (symmetry) {
    const std::vector<Vertex> fixed{first.tail, first.head};
    for (int a : representative_arcs(g, fixed, used)) out.push_back(arc_move(g, a));
  } else {
    for (int a = 0; a < 2 * g.size(); ++a)
      if (a / 2 != first.edge) out.push_back(arc_move(g, a));
  }
  return out;
}

template <class M>
bool opening_wins(Search<M>& s, const Graph& g, const Move& first, const SolverOptions& opt) {
  const M used = bits::bit<M>(first.edge);
  for (const Move& r : reply_candidates(g, first, opt.symmetry)) {
    if (s.wins_placed(used | bits::bit<M>(r.edge), first.head, r.head)) continue;
    return false;
  }
  return true;
}

}  // namespace detail

/// Exact winner of Trail Trap on g under optimal play.
inline Outcome solve(const Graph& g, const SolverOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  detail::NodeMeter meter(opt.node_budget);
  const auto candidates = prune_first_moves(g, opt);
  std::vector<int> result(candidates.size(), -1);  // -1 unknown, 0 lose, 1 win
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{candidates.size()};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&](auto tag) {
    using M = decltype(tag);
    detail::Search<M> search(g, opt, meter);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.size() || i >= best.load()) break;
      const bool w = detail::opening_wins<M>(search, g, candidates[i], opt);
      result[i] = w;
      if (w) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
    search.flush();
  };
  auto worker = [&] {
    try {
      detail::with_mask_type(g, run);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(candidates.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (result[i] == 1) {
      out.winner = Player::kOne;
      out.witness = candidates[i];
      break;
    }
  out.stats.nodes = meter.count();
  out.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// True iff the player to move in s wins with optimal play.
inline bool solve_partial(const PartialGame& s, const SolverOptions& opt = {}, SolveStats* stats = nullptr) {
  const Graph& g = s.graph();
  if (s.move_count() == 0) {
    auto o = solve(g, opt);
    if (stats) *stats = o.stats;
    return o.winner == Player::kOne;
  }
  const auto start = std::chrono::steady_clock::now();
  detail::NodeMeter meter(opt.node_budget);
  const Player me = s.to_move();
  const Vertex a = s.position(me).value_or(-1);
  const Vertex b = s.position(opponent(me)).value_or(-1);
  const bool win = detail::with_mask_type(g, [&](auto tag) {
    using M = decltype(tag);
    detail::Search<M> search(g, opt, meter);
    const bool w = search.wins(static_cast<M>(s.used()), a, b);
    search.flush();
    return w;
  });
  if (stats) {
    stats->nodes = meter.count();
    stats->millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return win;
}

/// Solves many partial games on one graph with a shared transposition
/// table; entries stay valid across calls since keys are full states.
class PartialSolver {
 public:
  explicit PartialSolver(const Graph& g, SolverOptions opt = {})
      : g_(g), opt_(opt), meter_(opt_.node_budget) {
    if (g.size() <= 64)
      small_ = std::make_unique<detail::Search<std::uint64_t>>(g_, opt_, meter_);
    else
      large_ = std::make_unique<detail::Search<EdgeMask>>(g_, opt_, meter_);
  }

  /// True iff the player to move in s wins. s must be on this graph and have
  /// at least one move.
  bool mover_wins(const PartialGame& s) {
    if (&s.graph() != &g_) throw InputError("partial game is on a different graph");
    if (s.move_count() == 0) return solve(g_, opt_).winner == Player::kOne;
    const Player me = s.to_move();
    const Vertex a = s.position(me).value_or(-1);
    const Vertex b = s.position(opponent(me)).value_or(-1);
    bool w;
    if (small_) {
      w = small_->wins(static_cast<std::uint64_t>(s.used()), a, b);
      small_->flush();
    } else {
      w = large_->wins(s.used(), a, b);
      large_->flush();
    }
    return w;
  }

  std::uint64_t nodes() const { return meter_.count(); }

 private:
  const Graph& g_;
  SolverOptions opt_;
  detail::NodeMeter meter_;
  std::unique_ptr<detail::Search<std::uint64_t>> small_;
  std::unique_ptr<detail::Search<EdgeMask>> large_;
};

/// Lowest-ranked move that keeps a won position won; when the mover is lost,
/// the first legal move. nullopt at a terminal state.
inline std::optional<Move> best_move(const PartialGame& s, const SolverOptions& opt = {}) {
  auto moves = s.legal_moves();
  if (moves.empty()) return std::nullopt;
  std::sort(moves.begin(), moves.end(), [&](const Move& x, const Move& y) {
    return move_rank(s.graph(), x) < move_rank(s.graph(), y);
  });
  PartialGame t = s;
  for (const Move& m : moves) {
    t.apply(m);
    const bool opp = solve_partial(t, opt);
    t.undo();
    if (!opp) return m;
  }
  return moves.front();
}

/// P2-win certificate from a fixed-edge-free involution, if one is found.
struct InvolutionVerdict {
  std::optional<Involution> witness;
  bool p2_win() const { return witness.has_value(); }
};

inline InvolutionVerdict involution_verdict(const Graph& g, std::uint64_t budget = 0) {
  return {find_involution_no_fixed_edges(g, budget)};
}

/// Outcome of a disconnected graph from per-component information: P1 wins
/// iff some component H has a winning opening for P1 there whose resulting
/// game P1 wins while every other component H' has l(H') below P1's
/// guaranteed trail. Computed as: for each opening u->v in H, P2 either
/// replies in H (the game stays in H) or in another component H' and then
/// both run their longest trails.
inline Outcome analyze_disconnected(const Graph& g, const SolverOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto parts = components(g);
  std::vector<Component> nontrivial;
  for (auto& c : parts)
    if (c.graph.size() > 0) nontrivial.push_back(std::move(c));
  Outcome out;
  if (nontrivial.empty()) return out;
  std::vector<int> ell;
  for (auto& c : nontrivial) ell.push_back(longest_trail(c.graph));

  std::vector<std::pair<Move, bool>> verdicts;  // opening in parent indices
  std::uint64_t nodes = 0;
  for (std::size_t h = 0; h < nontrivial.size(); ++h) {
    const Graph& H = nontrivial[h].graph;
    int other_best = 0;
    for (std::size_t k = 0; k < nontrivial.size(); ++k)
      if (k != h) other_best = std::max(other_best, ell[k]);
    for (int arc = 0; arc < 2 * H.size(); ++arc) {
      const Move m = detail::arc_move(H, arc);
      // P2 answering in another component: P1 needs a trail from the head
      // of length > l(H') after the opening, i.e. 1 + l(H - e, head) > l(H').
      const int p1_len = 1 + longest_trail_from(H, m.head, H.all_edges_mask() & ~bits::bit<EdgeMask>(m.edge));
      bool win = p1_len > other_best;
      if (win) {
        // P2 answering inside H: the game on H with the opening fixed
        PartialGame s(H);
        s.apply(m);
        SolveStats st;
        win = !solve_partial(s, opt, &st);
        nodes += st.nodes;
      }
      const auto& map = nontrivial[h].to_parent;
      const auto pe = g.edge_between(map[m.tail], map[m.head]);
      verdicts.push_back({Move{*pe, map[m.tail], map[m.head]}, win});
    }
  }
  std::optional<Move> best;
  for (auto& [m, w] : verdicts)
    if (w && (!best || move_rank(g, m) < move_rank(g, *best))) best = m;
  if (best) {
    out.winner = Player::kOne;
    out.witness = best;
  }
  out.stats.nodes = nodes;
  out.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace trailtrap
