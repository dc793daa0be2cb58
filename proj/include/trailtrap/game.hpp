#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trailtrap/graph.hpp"

namespace trailtrap {

/// Traversal of edge `edge` from tail to head.
struct Move {
  EdgeIndex edge = 0;
  Vertex tail = 0;
  Vertex head = 0;

  Move inverse() const { return {edge, head, tail}; }
  friend bool operator==(const Move&, const Move&) = default;
};

inline Move make_move(const Graph& g, Vertex tail, Vertex head) {
  auto e = g.edge_between(tail, head);
  if (!e) throw IllegalMoveError("no edge " + g.name(tail) + "-" + g.name(head));
  return {*e, tail, head};
}

/// Total order used for deterministic witnesses: 2 * edge, +1 when the move
/// runs against the stored edge orientation.
inline int move_rank(const Graph& g, const Move& m) { return 2 * m.edge + (g.edge(m.edge).u == m.tail ? 0 : 1); }

inline std::string to_string(const Graph& g, const Move& m) { return g.name(m.tail) + "->" + g.name(m.head); }

/// An r-partial game: the move sequence so far plus derived state (used
/// edges, both token positions). The player to move is P1 iff the move count
/// is even. Tokens may share a vertex.
class PartialGame {
 public:
  explicit PartialGame(const Graph& g) : g_(&g) {}

  const Graph& graph() const { return *g_; }
  const std::vector<Move>& moves() const { return moves_; }
  int move_count() const { return static_cast<int>(moves_.size()); }
  EdgeMask used() const { return used_; }
  bool is_used(EdgeIndex e) const { return bits::test(used_, e); }

  Player to_move() const { return moves_.size() % 2 == 0 ? Player::kOne : Player::kTwo; }

  /// Head of the player's latest move, or nullopt before their first move.
  std::optional<Vertex> position(Player p) const { return p == Player::kOne ? pos1_ : pos2_; }

  /// Legal moves for the player to move.
  std::vector<Move> legal_moves() const {
    std::vector<Move> out;
    const auto at = position(to_move());
    if (!at) {
      for (EdgeIndex e = 0; e < g_->size(); ++e) {
        if (is_used(e)) continue;
        out.push_back({e, g_->edge(e).u, g_->edge(e).v});
        out.push_back({e, g_->edge(e).v, g_->edge(e).u});
      }
    } else {
      for (auto inc : g_->neighbors(*at))
        if (!is_used(inc.edge)) out.push_back({inc.edge, *at, inc.to});
    }
    return out;
  }

  bool has_legal_move() const {
    const auto at = position(to_move());
    if (!at) return used_ != g_->all_edges_mask();
    for (auto inc : g_->neighbors(*at))
      if (!is_used(inc.edge)) return true;
    return false;
  }

  /// Empty string when legal, otherwise the reason.
  std::string why_illegal(const Move& m) const {
    if (m.edge < 0 || m.edge >= g_->size()) return "edge index out of range";
    const Edge& e = g_->edge(m.edge);
    if (!((e.u == m.tail && e.v == m.head) || (e.v == m.tail && e.u == m.head)))
      return "move endpoints do not match edge " + std::to_string(m.edge);
    if (is_used(m.edge)) return "edge " + g_->name(e.u) + "-" + g_->name(e.v) + " is already used";
    const auto at = position(to_move());
    if (at && *at != m.tail)
      return to_string(to_move()) + " is at " + g_->name(*at) + ", not " + g_->name(m.tail);
    return {};
  }

  bool is_legal(const Move& m) const { return why_illegal(m).empty(); }

  void apply(const Move& m) {
    if (auto why = why_illegal(m); !why.empty()) throw IllegalMoveError("illegal move " + to_string(*g_, m) + ": " + why);
    (to_move() == Player::kOne ? pos1_ : pos2_) = m.head;
    used_ |= bits::bit<EdgeMask>(m.edge);
    moves_.push_back(m);
  }

  void undo() {
    if (moves_.empty()) throw IllegalMoveError("undo on a game with no moves");
    const Move m = moves_.back();
    moves_.pop_back();
    used_ &= ~bits::bit<EdgeMask>(m.edge);
    // the player who made m is now to move again; restore their previous head
    std::optional<Vertex> prev;
    if (moves_.size() >= 2) prev = moves_[moves_.size() - 2].head;
    (to_move() == Player::kOne ? pos1_ : pos2_) = prev;
  }

  bool is_terminal() const { return !has_legal_move(); }

  Player loser() const {
    if (!is_terminal()) throw IllegalMoveError("loser() on a non-terminal game");
    return to_move();
  }

  /// Moves made by one player, in order.
  std::vector<Move> trail_of(Player p) const {
    std::vector<Move> out;
    for (std::size_t i = p == Player::kOne ? 0 : 1; i < moves_.size(); i += 2) out.push_back(moves_[i]);
    return out;
  }

  friend bool operator==(const PartialGame& a, const PartialGame& b) {
    return a.g_ == b.g_ && a.moves_ == b.moves_ && a.used_ == b.used_ && a.pos1_ == b.pos1_ && a.pos2_ == b.pos2_;
  }

 private:
  const Graph* g_;
  std::vector<Move> moves_;
  EdgeMask used_ = 0;
  std::optional<Vertex> pos1_;
  std::optional<Vertex> pos2_;
};

inline PartialGame new_game(const Graph& g) { return PartialGame(g); }

/// Replays a move list from the empty game, validating every move.
inline PartialGame replay(const Graph& g, const std::vector<Move>& moves) {
  PartialGame s(g);
  for (const auto& m : moves) s.apply(m);
  return s;
}

/// Transcript as a JSON array of {edge, tail, head} records.
inline nlohmann::json transcript_json(const std::vector<Move>& moves) {
  auto out = nlohmann::json::array();
  for (const auto& m : moves) out.push_back({{"edge", m.edge}, {"tail", m.tail}, {"head", m.head}});
  return out;
}

inline std::vector<Move> transcript_from_json(const nlohmann::json& j) {
  std::vector<Move> out;
  for (const auto& r : j) out.push_back({r.at("edge").get<int>(), r.at("tail").get<int>(), r.at("head").get<int>()});
  return out;
}

}  // namespace trailtrap
