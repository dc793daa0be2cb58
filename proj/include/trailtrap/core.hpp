#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace trailtrap {

using Vertex = int;
using EdgeIndex = int;

/// 128-bit set of edge indices. Graphs are capped at 128 edges so that every
/// game state fits in one register pair.
using EdgeMask = unsigned __int128;

inline constexpr int kMaxEdges = 128;

enum class Player : std::uint8_t { kOne = 1, kTwo = 2 };

constexpr Player opponent(Player p) { return p == Player::kOne ? Player::kTwo : Player::kOne; }

inline std::string to_string(Player p) { return p == Player::kOne ? "P1" : "P2"; }

/// Malformed or out-of-range input (bad vertex, self-loop, oversized graph...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rule of the game was violated (illegal move, undo on an empty game...).
class IllegalMoveError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured node budget ran out before an answer was found.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t nodes)
      : std::runtime_error("node budget exceeded after " + std::to_string(nodes) + " nodes"),
        nodes_(nodes) {}
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t nodes_;
};

namespace bits {

template <class M>
constexpr M bit(int i) {
  return M{1} << i;
}

template <class M>
constexpr int popcount(M m) {
  if constexpr (sizeof(M) == 16) {
    return std::popcount(static_cast<std::uint64_t>(m)) +
           std::popcount(static_cast<std::uint64_t>(m >> 64));
  } else {
    return std::popcount(m);
  }
}

/// Index of the lowest set bit; m must be nonzero.
template <class M>
constexpr int lowest(M m) {
  if constexpr (sizeof(M) == 16) {
    auto lo = static_cast<std::uint64_t>(m);
    return lo ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(m >> 64));
  } else {
    return std::countr_zero(m);
  }
}

template <class M>
constexpr bool test(M m, int i) {
  return ((m >> i) & 1) != 0;
}

/// Calls f(i) for every set bit i in ascending order.
template <class M, class F>
constexpr void for_each(M m, F&& f) {
  while (m) {
    f(lowest(m));
    m &= m - 1;
  }
}

}  // namespace bits

}  // namespace trailtrap
