#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "trailtrap/census.hpp"
#include "trailtrap/solver.hpp"

using namespace trailtrap;

namespace {

std::vector<Graph> small_connected(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& g : enumerate_connected_brute(n)) out.push_back(std::move(g));
  return out;
}

std::vector<SolverOptions> option_matrix() {
  std::vector<SolverOptions> out;
  for (int mask = 0; mask < 8; ++mask) {
    SolverOptions o;
    o.symmetry = mask & 1;
    o.degree_prune = mask & 2;
    o.separation = mask & 4;
    out.push_back(o);
  }
  return out;
}

Graph spider_plus_path() {
  return Graph(15, {{11, 2}, {2, 1}, {1, 0}, {0, 5}, {5, 6}, {6, 13}, {0, 3}, {3, 4}, {4, 12},
                    {7, 8}, {8, 9}, {9, 10}, {10, 14}});
}

Player winner(bool p1) { return p1 ? Player::kOne : Player::kTwo; }

}  // namespace

TEST(Solver, TrivialGraphs) {
  EXPECT_EQ(solve(Graph(3, {})).winner, Player::kTwo);
  EXPECT_EQ(solve(Graph(2, {{0, 1}})).winner, Player::kOne);
  EXPECT_EQ(solve(generators::path(3)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::cycle(7)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::path(9)).winner, Player::kTwo);
}

TEST(Solver, AgreesWithPlainMinimaxOnSmallConnectedGraphs) {
  const auto graphs = small_connected(5);
  ASSERT_EQ(graphs.size(), 1u + 1 + 2 + 6 + 21);
  for (const auto& g : graphs) {
    const Player expect = winner(oracle::p1_wins(g));
    for (const auto& o : option_matrix())
      ASSERT_EQ(solve(g, o).winner, expect) << to_graph6(g) << " sym=" << o.symmetry << " prune=" << o.degree_prune
                                            << " sep=" << o.separation;
  }
}

TEST(Solver, AgreesWithPlainMinimaxOnRandomSparseGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 4 == 0 && e.size() < 9) e.emplace_back(a, b);
    const Graph g(n, e);
    ASSERT_EQ(solve(g).winner, winner(oracle::p1_wins(g))) << to_graph6(g);
  }
}

TEST(Solver, CompleteGraphs) {
  EXPECT_EQ(solve(generators::complete(4)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::complete(5)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::complete(6)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::complete(7)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::complete(8)).winner, Player::kTwo);
}

TEST(Solver, BipartiteGridPrismFamilies) {
  for (int q = 1; q <= 5; ++q) EXPECT_EQ(solve(generators::complete_bipartite(2, q)).winner, Player::kTwo) << q;
  EXPECT_EQ(solve(generators::complete_bipartite(3, 3)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::complete_bipartite(3, 5)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::complete_bipartite(3, 7)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::grid(2, 3)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::grid(2, 4)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::grid(3, 3)).winner, Player::kTwo);
  EXPECT_EQ(solve(generators::grid(2, 5)).winner, Player::kOne);
  EXPECT_EQ(solve(generators::grid(2, 7)).winner, Player::kOne);
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(solve(generators::prism(n)).winner, Player::kTwo) << n;
}

TEST(Solver, WitnessIsLowestRankedWinningOpening) {
  const Graph g = generators::grid(2, 5);
  const Outcome o = solve(g);
  ASSERT_TRUE(o.witness);
  EXPECT_EQ(to_string(g, *o.witness), "u0->v0");
  SolverOptions plain;
  plain.symmetry = false;
  plain.degree_prune = false;
  const Outcome p = solve(g, plain);
  EXPECT_EQ(p.witness, o.witness);
}

TEST(Solver, WitnessSoundness) {
  for (const auto& g : small_connected(6)) {
    const Outcome o = solve(g);
    if (o.winner != Player::kOne) {
      EXPECT_FALSE(o.witness);
      continue;
    }
    ASSERT_TRUE(o.witness);
    PartialGame s(g);
    s.apply(*o.witness);
    ASSERT_FALSE(solve_partial(s)) << to_graph6(g);
  }
}

TEST(Solver, WinningOpeningsEnterDegreeThree) {
  SolverOptions plain;
  plain.symmetry = false;
  plain.degree_prune = false;
  for (const auto& g : small_connected(6)) {
    if (g.size() < 2) continue;
    PartialGame s(g);
    for (const Move& m : s.legal_moves()) {
      s.apply(m);
      const bool p1_wins_after = !solve_partial(s, plain);
      s.undo();
      if (p1_wins_after) {
        ASSERT_GE(g.degree(m.head), 3) << to_graph6(g);
      }
    }
  }
}

TEST(Solver, IsomorphismInvariance) {
  std::mt19937_64 rng(5);
  const auto graphs = small_connected(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph& g = graphs[rng() % graphs.size()];
    const Graph h = permute(g, oracle::random_permutation(g.order(), rng));
    ASSERT_EQ(solve(g).winner, solve(h).winner) << to_graph6(g);
  }
  std::mt19937_64 rng2(6);
  const Graph g = generators::grid(2, 5);
  for (int trial = 0; trial < 5; ++trial)
    EXPECT_EQ(solve(permute(g, oracle::random_permutation(g.order(), rng2))).winner, Player::kOne);
}

TEST(Solver, ParallelMatchesSerial) {
  SolverOptions par;
  par.jobs = 3;
  for (const auto& g : {generators::complete(6), generators::complete(7), generators::grid(2, 5),
                        generators::complete_bipartite(3, 5), generators::prism(5)}) {
    const Outcome a = solve(g), b = solve(g, par);
    EXPECT_EQ(a.winner, b.winner);
    EXPECT_EQ(a.witness, b.witness);
  }
}

TEST(Solver, BudgetExceededIsDistinct) {
  SolverOptions tight;
  tight.node_budget = 10;
  EXPECT_THROW(solve(generators::complete(7), tight), BudgetExceeded);
  tight.node_budget = 1000000000;
  EXPECT_EQ(solve(generators::complete(4), tight).winner, Player::kOne);
}

TEST(Solver, MaskWidthAbove64Edges) {
  const Graph big = disjoint_union(generators::complete(4), generators::star(64));
  ASSERT_GT(big.size(), 64);
  EXPECT_EQ(solve(big).winner, analyze_disconnected(big).winner);
  EXPECT_EQ(solve(generators::star(70)).winner, Player::kTwo);
}

TEST(SolvePartial, AgreesWithMinimaxOnMidgames) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = trial % 2 ? generators::complete(5) : generators::prism(3);
    PartialGame s(g);
    const int plies = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < plies && !s.is_terminal(); ++i) {
      auto moves = s.legal_moves();
      s.apply(moves[rng() % moves.size()]);
    }
    oracle::Naive naive(g);
    for (const Move& m : s.moves()) naive.used[m.edge] = 1;
    const int me = s.position(s.to_move()).value_or(-1);
    const int them = s.position(opponent(s.to_move())).value_or(-1);
    ASSERT_EQ(solve_partial(s), naive.mover_wins(me, them));
  }
}

TEST(BestMove, KeepsWonPositionsWon) {
  const Graph g = generators::complete(4);
  PartialGame s(g);
  while (!s.is_terminal()) {
    const bool was_winning = solve_partial(s);
    const Move m = *best_move(s);
    s.apply(m);
    if (was_winning) {
      ASSERT_FALSE(solve_partial(s));
    }
  }
  EXPECT_EQ(s.loser(), Player::kTwo);
}

TEST(Involution, VerdictNeverContradictsSolve) {
  EXPECT_TRUE(involution_verdict(generators::grid(3, 3)).p2_win());
  EXPECT_TRUE(involution_verdict(generators::prism(4)).p2_win());
  EXPECT_FALSE(involution_verdict(generators::complete(4)).p2_win());
  for (const auto& g : small_connected(6))
    if (involution_verdict(g).p2_win()) {
      ASSERT_EQ(solve(g).winner, Player::kTwo) << to_graph6(g);
    }
}

TEST(Disconnected, SpiderPlusPathIsSecondPlayerWin) {
  const Graph g = spider_plus_path();
  EXPECT_EQ(component_count(g), 2);
  const auto cs = components(g);
  // the spider side alone is a first-player win with the longer trail
  const Graph& spider = cs[0].graph.order() == 10 ? cs[0].graph : cs[1].graph;
  EXPECT_EQ(solve(spider).winner, Player::kOne);
  EXPECT_EQ(longest_trail(spider), 6);
  EXPECT_EQ(analyze_disconnected(g).winner, Player::kTwo);
  EXPECT_EQ(solve(g).winner, Player::kTwo);
}

TEST(Disconnected, TwoCopiesAreSecondPlayerWin) {
  for (const auto& g : {generators::complete(4), generators::star(3), generators::grid(2, 5)}) {
    const Graph two = disjoint_union(g, g);
    EXPECT_EQ(analyze_disconnected(two).winner, Player::kTwo);
  }
}

TEST(Disconnected, RandomUnionsAgreeWithSolve) {
  const auto pool = small_connected(6);
  std::mt19937_64 rng(8);
  int p1 = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph& a = pool[rng() % pool.size()];
    const Graph& b = pool[rng() % pool.size()];
    const Graph u = disjoint_union(a, b);
    const Outcome x = analyze_disconnected(u), y = solve(u);
    ASSERT_EQ(x.winner, y.winner) << to_graph6(a) << " + " << to_graph6(b);
    p1 += x.winner == Player::kOne;
  }
  EXPECT_GT(p1, 0);
}
