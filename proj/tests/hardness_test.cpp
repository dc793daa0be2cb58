#include <gtest/gtest.h>

#include "trailtrap/hardness.hpp"

using namespace trailtrap;

namespace {

// hub 0 bridged to three five-vertex blobs
Graph three_blob_cubic() {
  const std::vector<std::pair<int, int>> blob{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int k = 0; k < 3; ++k) {
    for (auto [a, b] : blob) e.emplace_back(1 + 5 * k + a, 1 + 5 * k + b);
    e.emplace_back(0, 1 + 5 * k);
  }
  return Graph(16, e);
}

}  // namespace

TEST(Thm55Graph, StructureOnCube) {
  const Graph q3 = generators::hypercube(3);
  const Thm55Graph t = build_thm55_graph(q3, 0);
  EXPECT_EQ(t.graph.order(), 28);
  EXPECT_EQ(t.graph.size(), 32);
  EXPECT_TRUE(is_bipartite(t.graph));
  EXPECT_EQ(t.graph.max_degree(), 4);
  EXPECT_EQ(t.graph.degree(t.c), 3);
  EXPECT_EQ(t.graph.degree(t.u), 2);
  EXPECT_TRUE(is_connected(t.graph));
  // c splits the path into two halves of n + 1 edges
  EXPECT_EQ(distance(t.graph, t.path_start, t.c), q3.order() + 1);
  EXPECT_EQ(distance(t.graph, t.c, t.path_start + 2 * q3.order() + 2), q3.order() + 1);
}

TEST(Thm55Graph, RejectsBadHosts) {
  EXPECT_THROW(build_thm55_graph(generators::cycle(6), 0), InputError);
  EXPECT_THROW(build_thm55_graph(generators::complete(4), 0), InputError);
  EXPECT_NO_THROW(build_thm55_graph(generators::complete(4), 0, false));
  EXPECT_THROW(build_pendant_graph(generators::complete(4), 9), InputError);
}

TEST(Thm55Graph, PendantGraph) {
  const Graph h = build_pendant_graph(generators::hypercube(3), 2);
  EXPECT_EQ(h.order(), 9);
  EXPECT_EQ(h.degree(8), 1);
  EXPECT_EQ(h.degree(2), 4);
}

TEST(Gadget, StructureOnCube) {
  const Graph q3 = generators::hypercube(3);
  const auto e = q3.edge(0);
  const GadgetReplacement gr = build_fig11_gadget(q3, e.u, e.v);
  EXPECT_EQ(gr.result.order(), 42);
  EXPECT_EQ(gr.result.size(), 63);
  EXPECT_TRUE(is_regular(gr.result, 3));
  EXPECT_TRUE(is_bipartite(gr.result));
  EXPECT_TRUE(is_connected(gr.result));
  EXPECT_FALSE(gr.result.adjacent(e.u, e.v));
  EXPECT_TRUE(gr.result.adjacent(gr.anchor_map.at("u"), gr.anchor_map.at("g1A")));
}

TEST(Gadget, HighlightedTrail) {
  const Graph q3 = generators::hypercube(3);
  const auto e = q3.edge(0);
  const GadgetReplacement gr = build_fig11_gadget(q3, e.u, e.v);
  ASSERT_TRUE(hamiltonian_cycle_through(q3, e.u, e.v));
  const auto walk = highlighted_trail(gr);
  ASSERT_TRUE(walk);
  EXPECT_EQ(walk->size(), 44u);
  EXPECT_TRUE(is_trail(gr.result, *walk));
  EXPECT_EQ(walk->front(), gr.anchor_map.at("x"));
  EXPECT_TRUE(has_trail_from(gr.result, gr.anchor_map.at("x"), 43));
  const auto hp = hamiltonian_path(gr.result, gr.anchor_map.at("x'"), gr.anchor_map.at("y'"));
  ASSERT_TRUE(hp);
  EXPECT_EQ(static_cast<int>(hp->size()), gr.result.order());
}

TEST(Gadget, RejectsBadInput) {
  const Graph q3 = generators::hypercube(3);
  EXPECT_THROW(build_fig11_gadget(generators::complete(4), 0, 1), InputError);
  EXPECT_THROW(build_fig11_gadget(generators::prism(3), 0, 1), InputError);
  Vertex far = 1;
  while (q3.adjacent(0, far) || far == 0) ++far;
  EXPECT_THROW(build_fig11_gadget(q3, 0, far), InputError);
}

TEST(HamiltonianHelpers, SmallGraphs) {
  EXPECT_TRUE(hamiltonian_path(generators::path(5), 0, 4));
  EXPECT_FALSE(hamiltonian_path(generators::path(5), 0, 3));
  EXPECT_FALSE(hamiltonian_path(generators::star(3), 1, 2));
  EXPECT_TRUE(hamiltonian_cycle_through(generators::cycle(6), 0, 1));
  EXPECT_FALSE(is_trail(generators::path(3), {0, 1, 0}));
  EXPECT_TRUE(is_trail(generators::cycle(3), {0, 1, 2, 0}));
}

TEST(Reduction, EquivalenceOnCube) {
  const ReductionReport r = check_reduction_equivalence(generators::hypercube(3), 0);
  EXPECT_TRUE(r.trail_side);
  ASSERT_TRUE(r.p2_wins);
  EXPECT_TRUE(*r.p2_wins);
  EXPECT_TRUE(r.agree());
}

TEST(Reduction, NegativeControlWithoutLongTrail) {
  // the trail side fails here, and so does the P2 win
  const Graph g = three_blob_cubic();
  ASSERT_TRUE(is_regular(g, 3));
  ASSERT_FALSE(is_bipartite(g));
  const ReductionReport r = check_reduction_equivalence(g, 0, {}, false);
  EXPECT_FALSE(r.trail_side);
  ASSERT_TRUE(r.p2_wins);
  EXPECT_FALSE(*r.p2_wins);
  EXPECT_TRUE(r.agree());
}

TEST(Reduction, BudgetLeavesVerdictUnset) {
  SolverOptions tight;
  tight.node_budget = 5;
  const ReductionReport r = check_reduction_equivalence(generators::hypercube(3), 0, tight);
  EXPECT_FALSE(r.p2_wins);
  EXPECT_FALSE(r.agree());
}
