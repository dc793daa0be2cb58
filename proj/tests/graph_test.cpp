#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "trailtrap/graph_io.hpp"
#include "trailtrap/metrics.hpp"
#include "trailtrap/symmetry.hpp"

using namespace trailtrap;

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 3}}), InputError);
  std::vector<std::pair<Vertex, Vertex>> many;
  for (int a = 0; a < 17; ++a)
    for (int b = a + 1; b < 17; ++b) many.emplace_back(a, b);
  EXPECT_THROW(Graph(17, many), InputError);  // 136 edges
}

TEST(Graph, NeighborsAreSorted) {
  Graph g(4, {{0, 3}, {0, 1}, {0, 2}});
  std::vector<Vertex> seen;
  for (auto inc : g.neighbors(0)) seen.push_back(inc.to);
  EXPECT_EQ(seen, (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(g.degree(0), 3);
  EXPECT_TRUE(g.adjacent(3, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
}

TEST(Generators, FamilySizes) {
  EXPECT_EQ(generators::complete(6).size(), 15);
  EXPECT_EQ(generators::complete_bipartite(3, 5).size(), 15);
  EXPECT_EQ(generators::complete_bipartite(3, 5).order(), 8);
  EXPECT_EQ(generators::path(9).size(), 8);
  EXPECT_EQ(generators::cycle(6).size(), 6);
  EXPECT_EQ(generators::star(3).order(), 4);

  const Graph lad = generators::grid(2, 7);
  EXPECT_EQ(lad.order(), 14);
  EXPECT_EQ(lad.size(), 3 * 7 - 2);
  generators::Ladder L{7};
  EXPECT_TRUE(lad.adjacent(L.u(0), L.v(0)));
  EXPECT_TRUE(lad.adjacent(L.u(-3), L.u(-2)));
  EXPECT_EQ(lad.name(L.u(-1)), "u-1");
  EXPECT_EQ(lad.find("v2"), L.v(2));

  const Graph p = generators::prism(5);
  EXPECT_TRUE(is_regular(p, 3));
  EXPECT_EQ(p.size(), 15);
  generators::PrismCoords pc{5};
  EXPECT_TRUE(p.adjacent(pc.u(4), pc.u(0)));
  EXPECT_TRUE(p.adjacent(pc.v(4), pc.v(0)));

  const Graph q3 = generators::hypercube(3);
  EXPECT_EQ(q3.order(), 8);
  EXPECT_EQ(q3.size(), 12);
  EXPECT_TRUE(is_regular(q3, 3));
  EXPECT_TRUE(is_bipartite(q3));

  EXPECT_EQ(generators::grid(3, 3).size(), 12);
}

TEST(Generators, TreeFromParents) {
  const std::vector<int> parent{0, 0, 1, 1};
  const Graph t = generators::tree_from_parents(parent);
  EXPECT_EQ(t.order(), 5);
  EXPECT_TRUE(is_tree(t));
  EXPECT_THROW(generators::tree_from_parents(std::vector<int>{5}), InputError);
}

TEST(Generators, SpanningSubgraphAndUnion) {
  const Graph k4 = generators::complete(4);
  const Graph h = spanning_subgraph(k4, bits::bit<EdgeMask>(0) | bits::bit<EdgeMask>(5));
  EXPECT_EQ(h.order(), 4);
  EXPECT_EQ(h.size(), 2);
  const Graph u = disjoint_union(generators::path(3), generators::cycle(3));
  EXPECT_EQ(u.order(), 6);
  EXPECT_EQ(u.size(), 5);
  EXPECT_EQ(component_count(u), 2);
}

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(to_graph6(generators::complete(4)), "C~");
  EXPECT_EQ(to_graph6(generators::complete(3)), "Bw");
  EXPECT_EQ(to_graph6(generators::path(3)), "Bg");
  const Graph k5 = from_graph6("D~{");
  EXPECT_EQ(k5.order(), 5);
  EXPECT_EQ(k5.size(), 10);
  EXPECT_EQ(from_graph6(">>graph6<<C~").size(), 6);
}

TEST(Graph6, RoundTripsRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 14);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 == 0 && e.size() < 128) e.emplace_back(a, b);
    const Graph g(n, e);
    const Graph back = from_graph6(to_graph6(g));
    ASSERT_EQ(back.order(), n);
    ASSERT_EQ(back.size(), g.size());
    for (auto [a, b] : e) ASSERT_TRUE(back.adjacent(a, b));
  }
}

TEST(Graph6, LongSizeField) {
  std::vector<std::pair<Vertex, Vertex>> e{{0, 70}, {5, 6}};
  const Graph g(71, e);
  const std::string s = to_graph6(g);
  EXPECT_EQ(s[0], 126);
  const Graph back = from_graph6(s);
  EXPECT_EQ(back.order(), 71);
  EXPECT_TRUE(back.adjacent(0, 70));
}

TEST(Graph6, RejectsMalformed) {
  EXPECT_THROW(from_graph6(""), InputError);
  EXPECT_THROW(from_graph6("C~~"), InputError);
  EXPECT_THROW(from_graph6("C"), InputError);
  EXPECT_THROW(from_graph6(":Fa@x^"), InputError);
  EXPECT_THROW(from_graph6(std::string("C\x20")), InputError);
}

TEST(EdgeList, ParsesCommentsAndValidates) {
  std::istringstream ok("# diamond\n4 5\n0 1\n0 2\n1 2\n\n1 3\n2 3\n");
  const Graph g = read_edge_list(ok);
  EXPECT_EQ(g.size(), 5);
  std::istringstream roundtrip(to_edge_list(g));
  EXPECT_EQ(read_edge_list(roundtrip).size(), 5);

  std::istringstream short_list("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(short_list), InputError);
  std::istringstream bad_header("x y\n");
  EXPECT_THROW(read_edge_list(bad_header), InputError);
  std::istringstream loop("2 1\n1 1\n");
  EXPECT_THROW(read_edge_list(loop), InputError);
  EXPECT_THROW(read_edge_list_file("/nonexistent/file.txt"), InputError);
}

TEST(Metrics, DistancesAndCenters) {
  const Graph p = generators::path(7);
  EXPECT_EQ(distance(p, 0, 6), 6);
  EXPECT_EQ(diameter(p), 6);
  EXPECT_EQ(radius(p), 3);
  EXPECT_EQ(center(p), (std::vector<Vertex>{3}));
  EXPECT_EQ(center(generators::path(6)).size(), 2u);
  const Graph two = disjoint_union(generators::path(2), generators::path(2));
  EXPECT_EQ(distance(two, 0, 3), kUnreachable);
  EXPECT_FALSE(is_connected(two));
  EXPECT_FALSE(is_bipartite(generators::cycle(5)));
  EXPECT_TRUE(is_bipartite(generators::cycle(6)));
  EXPECT_TRUE(is_tree(generators::star(4)));
  EXPECT_FALSE(is_tree(generators::cycle(4)));
}

TEST(Metrics, ComponentsMapBack) {
  const Graph u = disjoint_union(generators::cycle(4), generators::path(3));
  const auto cs = components(u);
  ASSERT_EQ(cs.size(), 2u);
  int edges = 0;
  for (const auto& c : cs) {
    edges += c.graph.size();
    for (auto e : c.graph.edges()) EXPECT_TRUE(u.adjacent(c.to_parent[e.u], c.to_parent[e.v]));
  }
  EXPECT_EQ(edges, u.size());
}

TEST(Metrics, LongestTrailMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) e.emplace_back(a, b);
    const Graph g(n, e);
    ASSERT_EQ(longest_trail(g), oracle::longest_trail(g)) << to_graph6(g);
  }
}

TEST(Metrics, LongestTrailKnownValues) {
  EXPECT_EQ(longest_trail(generators::cycle(6)), 6);
  EXPECT_EQ(longest_trail(generators::path(5)), 4);
  EXPECT_EQ(longest_trail(generators::complete(5)), 10);  // Eulerian
  EXPECT_EQ(longest_trail(generators::complete(4)), 5);   // four odd vertices, one edge left over
  EXPECT_EQ(longest_trail_from(generators::star(3), 0), 1);
  EXPECT_EQ(longest_trail_from(generators::star(3), 1), 2);
  EXPECT_TRUE(has_trail(generators::cycle(5), 5));
  EXPECT_FALSE(has_trail(generators::cycle(5), 6));
  TrailOptions tight;
  tight.node_budget = 3;
  EXPECT_THROW(longest_trail(generators::complete(7), tight), BudgetExceeded);
}

TEST(Symmetry, InvolutionsWithoutFixedEdges) {
  const auto g33 = find_involution_no_fixed_edges(generators::grid(3, 3));
  ASSERT_TRUE(g33);
  EXPECT_TRUE(is_fixed_edge_free_involution(generators::grid(3, 3), g33->perm));
  EXPECT_FALSE(find_involution_no_fixed_edges(generators::complete(4)));
  EXPECT_TRUE(find_involution_no_fixed_edges(generators::path(3)));
  EXPECT_FALSE(find_involution_no_fixed_edges(generators::path(4)));  // the reversal fixes the middle edge
  EXPECT_TRUE(find_involution_no_fixed_edges(generators::cycle(4)));
  EXPECT_TRUE(find_involution_no_fixed_edges(generators::prism(4)));
  EXPECT_TRUE(find_involution_no_fixed_edges(generators::complete_bipartite(2, 3)));
}

TEST(Symmetry, AutomorphismCheck) {
  const Graph c5 = generators::cycle(5);
  EXPECT_TRUE(is_automorphism(c5, std::vector<Vertex>{1, 2, 3, 4, 0}));
  EXPECT_FALSE(is_automorphism(c5, std::vector<Vertex>{1, 0, 2, 3, 4}));
  EXPECT_FALSE(is_automorphism(c5, std::vector<Vertex>{0, 0, 2, 3, 4}));
}

TEST(Symmetry, ArcOrbits) {
  auto count = [](const std::vector<int>& orb) { return std::set<int>(orb.begin(), orb.end()).size(); };
  EXPECT_EQ(count(arc_orbits(generators::complete(5))), 1u);
  EXPECT_EQ(count(arc_orbits(generators::cycle(6))), 1u);
  EXPECT_EQ(count(arc_orbits(generators::path(4))), 3u);  // leaf->in, in->leaf, middle
  EXPECT_EQ(count(arc_orbits(generators::star(3))), 2u);
  const Vertex fix[] = {0};
  EXPECT_EQ(count(arc_orbits(generators::complete(4), fix)), 3u);
}

TEST(Symmetry, CanonicalFormIsAnInvariant) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) e.emplace_back(a, b);
    const Graph g(n, e);
    const auto perm = oracle::random_permutation(n, rng);
    ASSERT_EQ(canonical_form(g), canonical_form(permute(g, perm)));
  }
}

TEST(Symmetry, CanonicalFormSeparatesClasses) {
  // the number of classes on five vertices, found independently by
  // brute-force isomorphism testing over all 5! relabelings
  const auto labelled = oracle::labelled_connected(5);
  std::vector<Graph> reps;
  std::vector<int> p{0, 1, 2, 3, 4};
  for (const auto& g : labelled) {
    bool found = false;
    for (const auto& r : reps) {
      if (r.size() != g.size()) continue;
      std::sort(p.begin(), p.end());
      do {
        bool same = true;
        for (auto e : g.edges())
          if (!r.adjacent(p[e.u], p[e.v])) same = false;
        if (same) found = true;
      } while (!found && std::next_permutation(p.begin(), p.end()));
      if (found) break;
    }
    if (!found) reps.push_back(g);
  }
  std::set<std::string> forms;
  for (const auto& g : labelled) forms.insert(canonical_form(g));
  EXPECT_EQ(forms.size(), reps.size());
  EXPECT_EQ(canonical_form(from_graph6(*forms.begin())), *forms.begin());
}
