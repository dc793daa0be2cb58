#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "oracle.hpp"
#include "trailtrap/census.hpp"

using namespace trailtrap;

namespace {

const std::string kSeven = std::string(TRAILTRAP_DATA_DIR) + "/connected7.g6";

std::set<std::string> canon_set(const std::vector<Graph>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(canonical_form(g));
  return out;
}

}  // namespace

TEST(Enumerate, ConnectedCountsUpToSix) {
  const std::vector<std::size_t> expect{1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(enumerate_connected_brute(n).size(), expect[n - 1]) << n;
}

TEST(Enumerate, BruteForceClassesMatchLabelledOracle) {
  // every labelled connected graph on 5 vertices lands in one enumerated class
  const auto classes = canon_set(enumerate_connected_brute(5));
  std::set<std::string> hit;
  for (const auto& g : oracle::labelled_connected(5)) {
    const auto c = canonical_form(g);
    ASSERT_TRUE(classes.count(c)) << to_graph6(g);
    hit.insert(c);
  }
  EXPECT_EQ(hit, classes);
}

TEST(Enumerate, SevenNeedsFileOrBruteForce) {
  EXPECT_THROW(enumerate_connected(7), InputError);
  EXPECT_THROW(enumerate_connected(8), InputError);
  EXPECT_THROW(enumerate_connected_brute(0), InputError);
  EnumerateOptions eo;
  eo.graph6_file = kSeven;
  EXPECT_EQ(enumerate_connected(7, eo).size(), 853u);
}

TEST(Enumerate, FileRejectsWrongOrderDisconnectedAndDuplicates) {
  EXPECT_THROW(connected_from_graph6({generators::path(3)}, 4), InputError);
  EXPECT_THROW(connected_from_graph6({Graph(4, {{0, 1}, {2, 3}})}, 4), InputError);
  EXPECT_THROW(connected_from_graph6({generators::path(4), permute(generators::path(4), std::vector<Vertex>{3, 1, 2, 0})}, 4),
               InputError);
  const auto path = std::filesystem::temp_directory_path() / "trailtrap_bad.g6";
  std::ofstream(path) << "C~\nnot graph6 at all\n";
  EnumerateOptions eo;
  eo.graph6_file = path.string();
  EXPECT_ANY_THROW(enumerate_connected(4, eo));
  std::filesystem::remove(path);
}

TEST(Census, TableOneUpToSix) {
  const std::vector<std::pair<int, int>> expect{{1, 1}, {1, 0}, {2, 2}, {6, 4}, {21, 17}, {112, 88}};
  for (int n = 1; n <= 6; ++n) {
    const CensusReport r = run_census(n);
    EXPECT_EQ(r.total_connected, expect[n - 1].first) << n;
    EXPECT_EQ(r.p2_win, expect[n - 1].second) << n;
    EXPECT_EQ(r.p2_win + r.p1_win(), r.total_connected);
  }
}

TEST(Census, FourVertexFirstPlayerWins) {
  const CensusReport r = run_census(4);
  const std::set<std::string> got(r.p1_win_list.begin(), r.p1_win_list.end());
  EXPECT_EQ(got, (std::set<std::string>{canonical_form(generators::star(3)), canonical_form(generators::complete(4))}));
}

TEST(Census, AgreesWithMinimaxOnFive) {
  for (const auto& e : run_census(5).entries)
    ASSERT_EQ(e.winner == Player::kOne, oracle::p1_wins(from_graph6(e.canonical))) << e.canonical;
}

TEST(Census, SevenFromFile) {
  EnumerateOptions eo;
  eo.graph6_file = kSeven;
  SolverOptions opt;
  opt.jobs = 2;
  const CensusReport r = run_census(7, opt, eo);
  EXPECT_EQ(r.total_connected, 853);
  EXPECT_EQ(r.p2_win, 734);
}

TEST(Census, SevenBruteForceMatchesFile) {
  EnumerateOptions eo;
  eo.graph6_file = kSeven;
  EXPECT_EQ(canon_set(enumerate_connected_brute(7)), canon_set(enumerate_connected(7, eo)));
}

TEST(Census, ReportIndependentOfJobs) {
  SolverOptions par;
  par.jobs = 4;
  const CensusReport a = run_census(5), b = run_census(5, par);
  EXPECT_EQ(a.p1_win_list, b.p1_win_list);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].canonical, b.entries[i].canonical);
    EXPECT_EQ(a.entries[i].winner, b.entries[i].winner);
  }
}

TEST(Census, BudgetErrorNamesTheGraph) {
  SolverOptions tight;
  tight.node_budget = 1;
  try {
    run_census({generators::complete(7)}, 7, tight);
    FAIL() << "expected a budget error";
  } catch (const CensusBudgetError& e) {
    EXPECT_EQ(e.graph6(), to_graph6(generators::complete(7)));
    EXPECT_NE(std::string(e.what()).find(e.graph6()), std::string::npos);
  }
}

TEST(CensusOutput, FractionJsonAndTable) {
  EXPECT_EQ(exact_fraction(88, 112), "11/14");
  EXPECT_EQ(exact_fraction(734, 853), "734/853");
  EXPECT_EQ(exact_fraction(0, 0), "0/0");
  const CensusReport r = run_census(5);
  const auto j = census_json(r);
  EXPECT_EQ(j["total_connected"], 21);
  EXPECT_EQ(j["p2_win"], 17);
  EXPECT_EQ(j["p1_win_list"].size(), 4u);
  EXPECT_FALSE(j.contains("entries"));
  EXPECT_EQ(census_json(r, true)["entries"].size(), 21u);
  const std::string t = census_table({r});
  EXPECT_NE(t.find("17/21"), std::string::npos);
  EXPECT_NE(t.find("81.0%"), std::string::npos);
}
