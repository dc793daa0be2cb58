#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "trailtrap/graph_io.hpp"
#include "trailtrap/metrics.hpp"
#include "trailtrap/solver.hpp"
#include "trailtrap/symmetry.hpp"

namespace trailtrap {

struct CensusEntry {
  std::string canonical;  // graph6 of the canonical labelling
  Player winner = Player::kTwo;
  std::uint64_t nodes = 0;
  double millis = 0;
};

struct CensusReport {
  int n = 0;
  int total_connected = 0;
  int p2_win = 0;
  std::vector<std::string> p1_win_list;  // canonical graph6, sorted
  std::vector<CensusEntry> entries;      // sorted by canonical form
  double millis = 0;

  int p1_win() const { return static_cast<int>(p1_win_list.size()); }
};

/// A per-graph budget failure, naming the graph.
class CensusBudgetError : public BudgetExceeded {
 public:
  CensusBudgetError(std::uint64_t nodes, std::string graph6)
      : BudgetExceeded(nodes), graph6_(std::move(graph6)),
        what_("node budget exceeded on graph " + graph6_ + " after " + std::to_string(nodes) + " nodes") {}
  const std::string& graph6() const { return graph6_; }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  std::string graph6_;
  std::string what_;
};

/// Connected graphs on n vertices, one per isomorphism class, sorted by
/// canonical form. Edge-subset enumeration over K_n.
inline std::vector<Graph> enumerate_connected_brute(int n) {
  if (n < 1 || n > 7) throw InputError("enumeration supports 1 <= n <= 7");
  std::vector<std::pair<Vertex, Vertex>> all;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) all.emplace_back(a, b);
  const int m = static_cast<int>(all.size());
  std::set<std::string> seen;
  std::vector<std::uint32_t> reach(n);
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    if (std::popcount(s) < n - 1) continue;
    // connectivity by bitset closure
    std::fill(reach.begin(), reach.end(), 0u);
    for (int i = 0; i < m; ++i)
      if ((s >> i) & 1) {
        reach[all[i].first] |= 1u << all[i].second;
        reach[all[i].second] |= 1u << all[i].first;
      }
    std::uint32_t comp = 1, frontier = 1;
    while (frontier) {
      std::uint32_t nxt = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) nxt |= reach[std::countr_zero(f)];
      frontier = nxt & ~comp;
      comp |= nxt;
    }
    if (comp != (1u << n) - 1) continue;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < m; ++i)
      if ((s >> i) & 1) edges.push_back(all[i]);
    seen.insert(canonical_form(Graph(n, edges)));
  }
  std::vector<Graph> out;
  for (const auto& c : seen) out.push_back(from_graph6(c));
  return out;
}

/// Deduplicates and validates a graph6 list of connected n-vertex graphs.
inline std::vector<Graph> connected_from_graph6(const std::vector<Graph>& in, int n) {
  std::set<std::string> seen;
  for (const auto& g : in) {
    if (g.order() != n) throw InputError("graph6 entry has " + std::to_string(g.order()) + " vertices, expected " + std::to_string(n));
    if (!is_connected(g)) throw InputError("graph6 entry " + to_graph6(g) + " is disconnected");
    if (!seen.insert(canonical_form(g)).second) throw InputError("graph6 file repeats an isomorphism class: " + to_graph6(g));
  }
  std::vector<Graph> out;
  for (const auto& c : seen) out.push_back(from_graph6(c));
  return out;
}

struct EnumerateOptions {
  std::string graph6_file;  // required for n = 7 unless brute_force_seven
  bool brute_force_seven = false;
};

inline std::vector<Graph> enumerate_connected(int n, const EnumerateOptions& opt = {}) {
  if (n < 1 || n > 7) throw InputError("census supports 1 <= n <= 7");
  if (!opt.graph6_file.empty()) return connected_from_graph6(read_graph6_file(opt.graph6_file), n);
  if (n == 7 && !opt.brute_force_seven)
    throw InputError("n = 7 needs a graph6 file of connected graphs (or the long brute-force option)");
  return enumerate_connected_brute(n);
}

/// Solves every graph; the report is the same for every worker count.
inline CensusReport run_census(const std::vector<Graph>& graphs, int n, const SolverOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport rep;
  rep.n = n;
  rep.entries.resize(graphs.size());
  SolverOptions each = opt;
  each.jobs = 1;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= graphs.size()) return;
      auto& e = rep.entries[i];
      e.canonical = canonical_form(graphs[i]);
      try {
        const Outcome o = solve(graphs[i], each);
        e.winner = o.winner;
        e.nodes = o.stats.nodes;
        e.millis = o.stats.millis;
      } catch (const BudgetExceeded& b) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::make_exception_ptr(CensusBudgetError(b.nodes(), to_graph6(graphs[i])));
        next.store(graphs.size());
        return;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(graphs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const CensusEntry& a, const CensusEntry& b) { return a.canonical < b.canonical; });
  rep.total_connected = static_cast<int>(rep.entries.size());
  for (const auto& e : rep.entries) {
    if (e.winner == Player::kTwo) ++rep.p2_win;
    else rep.p1_win_list.push_back(e.canonical);
  }
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline CensusReport run_census(int n, const SolverOptions& opt = {}, const EnumerateOptions& eopt = {}) {
  return run_census(enumerate_connected(n, eopt), n, opt);
}

/// "p/q" in lowest terms.
inline std::string exact_fraction(int p, int q) {
  const int d = std::gcd(p, q);
  return d == 0 ? "0/0" : std::to_string(p / d) + "/" + std::to_string(q / d);
}

inline nlohmann::json census_json(const CensusReport& r, bool with_entries = false) {
  nlohmann::json j{{"n", r.n},
                   {"total_connected", r.total_connected},
                   {"p2_win", r.p2_win},
                   {"p1_win", r.p1_win()},
                   {"p2_fraction", exact_fraction(r.p2_win, r.total_connected)},
                   {"p1_win_list", r.p1_win_list}};
  if (with_entries) {
    auto arr = nlohmann::json::array();
    for (const auto& e : r.entries)
      arr.push_back({{"graph6", e.canonical}, {"winner", to_string(e.winner)}, {"nodes", e.nodes}, {"millis", e.millis}});
    j["entries"] = std::move(arr);
  }
  return j;
}

/// One row per report: n, P2-win count, connected count, exact share and a
/// rounded percentage.
inline std::string census_table(const std::vector<CensusReport>& reports) {
  std::ostringstream os;
  os << "n  P2-win  connected  P2 share  percent\n";
  for (const auto& r : reports) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f%%", r.total_connected ? 100.0 * r.p2_win / r.total_connected : 0.0);
    char line[128];
    std::snprintf(line, sizeof line, "%-2d %-7d %-10d %-9s %s\n", r.n, r.p2_win, r.total_connected,
                  exact_fraction(r.p2_win, r.total_connected).c_str(), pct);
    os << line;
  }
  return os.str();
}

}  // namespace trailtrap
