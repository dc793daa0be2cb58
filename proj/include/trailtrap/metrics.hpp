#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "trailtrap/graph.hpp"

namespace trailtrap {

/// Distance between vertices in different components.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.order(), kUnreachable);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (auto inc : g.neighbors(x)) {
      if (dist[inc.to] == kUnreachable) {
        dist[inc.to] = dist[x] + 1;
        q.push(inc.to);
      }
    }
  }
  return dist;
}

inline int distance(const Graph& g, Vertex u, Vertex v) { return bfs_distances(g, u)[v]; }

/// Component id per vertex, numbered in order of first vertex.
inline std::vector<int> component_ids(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  int next = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (auto inc : g.neighbors(x))
        if (comp[inc.to] == -1) {
          comp[inc.to] = next;
          stack.push_back(inc.to);
        }
    }
    ++next;
  }
  return comp;
}

inline int component_count(const Graph& g) {
  auto ids = component_ids(g);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || component_count(g) == 1; }

/// A connected component as its own graph plus the map back to the parent.
struct Component {
  Graph graph;
  std::vector<Vertex> to_parent;
};

inline std::vector<Component> components(const Graph& g) {
  auto ids = component_ids(g);
  const int count = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  std::vector<std::vector<Vertex>> members(count);
  std::vector<int> local(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    local[v] = static_cast<int>(members[ids[v]].size());
    members[ids[v]].push_back(v);
  }
  std::vector<std::vector<std::pair<Vertex, Vertex>>> edges(count);
  for (auto e : g.edges()) edges[ids[e.u]].emplace_back(local[e.u], local[e.v]);
  std::vector<Component> out;
  for (int c = 0; c < count; ++c)
    out.push_back({Graph(static_cast<int>(members[c].size()), edges[c]), members[c]});
  return out;
}

/// Proper 2-coloring, or nullopt when the graph has an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<int> color(g.order(), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (auto inc : g.neighbors(x)) {
        if (color[inc.to] == -1) {
          color[inc.to] = 1 - color[x];
          stack.push_back(inc.to);
        } else if (color[inc.to] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

inline bool is_regular(const Graph& g, int d) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

inline bool is_tree(const Graph& g) { return g.order() >= 1 && g.size() == g.order() - 1 && is_connected(g); }

/// Eccentricity of every vertex; throws on a disconnected graph.
inline std::vector<int> eccentricities(const Graph& g) {
  if (!is_connected(g)) throw InputError("eccentricity is undefined on a disconnected graph");
  std::vector<int> ecc(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    auto d = bfs_distances(g, v);
    ecc[v] = *std::max_element(d.begin(), d.end());
  }
  return ecc;
}

inline int radius(const Graph& g) {
  auto ecc = eccentricities(g);
  return *std::min_element(ecc.begin(), ecc.end());
}

inline int diameter(const Graph& g) {
  auto ecc = eccentricities(g);
  return *std::max_element(ecc.begin(), ecc.end());
}

inline std::vector<Vertex> center(const Graph& g) {
  auto ecc = eccentricities(g);
  const int r = *std::min_element(ecc.begin(), ecc.end());
  std::vector<Vertex> c;
  for (Vertex v = 0; v < g.order(); ++v)
    if (ecc[v] == r) c.push_back(v);
  return c;
}

namespace detail {

// Depth-first trail extension. The bound on the remaining length is
// min(unused edges in the start component, 1 + sum_w floor(d_w / 2)) where
// d_w counts unused edges at w: interior trail vertices consume an even
// number of their edges and only the two ends may consume an odd number.
class TrailSearch {
 public:
  TrailSearch(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget), deg_(g.order()) {
    for (EdgeIndex e = 0; e < g.size(); ++e) ends_.push_back(g.edge(e));
  }

  /// Longest trail from v using only edges in `allowed`; stops early once a
  /// trail of length >= stop_at is found.
  int run(Vertex v, EdgeMask allowed, int floor_value, int stop_at) {
    best_ = floor_value;
    stop_at_ = stop_at;
    // restrict to v's component within `allowed`
    EdgeMask comp = 0;
    std::vector<char> seen(g_.order(), 0);
    std::vector<Vertex> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (auto inc : g_.neighbors(x)) {
        if (!bits::test(allowed, inc.edge)) continue;
        comp |= bits::bit<EdgeMask>(inc.edge);
        if (!seen[inc.to]) {
          seen[inc.to] = 1;
          stack.push_back(inc.to);
        }
      }
    }
    half_sum_ = 0;
    for (Vertex w = 0; w < g_.order(); ++w) {
      deg_[w] = 0;
      for (auto inc : g_.neighbors(w))
        if (bits::test(comp, inc.edge)) ++deg_[w];
      half_sum_ += deg_[w] / 2;
    }
    remaining_ = bits::popcount(comp);
    free_ = comp;
    extend(v, 0);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void use(EdgeIndex e) {
    for (Vertex w : {ends_[e].u, ends_[e].v}) {
      half_sum_ -= deg_[w] / 2;
      --deg_[w];
      half_sum_ += deg_[w] / 2;
    }
    free_ &= ~bits::bit<EdgeMask>(e);
    --remaining_;
  }
  void release(EdgeIndex e) {
    for (Vertex w : {ends_[e].u, ends_[e].v}) {
      half_sum_ -= deg_[w] / 2;
      ++deg_[w];
      half_sum_ += deg_[w] / 2;
    }
    free_ |= bits::bit<EdgeMask>(e);
    ++remaining_;
  }

  bool extend(Vertex at, int len) {
    if (budget_ && ++nodes_ > budget_) throw BudgetExceeded(nodes_);
    if (len > best_) best_ = len;
    if (best_ >= stop_at_) return true;
    if (len + std::min(remaining_, half_sum_ + 1) <= best_) return false;
    for (auto inc : g_.neighbors(at)) {
      if (!bits::test(free_, inc.edge)) continue;
      use(inc.edge);
      const bool done = extend(inc.to, len + 1);
      release(inc.edge);
      if (done) return true;
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Edge> ends_;
  std::vector<int> deg_;
  int half_sum_ = 0;
  int remaining_ = 0;
  EdgeMask free_ = 0;
  int best_ = 0;
  int stop_at_ = 0;
};

}  // namespace detail

/// Options for the exact trail searches. budget 0 means unlimited.
struct TrailOptions {
  std::uint64_t node_budget = 0;
};

/// l(G, v) restricted to the edges in `allowed`.
inline int longest_trail_from(const Graph& g, Vertex v, EdgeMask allowed, TrailOptions opt = {}) {
  detail::TrailSearch s(g, opt.node_budget);
  return s.run(v, allowed, 0, std::numeric_limits<int>::max());
}

inline int longest_trail_from(const Graph& g, Vertex v, TrailOptions opt = {}) {
  return longest_trail_from(g, v, g.all_edges_mask(), opt);
}

inline int longest_trail(const Graph& g, EdgeMask allowed, TrailOptions opt = {}) {
  detail::TrailSearch s(g, opt.node_budget);
  int best = 0;
  const int total = bits::popcount(allowed & g.all_edges_mask());
  for (Vertex v = 0; v < g.order() && best < total; ++v) best = s.run(v, allowed, best, total);
  return best;
}

inline int longest_trail(const Graph& g, TrailOptions opt = {}) {
  return longest_trail(g, g.all_edges_mask(), opt);
}

/// True iff some trail from v has length >= target.
inline bool has_trail_from(const Graph& g, Vertex v, int target, TrailOptions opt = {}) {
  detail::TrailSearch s(g, opt.node_budget);
  return s.run(v, g.all_edges_mask(), 0, target) >= target;
}

inline bool has_trail(const Graph& g, int target, TrailOptions opt = {}) {
  detail::TrailSearch s(g, opt.node_budget);
  for (Vertex v = 0; v < g.order(); ++v)
    if (s.run(v, g.all_edges_mask(), 0, target) >= target) return true;
  return target <= 0;
}

}  // namespace trailtrap
