#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trailtrap/core.hpp"

namespace trailtrap {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool touches(Vertex w) const { return u == w || v == w; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex to = 0;
  EdgeIndex edge = 0;
};

/// Undirected simple graph with stable vertex and edge indices.
///
/// Edges keep the order they were given in; adjacency lists are sorted by
/// neighbor. Vertices may carry display names (generators use the coordinate
/// names that strategy code refers to, e.g. "u-2" / "v1" on ladders).
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::span<const std::pair<Vertex, Vertex>> edge_list) : n_(n), adj_(n) {
    if (n < 0) throw InputError("negative vertex count");
    if (static_cast<int>(edge_list.size()) > kMaxEdges)
      throw InputError("graph has " + std::to_string(edge_list.size()) + " edges; at most " +
                       std::to_string(kMaxEdges) + " are supported");
    edges_.reserve(edge_list.size());
    for (auto [a, b] : edge_list) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw InputError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                         " has an endpoint outside 0.." + std::to_string(n - 1));
      if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
      if (edge_between(a, b))
        throw InputError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
      const auto e = static_cast<EdgeIndex>(edges_.size());
      edges_.push_back({a, b});
      adj_[a].push_back({b, e});
      adj_[b].push_back({a, e});
    }
    for (auto& list : adj_)
      std::sort(list.begin(), list.end(), [](Incidence x, Incidence y) { return x.to < y.to; });
  }

  Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edge_list)
      : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edge_list.begin(), edge_list.size())) {}

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  std::optional<EdgeIndex> edge_between(Vertex a, Vertex b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) return std::nullopt;
    for (auto inc : adj_[a])
      if (inc.to == b) return inc.edge;
    return std::nullopt;
  }

  bool adjacent(Vertex a, Vertex b) const { return edge_between(a, b).has_value(); }

  /// Mask of all edge indices incident to v.
  EdgeMask incident_mask(Vertex v) const {
    EdgeMask m = 0;
    for (auto inc : adj_[v]) m |= bits::bit<EdgeMask>(inc.edge);
    return m;
  }

  EdgeMask all_edges_mask() const {
    return size() == kMaxEdges ? ~EdgeMask{0} : bits::bit<EdgeMask>(size()) - 1;
  }

  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_.size());
    for (auto e : edges_) out.emplace_back(e.u, e.v);
    return out;
  }

  void set_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != n_) throw InputError("name count does not match order");
    names_ = std::move(names);
  }
  bool has_names() const { return !names_.empty(); }
  std::string name(Vertex v) const { return names_.empty() ? std::to_string(v) : names_[v]; }

  /// Vertex carrying the given display name, if any.
  std::optional<Vertex> find(const std::string& name) const {
    for (Vertex v = 0; v < n_; ++v)
      if (this->name(v) == name) return v;
    return std::nullopt;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
  std::vector<std::string> names_;
};

inline Graph build_graph(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  return Graph(n, edges);
}

/// Relabels vertices: vertex v of g becomes perm[v].
inline Graph permute(const Graph& g, std::span<const Vertex> perm) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(g.size());
  for (auto e : g.edges()) out.emplace_back(perm[e.u], perm[e.v]);
  return Graph(g.order(), out);
}

/// Subgraph on the same vertex set keeping only the edges in `keep`.
inline Graph spanning_subgraph(const Graph& g, EdgeMask keep) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (EdgeIndex e = 0; e < g.size(); ++e)
    if (bits::test(keep, e)) out.emplace_back(g.edge(e).u, g.edge(e).v);
  Graph h(g.order(), out);
  if (g.has_names()) {
    std::vector<std::string> names;
    for (Vertex v = 0; v < g.order(); ++v) names.push_back(g.name(v));
    h.set_names(std::move(names));
  }
  return h;
}

/// Disjoint union; vertices of b are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edge_pairs();
  for (auto e : b.edges()) edges.emplace_back(e.u + a.order(), e.v + a.order());
  return Graph(a.order() + b.order(), edges);
}

namespace generators {

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}
}  // namespace detail

inline Graph complete(int n) {
  detail::require(n >= 1, "complete graph needs n >= 1");
  detail::require(n * (n - 1) / 2 <= kMaxEdges, "K_" + std::to_string(n) + " exceeds the edge bound");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

/// K_{p,q}: left side u1..up is 0..p-1, right side v1..vq is p..p+q-1.
inline Graph complete_bipartite(int p, int q) {
  detail::require(p >= 1 && q >= 1, "complete bipartite graph needs p, q >= 1");
  detail::require(p * q <= kMaxEdges, "K_{p,q} exceeds the edge bound");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) e.emplace_back(i, p + j);
  Graph g(p + q, e);
  std::vector<std::string> names;
  for (int i = 0; i < p; ++i) names.push_back("u" + std::to_string(i + 1));
  for (int j = 0; j < q; ++j) names.push_back("v" + std::to_string(j + 1));
  g.set_names(std::move(names));
  return g;
}

inline Graph path(int n) {
  detail::require(n >= 1, "path needs n >= 1");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  detail::require(n >= 3, "a simple cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

/// G □ H with vertex (x, y) at index x * |H| + y.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const int nh = h.order();
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex x = 0; x < g.order(); ++x)
    for (auto f : h.edges()) e.emplace_back(x * nh + f.u, x * nh + f.v);
  for (auto f : g.edges())
    for (Vertex y = 0; y < nh; ++y) e.emplace_back(f.u * nh + y, f.v * nh + y);
  detail::require(static_cast<int>(e.size()) <= kMaxEdges, "product exceeds the edge bound");
  return Graph(g.order() * nh, e);
}

/// Ladder coordinates for P_2 □ P_n with n odd: columns run -k..k where
/// k = (n-1)/2, row u is vertices 0..n-1 and row v is n..2n-1.
struct Ladder {
  int n = 0;
  int k() const { return (n - 1) / 2; }
  Vertex u(int i) const { return i + k(); }
  Vertex v(int i) const { return n + i + k(); }
  bool on_u(Vertex w) const { return w < n; }
  int column(Vertex w) const { return (w < n ? w : w - n) - k(); }
};

/// P_m □ P_n; vertex (r, c) at index r * n + c. For m = 2 and odd n, the
/// vertices are named by Ladder coordinates ("u-1", "v0", ...).
inline Graph grid(int m, int n) {
  detail::require(m >= 1 && n >= 1, "grid needs m, n >= 1");
  Graph g = cartesian_product(path(m), path(n));
  if (m == 2 && n % 2 == 1) {
    Ladder lad{n};
    std::vector<std::string> names(2 * n);
    for (int i = -lad.k(); i <= lad.k(); ++i) {
      names[lad.u(i)] = "u" + std::to_string(i);
      names[lad.v(i)] = "v" + std::to_string(i);
    }
    g.set_names(std::move(names));
  }
  return g;
}

/// Circular coordinates for C_n □ K_2: u_i is vertex (i mod n), v_i is
/// n + (i mod n), so indices may be taken in -k..k for odd n.
struct PrismCoords {
  int n = 0;
  int wrap(int i) const { return ((i % n) + n) % n; }
  Vertex u(int i) const { return wrap(i); }
  Vertex v(int i) const { return n + wrap(i); }
  bool on_u(Vertex w) const { return w < n; }
  int column(Vertex w) const { return w < n ? w : w - n; }
};

/// C_n □ K_2 with u_j = j and v_j = n + j.
inline Graph prism(int n) {
  detail::require(n >= 3, "prism needs n >= 3");
  Graph g = cartesian_product(path(2), cycle(n));
  std::vector<std::string> names(2 * n);
  for (int j = 0; j < n; ++j) {
    names[j] = "u" + std::to_string(j);
    names[n + j] = "v" + std::to_string(j);
  }
  g.set_names(std::move(names));
  return g;
}

/// Tree on parent.size() + 1 vertices: vertex i + 1 hangs off parent[i].
inline Graph tree_from_parents(std::span<const int> parent) {
  const int n = static_cast<int>(parent.size()) + 1;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) {
    detail::require(parent[i] >= 0 && parent[i] < n && parent[i] != i + 1,
                    "parent array entry out of range");
    e.emplace_back(parent[i], i + 1);
  }
  return Graph(n, e);
}

inline Graph hypercube(int d) {
  const int n = 1 << d;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int x = 0; x < n; ++x)
    for (int b = 0; b < d; ++b)
      if (!(x >> b & 1)) e.emplace_back(x, x | (1 << b));
  return Graph(n, e);
}

}  // namespace generators

}  // namespace trailtrap
