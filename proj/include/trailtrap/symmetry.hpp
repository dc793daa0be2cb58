#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trailtrap/graph.hpp"
#include "trailtrap/graph_io.hpp"

namespace trailtrap {

/// Vertex permutation with perm[perm[v]] == v that maps edges to edges and
/// fixes no edge.
struct Involution {
  std::vector<Vertex> perm;

  Vertex operator()(Vertex v) const { return perm[v]; }
};

using Permutation = std::vector<Vertex>;

inline bool is_automorphism(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.order()) return false;
  std::vector<char> hit(g.order(), 0);
  for (Vertex p : perm) {
    if (p < 0 || p >= g.order() || hit[p]) return false;
    hit[p] = 1;
  }
  for (auto e : g.edges())
    if (!g.adjacent(perm[e.u], perm[e.v])) return false;
  return true;
}

/// Edge index of the image of edge e, assuming perm is an automorphism.
inline EdgeIndex image_edge(const Graph& g, std::span<const Vertex> perm, EdgeIndex e) {
  return *g.edge_between(perm[g.edge(e).u], perm[g.edge(e).v]);
}

/// Checks every Involution invariant against g.
inline bool is_fixed_edge_free_involution(const Graph& g, std::span<const Vertex> perm) {
  if (!is_automorphism(g, perm)) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (perm[perm[v]] != v) return false;
  for (auto e : g.edges()) {
    const Vertex a = perm[e.u], b = perm[e.v];
    if ((a == e.u && b == e.v) || (a == e.v && b == e.u)) return false;
  }
  return true;
}

namespace detail {

/// Color refinement (1-dimensional Weisfeiler-Leman) to the coarsest
/// equitable partition finer than `colors`. New colors are ranks of sorted
/// signatures, so the result is isomorphism-invariant.
inline std::vector<int> refine(const std::vector<std::vector<Vertex>>& adj, std::vector<int> colors) {
  const int n = static_cast<int>(adj.size());
  int classes = -1;
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colors[v];
      for (Vertex w : adj[v]) sig[v].second.push_back(colors[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v = 0; v < n; ++v)
      colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const int now = static_cast<int>(sorted.size());
    if (now == classes) return colors;
    classes = now;
  }
}

// adjacency of k disjoint copies of g
inline std::vector<std::vector<Vertex>> copies_adjacency(const Graph& g, int k = 1) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(g.order()) * k);
  for (int c = 0; c < k; ++c)
    for (Vertex v = 0; v < g.order(); ++v)
      for (auto inc : g.neighbors(v)) adj[c * g.order() + v].push_back(c * g.order() + inc.to);
  return adj;
}

inline std::vector<int> refine(const Graph& g, std::vector<int> colors) {
  return refine(copies_adjacency(g), std::move(colors));
}

inline std::vector<int> degree_colors(const Graph& g) {
  std::vector<int> c(g.order());
  for (Vertex v = 0; v < g.order(); ++v) c[v] = g.degree(v);
  return c;
}

// Individualization-refinement search for an automorphism of g extending a
// prescribed partial map. Works on two colorings of the same graph ("source"
// and "image" copies) refined jointly on the disjoint union so that colors
// are comparable across copies.
class AutomorphismSearch {
 public:
  AutomorphismSearch(const Graph& g, std::uint64_t budget) : g_(g), doubled_(copies_adjacency(g, 2)), budget_(budget) {}

  std::optional<Permutation> extend(std::span<const std::pair<Vertex, Vertex>> fixed) {
    const int n = g_.order();
    if (n == 0) return Permutation{};
    std::vector<int> colors(2 * n);
    for (Vertex v = 0; v < n; ++v) colors[v] = colors[v + n] = g_.degree(v);
    int next = 1 + *std::max_element(colors.begin(), colors.end());
    std::vector<Vertex> fwd(n, -1), back(n, -1);
    for (auto [a, b] : fixed) {
      if (g_.degree(a) != g_.degree(b)) return std::nullopt;
      if (fwd[a] == b) continue;
      if (fwd[a] != -1 || back[b] != -1) return std::nullopt;
      fwd[a] = b;
      back[b] = a;
      colors[a] = colors[b + n] = next++;
    }
    return search(std::move(colors));
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::optional<Permutation> search(std::vector<int> colors) {
    if (budget_ && ++nodes_ > budget_) throw BudgetExceeded(nodes_);
    const int n = g_.order();
    colors = refine(doubled_, std::move(colors));
    // histograms must agree between the copies
    std::map<int, std::pair<int, int>> hist;
    for (Vertex v = 0; v < n; ++v) {
      ++hist[colors[v]].first;
      ++hist[colors[v + n]].second;
    }
    int target = -1, target_size = 0;
    for (auto& [c, counts] : hist) {
      if (counts.first != counts.second) return std::nullopt;
      if (counts.first > 1 && (target == -1 || counts.first < target_size)) {
        target = c;
        target_size = counts.first;
      }
    }
    if (target == -1) {
      Permutation perm(n);
      std::map<int, Vertex> image;
      for (Vertex v = 0; v < n; ++v) image[colors[v + n]] = v;
      for (Vertex v = 0; v < n; ++v) perm[v] = image[colors[v]];
      if (is_automorphism(g_, perm)) return perm;
      return std::nullopt;
    }
    Vertex a = 0;
    while (colors[a] != target) ++a;
    const int fresh = *std::max_element(colors.begin(), colors.end()) + 1;
    for (Vertex b = 0; b < n; ++b) {
      if (colors[b + n] != target) continue;
      auto c = colors;
      c[a] = c[b + n] = fresh;
      if (auto p = search(std::move(c))) return p;
    }
    return std::nullopt;
  }

  const Graph& g_;
  std::vector<std::vector<Vertex>> doubled_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Some automorphism mapping each fixed[i].first to fixed[i].second, if one
/// exists. budget (0 = unlimited) caps the number of search nodes.
inline std::optional<Permutation> find_automorphism(const Graph& g,
                                                    std::span<const std::pair<Vertex, Vertex>> fixed = {},
                                                    std::uint64_t budget = 0) {
  detail::AutomorphismSearch s(g, budget);
  return s.extend(fixed);
}

/// A directed edge tail -> head; index 2e for u->v and 2e+1 for v->u.
inline int arc_index(const Graph& g, EdgeIndex e, Vertex tail) { return 2 * e + (g.edge(e).u == tail ? 0 : 1); }

/// Orbits of the automorphism group stabilizing `fixed` pointwise, acting on
/// directed edges. Returns the orbit id (smallest arc index in the orbit) of
/// every arc. When an individual search exceeds `per_test_budget` the pair is
/// left unmerged, so the result can only be finer than the true orbits.
inline std::vector<int> arc_orbits(const Graph& g, std::span<const Vertex> fixed = {},
                                   std::uint64_t per_test_budget = 20000) {
  const int arcs = 2 * g.size();
  detail::UnionFind uf(arcs);
  auto tail_of = [&](int a) { return a % 2 == 0 ? g.edge(a / 2).u : g.edge(a / 2).v; };
  auto head_of = [&](int a) { return a % 2 == 0 ? g.edge(a / 2).v : g.edge(a / 2).u; };
  auto absorb = [&](const Permutation& p) {
    for (int a = 0; a < arcs; ++a) {
      const EdgeIndex e = image_edge(g, p, a / 2);
      uf.unite(a, arc_index(g, e, p[tail_of(a)]));
    }
  };
  std::vector<int> reps;
  for (int a = 0; a < arcs; ++a) {
    bool merged = false;
    for (int r : reps) {
      if (uf.find(r) == uf.find(a)) {
        merged = true;
        break;
      }
    }
    if (merged) continue;
    for (int r : reps) {
      std::vector<std::pair<Vertex, Vertex>> pairs;
      for (Vertex f : fixed) pairs.emplace_back(f, f);
      pairs.emplace_back(tail_of(r), tail_of(a));
      pairs.emplace_back(head_of(r), head_of(a));
      std::optional<Permutation> p;
      try {
        p = find_automorphism(g, pairs, per_test_budget);
      } catch (const BudgetExceeded&) {
        p.reset();
      }
      if (p) {
        absorb(*p);
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(a);
  }
  std::vector<int> out(arcs);
  for (int a = 0; a < arcs; ++a) out[a] = uf.find(a);
  return out;
}

namespace detail {

class InvolutionSearch {
 public:
  InvolutionSearch(const Graph& g, std::uint64_t budget)
      : g_(g), budget_(budget), colors_(refine(g, degree_colors(g))), perm_(g.order(), -1) {
    const int n = g.order();
    adj_.assign(n, std::vector<char>(n, 0));
    for (auto e : g.edges()) adj_[e.u][e.v] = adj_[e.v][e.u] = 1;
    // most constrained first: small color classes, then high degree
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<int> class_size(n + 1, 0);
    for (int c : colors_) ++class_size[c];
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return std::make_pair(class_size[colors_[a]], -g.degree(a)) <
             std::make_pair(class_size[colors_[b]], -g.degree(b));
    });
  }

  std::optional<Involution> run() {
    if (assign(0)) return Involution{perm_};
    return std::nullopt;
  }

 private:
  // Consistency of the new pair (v -> w, w -> v) against assigned vertices.
  bool consistent(Vertex v, Vertex w) const {
    if (v != w && adj_[v][w]) return false;  // {v, w} would be fixed
    for (Vertex x = 0; x < g_.order(); ++x) {
      const Vertex px = perm_[x];
      if (px < 0) continue;
      if (adj_[v][x] != adj_[w][px]) return false;
      if (adj_[w][x] != adj_[v][px]) return false;
      if (v == w && px == x && adj_[v][x]) return false;
    }
    return true;
  }

  bool assign(std::size_t i) {
    if (budget_ && ++nodes_ > budget_) throw BudgetExceeded(nodes_);
    while (i < order_.size() && perm_[order_[i]] >= 0) ++i;
    if (i == order_.size()) return true;
    const Vertex v = order_[i];
    // prefer non-fixed images; a fixed vertex forbids fixing any neighbor
    for (int pass = 0; pass < 2; ++pass) {
      for (Vertex w = 0; w < g_.order(); ++w) {
        if ((pass == 0) == (w == v)) continue;
        if (perm_[w] >= 0 || colors_[w] != colors_[v]) continue;
        if (!consistent(v, w)) continue;
        perm_[v] = w;
        perm_[w] = v;
        if (assign(i + 1)) return true;
        perm_[v] = perm_[w] = -1;
      }
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> colors_;
  std::vector<Vertex> perm_;
  std::vector<Vertex> order_;
  std::vector<std::vector<char>> adj_;
};

}  // namespace detail

/// Searches for an involutive automorphism with no fixed edges. Exhaustive
/// over automorphisms consistent with the equitable partition; `budget`
/// (0 = unlimited) caps search nodes and throws BudgetExceeded when hit.
inline std::optional<Involution> find_involution_no_fixed_edges(const Graph& g, std::uint64_t budget = 0) {
  if (g.size() == 0) return Involution{[&] {
      Permutation p(g.order());
      std::iota(p.begin(), p.end(), 0);
      return p;
    }()};
  detail::InvolutionSearch s(g, budget);
  return s.run();
}

/// Canonical graph6 string: the lexicographically smallest upper-triangle
/// adjacency string over vertex orders that list the refined color classes
/// in increasing color order. Equal strings iff isomorphic graphs.
inline std::string canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > 12) throw InputError("canonical_form supports at most 12 vertices");
  auto colors = detail::refine(g, detail::degree_colors(g));
  std::vector<Vertex> by_color(n);
  std::iota(by_color.begin(), by_color.end(), 0);
  std::stable_sort(by_color.begin(), by_color.end(), [&](Vertex a, Vertex b) { return colors[a] < colors[b]; });
  std::vector<int> slot_color(n);
  for (int p = 0; p < n; ++p) slot_color[p] = colors[by_color[p]];

  std::vector<std::uint16_t> adj(n, 0);
  for (auto e : g.edges()) {
    adj[e.u] |= static_cast<std::uint16_t>(1u << e.v);
    adj[e.v] |= static_cast<std::uint16_t>(1u << e.u);
  }

  // column p of the canonical matrix, as a p-bit number (row 0 most significant)
  std::vector<std::uint32_t> best(n, 0), cur(n, 0);
  bool have_best = false;
  std::vector<Vertex> placed(n);
  std::uint16_t used = 0;

  auto rec_fixed = [&](auto&& self, int p) -> void {
    if (p == n) {
      // compare cur with best lexicographically over columns
      if (!have_best || std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) {
        best = cur;
        have_best = true;
      }
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if ((used >> v) & 1 || colors[v] != slot_color[p]) continue;
      std::uint32_t col = 0;
      for (int i = 0; i < p; ++i) col = (col << 1) | ((adj[placed[i]] >> v) & 1u);
      cur[p] = col;
      if (have_best) {
        // prune when the prefix 0..p already exceeds best's prefix
        bool greater = false;
        for (int i = 0; i <= p; ++i) {
          if (cur[i] != best[i]) {
            greater = cur[i] > best[i];
            break;
          }
        }
        if (greater) continue;
      }
      placed[p] = v;
      used |= static_cast<std::uint16_t>(1u << v);
      self(self, p + 1);
      used &= static_cast<std::uint16_t>(~(1u << v));
    }
  };
  rec_fixed(rec_fixed, 0);

  // Emit as graph6 of the canonical matrix.
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int p = 1; p < n; ++p)
    for (int i = 0; i < p; ++i)
      if ((best[p] >> (p - 1 - i)) & 1u) edges.emplace_back(i, p);
  return to_graph6(Graph(n, edges));
}

}  // namespace trailtrap
