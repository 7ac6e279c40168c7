#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zfb/errors.hpp"

namespace zfb {

using Vertex = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices [0, n).
///
/// Neighbor lists are sorted ascending and the edge list is sorted
/// lexicographically, so every traversal in this library is deterministic.
class Graph {
public:
  Graph() = default;

  explicit Graph(std::size_t n) : adjacency_(n) {}

  /// Throws InputError on self-loops, duplicate edges or endpoints >= n.
  Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n), edges_(edges.begin(), edges.end()) {
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      if (e.v >= n) throw InputError("edge endpoint " + std::to_string(e.v) + " out of range (n=" + std::to_string(n) + ")");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw InputError("duplicate edge");
    for (const Edge& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::vector<Vertex>& neighbors(Vertex u) const {
    check_vertex(u);
    return adjacency_[u];
  }

  std::size_t degree(Vertex u) const { return neighbors(u).size(); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= vertex_count() || b >= vertex_count() || a == b) return false;
    return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
  }

  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  void check_vertex(Vertex u) const {
    if (u >= vertex_count())
      throw InputError("vertex " + std::to_string(u) + " out of range (n=" + std::to_string(vertex_count()) + ")");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False when a and b were already joined.
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }

  std::size_t set_count() const noexcept { return sets_; }

private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct DistanceMap {
  Vertex source = 0;
  std::vector<std::uint32_t> dist;  // kUnreachable for other components

  bool reachable(Vertex v) const { return dist.at(v) != kUnreachable; }
};

struct ComponentLabeling {
  std::vector<std::uint32_t> labels;
  std::size_t count = 0;
};

inline const std::vector<Vertex>& neighbors(const Graph& g, Vertex u) { return g.neighbors(u); }

inline double average_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw InputError("average degree of an empty graph");
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
}

inline double density(const Graph& g) {
  const auto n = static_cast<double>(g.vertex_count());
  if (g.vertex_count() < 2) throw InputError("density needs at least two vertices");
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

inline DistanceMap bfs_distances(const Graph& g, Vertex source) {
  g.check_vertex(source);
  DistanceMap out{source, std::vector<std::uint32_t>(g.vertex_count(), kUnreachable)};
  std::queue<Vertex> frontier;
  out.dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(u)) {
      if (out.dist[w] == kUnreachable) {
        out.dist[w] = out.dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return out;
}

inline ComponentLabeling connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  ComponentLabeling out{std::vector<std::uint32_t>(n, kUnreachable), 0};
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (out.labels[s] != kUnreachable) continue;
    const auto label = static_cast<std::uint32_t>(out.count++);
    out.labels[s] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (out.labels[w] == kUnreachable) {
          out.labels[w] = label;
          stack.push_back(w);
        }
      }
    }
  }
  return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

/// True iff edge_subset is acyclic and spans every component of g with one tree.
/// Throws InputError if a subset edge is not an edge of g.
inline bool is_spanning_forest(const Graph& g, std::span<const Edge> edge_subset) {
  for (const Edge& e : edge_subset)
    if (!g.has_edge(e))
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the host graph");
  UnionFind uf(g.vertex_count());
  for (const Edge& e : edge_subset)
    if (!uf.unite(e.u, e.v)) return false;
  return uf.set_count() == connected_components(g).count;
}

namespace detail {

// Laplacian of g with row/column `removed` deleted.
inline std::vector<std::vector<BigInt>> reduced_laplacian(const Graph& g, Vertex removed) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> index(n, 0);
  std::size_t k = 0;
  for (Vertex v = 0; v < n; ++v) index[v] = (v == removed) ? n : k++;
  std::vector<std::vector<BigInt>> lap(n - 1, std::vector<BigInt>(n - 1, 0));
  for (Vertex v = 0; v < n; ++v)
    if (v != removed) lap[index[v]][index[v]] = static_cast<long>(g.degree(v));
  for (const Edge& e : g.edges())
    if (e.u != removed && e.v != removed) {
      lap[index[e.u]][index[e.v]] = -1;
      lap[index[e.v]][index[e.u]] = -1;
    }
  return lap;
}

}  // namespace detail

/// Exact spanning-tree count by the Kirchhoff cofactor, evaluated with
/// fraction-free (Bareiss) elimination. Disconnected graphs return 0.
inline BigInt spanning_tree_count(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InputError("spanning tree count of an empty graph");
  if (!is_connected(g)) return 0;
  if (n == 1) return 1;

  auto a = detail::reduced_laplacian(g, 0);
  const std::size_t k = n - 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p][p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      a[i][p] = 0;
    }
    prev = a[p][p];
  }
  BigInt det = a[k - 1][k - 1];
  return sign < 0 ? BigInt(-det) : det;
}

/// Second route to the same count: exact rational Gaussian elimination with
/// largest-magnitude pivoting on the cofactor that deletes the last vertex.
inline BigInt spanning_tree_count_crosscheck(const Graph& g) {
  using Rational = boost::multiprecision::cpp_rational;
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InputError("spanning tree count of an empty graph");
  if (!is_connected(g)) return 0;
  if (n == 1) return 1;

  const auto lap = detail::reduced_laplacian(g, static_cast<Vertex>(n - 1));
  const std::size_t k = n - 1;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(lap[i][j]);

  Rational det = 1;
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t best = p;
    for (std::size_t r = p + 1; r < k; ++r)
      if (abs(a[r][p]) > abs(a[best][p])) best = r;
    if (a[best][p] == 0) return 0;
    if (best != p) {
      std::swap(a[p], a[best]);
      det = -det;
    }
    det *= a[p][p];
    for (std::size_t i = p + 1; i < k; ++i) {
      if (a[i][p] == 0) continue;
      const Rational factor = a[i][p] / a[p][p];
      for (std::size_t j = p; j < k; ++j) a[i][j] -= factor * a[p][j];
    }
  }
  if (boost::multiprecision::denominator(det) != 1) throw std::logic_error("non-integral determinant");
  return boost::multiprecision::numerator(det);
}

/// ((2m - maxdeg - mindeg - 1) / (n - 3))^(n - 3). Requires n > 3.
/// Not guaranteed to dominate the true count on every small graph.
inline double spanning_tree_upper_bound(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 3) throw InputError("spanning tree upper bound requires n > 3");
  std::size_t max_deg = 0;
  std::size_t min_deg = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < n; ++v) {
    max_deg = std::max(max_deg, g.degree(v));
    min_deg = std::min(min_deg, g.degree(v));
  }
  const double base = (2.0 * static_cast<double>(g.edge_count()) - static_cast<double>(max_deg) -
                       static_cast<double>(min_deg) - 1.0) /
                      static_cast<double>(n - 3);
  return std::pow(base, static_cast<double>(n - 3));
}

}  // namespace zfb
