#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zfb/errors.hpp"
#include "zfb/graph.hpp"
#include "zfb/random.hpp"
#include "zfb/zero_forcing.hpp"

namespace zfb {

enum class BackboneMethod {
  zfs,            // force-edge paths completed to a spanning forest
  distance,       // union of leader BFS trees; preserves every leader distance
  distance_tree,  // spanning forest seeded with the distance backbone's edges
  random_tree,    // Kruskal over a seeded random edge order
};

inline std::string_view to_string(BackboneMethod m) {
  switch (m) {
    case BackboneMethod::zfs: return "zfs";
    case BackboneMethod::distance: return "distance";
    case BackboneMethod::distance_tree: return "distance-tree";
    case BackboneMethod::random_tree: return "random-tree";
  }
  return "?";
}

inline std::optional<BackboneMethod> parse_backbone_method(std::string_view s) {
  if (s == "zfs") return BackboneMethod::zfs;
  if (s == "distance") return BackboneMethod::distance;
  if (s == "distance-tree") return BackboneMethod::distance_tree;
  if (s == "random-tree") return BackboneMethod::random_tree;
  return std::nullopt;
}

inline bool is_tree_method(BackboneMethod m) { return m != BackboneMethod::distance; }

/// A leader set plus an edge subset of a host graph.
///
/// force_edges is filled for the zfs method only and is always a subset of
/// kept_edges. Both edge lists are sorted.
struct Backbone {
  std::size_t vertex_count = 0;
  LeaderSet leaders;
  std::vector<Edge> kept_edges;
  std::vector<Edge> force_edges;
  BackboneMethod method = BackboneMethod::zfs;

  Graph graph() const { return Graph(vertex_count, kept_edges); }
};

namespace detail {

// Kruskal pass: accept edges from `order` that join two different trees.
inline void grow_forest(UnionFind& uf, std::span<const Edge> order, std::vector<Edge>& kept) {
  for (const Edge& e : order)
    if (uf.unite(e.u, e.v)) kept.push_back(e);
}

// Per non-root vertex reachable from root, the edge to its smallest-id
// neighbor one hop closer to root.
inline std::vector<Edge> bfs_tree_edges(const Graph& g, Vertex root) {
  const DistanceMap d = bfs_distances(g, root);
  std::vector<Edge> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == root || !d.reachable(v)) continue;
    for (Vertex w : g.neighbors(v))
      if (d.dist[w] + 1 == d.dist[v]) {
        out.emplace_back(v, w);
        break;
      }
  }
  return out;
}

}  // namespace detail

/// Zero-forcing learning backbone.
///
/// Leaders come from greedy_zfs. The forcing chains from those leaders are
/// kept, then host edges are scanned in ascending order and accepted whenever
/// they merge two chain components. The result is a spanning tree on a
/// connected host (one tree per component otherwise) that contains every
/// force edge, so the leaders still force the whole tree.
inline Backbone zfs_backbone(const Graph& g) {
  Backbone b;
  b.vertex_count = g.vertex_count();
  b.method = BackboneMethod::zfs;
  b.leaders = greedy_zfs(g);
  const ZeroForcingResult zf = apply_zero_forcing(g, b.leaders);
  b.force_edges = zf.record.force_edges();

  UnionFind uf(g.vertex_count());
  for (const Edge& e : b.force_edges) uf.unite(e.u, e.v);
  b.kept_edges = b.force_edges;
  detail::grow_forest(uf, g.edges(), b.kept_edges);
  std::sort(b.kept_edges.begin(), b.kept_edges.end());
  return b;
}

/// Union over leaders of a BFS shortest-path tree rooted at that leader
/// (smallest-id parent). Every leader-to-vertex distance equals the host's.
inline Backbone distance_backbone(const Graph& g, const LeaderSet& leaders) {
  if (leaders.empty()) throw InputError("distance backbone needs at least one leader");
  leaders.validate(g);
  Backbone b;
  b.vertex_count = g.vertex_count();
  b.method = BackboneMethod::distance;
  b.leaders = leaders;
  for (Vertex l : leaders) {
    const auto tree = detail::bfs_tree_edges(g, l);
    b.kept_edges.insert(b.kept_edges.end(), tree.begin(), tree.end());
  }
  std::sort(b.kept_edges.begin(), b.kept_edges.end());
  b.kept_edges.erase(std::unique(b.kept_edges.begin(), b.kept_edges.end()), b.kept_edges.end());
  return b;
}

/// Spanning-forest variant of the distance backbone. The BFS tree of the
/// smallest leader goes in first (so distances from it are exact), then the
/// other leaders' BFS trees, then any host edge still needed for spanning.
inline Backbone distance_tree_backbone(const Graph& g, const LeaderSet& leaders) {
  if (leaders.empty()) throw InputError("distance backbone needs at least one leader");
  leaders.validate(g);
  Backbone b;
  b.vertex_count = g.vertex_count();
  b.method = BackboneMethod::distance_tree;
  b.leaders = leaders;
  UnionFind uf(g.vertex_count());
  for (Vertex l : leaders) detail::grow_forest(uf, detail::bfs_tree_edges(g, l), b.kept_edges);
  detail::grow_forest(uf, g.edges(), b.kept_edges);
  std::sort(b.kept_edges.begin(), b.kept_edges.end());
  return b;
}

/// Random spanning forest: Kruskal over a seeded shuffle of the edge list.
inline Backbone random_spanning_tree(const Graph& g, std::uint64_t seed) {
  Backbone b;
  b.vertex_count = g.vertex_count();
  b.method = BackboneMethod::random_tree;
  std::vector<Edge> order = g.edges();
  Rng rng(seed);
  shuffle(std::span<Edge>(order), rng);
  UnionFind uf(g.vertex_count());
  detail::grow_forest(uf, order, b.kept_edges);
  std::sort(b.kept_edges.begin(), b.kept_edges.end());
  return b;
}

struct MonotonicityReport {
  std::size_t baseline_zeta = 0;          // zeta(host, leaders)
  std::vector<std::size_t> trial_zeta;    // zeta of each sampled supergraph
  std::vector<bool> trial_pass;

  std::size_t passed() const { return static_cast<std::size_t>(std::count(trial_pass.begin(), trial_pass.end(), true)); }
  bool all_pass() const { return passed() == trial_pass.size(); }
};

namespace detail {

inline void check_zfs_backbone_of(const Graph& g, const Backbone& b) {
  if (b.method != BackboneMethod::zfs) throw InputError("monotonicity check needs a zfs backbone");
  if (b.vertex_count != g.vertex_count()) throw InputError("backbone and host vertex counts differ");
  b.leaders.validate(g);
  for (const Edge& e : b.force_edges)
    if (!g.has_edge(e)) throw InputError("backbone force edge is not a host edge");
}

inline std::vector<Edge> optional_edges(const Graph& g, const Backbone& b) {
  std::vector<Edge> out;
  std::set_difference(g.edges().begin(), g.edges().end(), b.force_edges.begin(), b.force_edges.end(),
                      std::back_inserter(out));
  return out;
}

inline std::size_t zeta_with(const Graph& g, const Backbone& b, std::span<const Edge> extra) {
  std::vector<Edge> edges = b.force_edges;
  edges.insert(edges.end(), extra.begin(), extra.end());
  return zeta(Graph(g.vertex_count(), edges), b.leaders);
}

}  // namespace detail

/// Samples `trials` edge sets E' with force_edges ⊆ E' ⊆ E (each optional
/// host edge kept with probability 1/2) and checks
/// zeta((V, E'), leaders) >= zeta(host, leaders) for each.
inline MonotonicityReport verify_zfs_backbone_monotonicity(const Graph& g, const Backbone& b, std::size_t trials,
                                                           std::uint64_t seed) {
  detail::check_zfs_backbone_of(g, b);
  MonotonicityReport report;
  report.baseline_zeta = zeta(g, b.leaders);
  const std::vector<Edge> optional = detail::optional_edges(g, b);
  Rng rng(seed);
  std::vector<Edge> extra;
  for (std::size_t t = 0; t < trials; ++t) {
    extra.clear();
    for (const Edge& e : optional)
      if (rng() >> 63) extra.push_back(e);
    const std::size_t z = detail::zeta_with(g, b, extra);
    report.trial_zeta.push_back(z);
    report.trial_pass.push_back(z >= report.baseline_zeta);
  }
  return report;
}

/// Same check over every superset of the force edges. Refuses more than
/// max_optional optional edges (2^max_optional subgraphs).
inline MonotonicityReport verify_zfs_backbone_monotonicity_exhaustive(const Graph& g, const Backbone& b,
                                                                      std::size_t max_optional = 20) {
  detail::check_zfs_backbone_of(g, b);
  const std::vector<Edge> optional = detail::optional_edges(g, b);
  if (optional.size() > max_optional)
    throw CapabilityError("exhaustive monotonicity check limited to " + std::to_string(max_optional) +
                          " optional edges, got " + std::to_string(optional.size()));
  MonotonicityReport report;
  report.baseline_zeta = zeta(g, b.leaders);
  std::vector<Edge> extra;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << optional.size()); ++mask) {
    extra.clear();
    for (std::size_t i = 0; i < optional.size(); ++i)
      if (mask >> i & 1) extra.push_back(optional[i]);
    const std::size_t z = detail::zeta_with(g, b, extra);
    report.trial_zeta.push_back(z);
    report.trial_pass.push_back(z >= report.baseline_zeta);
  }
  return report;
}

}  // namespace zfb
