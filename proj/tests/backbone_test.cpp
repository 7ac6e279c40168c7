#include <gtest/gtest.h>

#include <set>

#include "support/graphs.hpp"
#include "zfb/backbone.hpp"
#include "zfb/controllability.hpp"

namespace zfb {
namespace {

using namespace zfb::testing;

void expect_zfs_backbone_invariants(const Graph& g, const Backbone& b) {
  ASSERT_EQ(b.method, BackboneMethod::zfs);
  for (const Edge& e : b.kept_edges) EXPECT_TRUE(g.has_edge(e));
  EXPECT_TRUE(is_spanning_forest(g, b.kept_edges));
  EXPECT_TRUE(std::includes(b.kept_edges.begin(), b.kept_edges.end(), b.force_edges.begin(), b.force_edges.end()));
  EXPECT_TRUE(is_zfs(b.graph(), b.leaders));
  EXPECT_TRUE(is_zfs(g, b.leaders));
}

TEST(ZfsBackboneTest, PathIsItsOwnBackbone) {
  const Graph p4 = path_graph(4);
  const Backbone b = zfs_backbone(p4);
  EXPECT_EQ(b.leaders, LeaderSet({0}));
  EXPECT_EQ(b.kept_edges, p4.edges());
  expect_zfs_backbone_invariants(p4, b);
}

TEST(ZfsBackboneTest, CompleteGraph) {
  const Graph k4 = complete_graph(4);
  const Backbone b = zfs_backbone(k4);
  EXPECT_EQ(b.leaders.size(), 3u);
  EXPECT_EQ(b.force_edges.size(), 1u);
  EXPECT_EQ(b.kept_edges.size(), 3u);
  expect_zfs_backbone_invariants(k4, b);
  EXPECT_EQ(apply_zero_forcing(b.graph(), b.leaders).derived.size(), 4u);
}

TEST(ZfsBackboneTest, ConnectorCountOnConnectedGraphs) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_connected_gnp(rng, uniform_between(rng, 2, 25), 0.1 + 0.5 * uniform01(rng));
    const Backbone b = zfs_backbone(g);
    expect_zfs_backbone_invariants(g, b);
    const std::size_t n = g.vertex_count();
    EXPECT_EQ(b.force_edges.size(), n - b.leaders.size());
    EXPECT_EQ(connected_components(Graph(n, b.force_edges)).count, b.leaders.size());
    EXPECT_EQ(b.kept_edges.size() - b.force_edges.size(), b.leaders.size() - 1);
    EXPECT_EQ(b.kept_edges.size(), n - 1);
  }
}

TEST(ZfsBackboneTest, DisconnectedHostGivesForest) {
  Rng rng(32);
  for (int t = 0; t < 60; ++t) {
    const Graph g = random_gnp(rng, uniform_between(rng, 2, 20), 0.12);
    const Backbone b = zfs_backbone(g);
    expect_zfs_backbone_invariants(g, b);
    EXPECT_EQ(b.kept_edges.size(), g.vertex_count() - connected_components(g).count);
  }
}

TEST(ZfsBackboneTest, SparserWhenHostHasCycle) {
  const Graph g = petersen_graph();
  EXPECT_LT(zfs_backbone(g).kept_edges.size(), g.edge_count());
  EXPECT_LT(random_spanning_tree(g, 0).kept_edges.size(), g.edge_count());
  EXPECT_LT(distance_backbone(g, {0}).kept_edges.size(), g.edge_count());
}

TEST(DistanceBackboneTest, Star) {
  const Graph s = star_graph(5);
  EXPECT_EQ(distance_backbone(s, {0}).kept_edges, s.edges());
}

TEST(DistanceBackboneTest, Cycle) {
  const Graph c4 = cycle_graph(4);
  const Backbone b = distance_backbone(c4, {0});
  EXPECT_EQ(b.kept_edges.size(), 3u);
  EXPECT_EQ(bfs_distances(b.graph(), 0).dist, (std::vector<std::uint32_t>{0, 1, 2, 1}));
  // vertex 2 hangs off its smallest-id parent
  EXPECT_EQ(b.kept_edges, (std::vector<Edge>{Edge(0, 1), Edge(0, 3), Edge(1, 2)}));
}

TEST(DistanceBackboneTest, RequiresLeaders) {
  EXPECT_THROW(distance_backbone(path_graph(3), LeaderSet{}), InputError);
  EXPECT_THROW(distance_backbone(path_graph(3), LeaderSet{7}), InputError);
}

TEST(DistanceBackboneTest, PreservesLeaderDistances) {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_gnp(rng, uniform_between(rng, 2, 30), 0.05 + 0.4 * uniform01(rng));
    const std::size_t m = uniform_between(rng, 1, std::min<std::size_t>(4, g.vertex_count()));
    const LeaderSet leaders = random_leaders(rng, g.vertex_count(), m);
    const Backbone b = distance_backbone(g, leaders);
    const DistanceMatrix host = floyd_warshall(g);
    const DistanceMatrix sparse = floyd_warshall(b.graph());
    for (Vertex l : leaders) EXPECT_EQ(sparse[l], host[l]);
    EXPECT_LE(b.kept_edges.size(), m * (g.vertex_count() - 1));
    for (const Edge& e : b.kept_edges) EXPECT_TRUE(g.has_edge(e));
  }
}

TEST(DistanceTreeBackboneTest, SpanningForestPreservingFirstLeader) {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_gnp(rng, uniform_between(rng, 2, 25), 0.05 + 0.4 * uniform01(rng));
    const LeaderSet leaders =
        random_leaders(rng, g.vertex_count(), uniform_between(rng, 1, std::min<std::size_t>(4, g.vertex_count())));
    const Backbone b = distance_tree_backbone(g, leaders);
    EXPECT_TRUE(is_spanning_forest(g, b.kept_edges));
    const Vertex first = leaders.vertices().front();
    EXPECT_EQ(bfs_distances(b.graph(), first).dist, bfs_distances(g, first).dist);
  }
}

TEST(RandomTreeTest, TreeInputIsReturned) {
  const Graph t = path_graph(6);
  for (std::uint64_t seed : {0u, 1u, 99u}) EXPECT_EQ(random_spanning_tree(t, seed).kept_edges, t.edges());
}

TEST(RandomTreeTest, CycleLosesOneEdge) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Backbone b = random_spanning_tree(cycle_graph(4), seed);
    EXPECT_EQ(b.kept_edges.size(), 3u);
    EXPECT_TRUE(is_spanning_forest(cycle_graph(4), b.kept_edges));
    EXPECT_TRUE(b.leaders.empty());
  }
}

TEST(RandomTreeTest, VariesWithSeed) {
  const Graph k5 = complete_graph(5);
  std::set<std::vector<Edge>> distinct;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Backbone b = random_spanning_tree(k5, seed);
    EXPECT_TRUE(is_spanning_forest(k5, b.kept_edges));
    EXPECT_EQ(random_spanning_tree(k5, seed).kept_edges, b.kept_edges);
    distinct.insert(b.kept_edges);
  }
  EXPECT_GE(distinct.size(), 2u);
}

TEST(MonotonicityTest, PathAlwaysPasses) {
  const Graph p4 = path_graph(4);
  const MonotonicityReport r = verify_zfs_backbone_monotonicity(p4, zfs_backbone(p4), 10, 0);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.baseline_zeta, 4u);
  for (std::size_t z : r.trial_zeta) EXPECT_EQ(z, 4u);
}

TEST(MonotonicityTest, CompleteGraphExhaustiveAndSampled) {
  const Graph k4 = complete_graph(4);
  const Backbone b = zfs_backbone(k4);
  const MonotonicityReport all = verify_zfs_backbone_monotonicity_exhaustive(k4, b);
  EXPECT_EQ(all.trial_pass.size(), std::size_t{1} << (k4.edge_count() - b.force_edges.size()));
  EXPECT_TRUE(all.all_pass());
  EXPECT_TRUE(verify_zfs_backbone_monotonicity(k4, b, 100, 7).all_pass());
}

TEST(MonotonicityTest, Petersen) {
  const Graph g = petersen_graph();
  EXPECT_TRUE(verify_zfs_backbone_monotonicity(g, zfs_backbone(g), 200, 3).all_pass());
}

TEST(MonotonicityTest, RejectsMismatchedInputs) {
  const Graph g = cycle_graph(5);
  EXPECT_THROW(verify_zfs_backbone_monotonicity(g, random_spanning_tree(g, 0), 5, 0), InputError);
  EXPECT_THROW(verify_zfs_backbone_monotonicity(path_graph(6), zfs_backbone(g), 5, 0), InputError);
  Backbone foreign = zfs_backbone(path_graph(5));
  foreign.force_edges.push_back(Edge(0, 2));
  EXPECT_THROW(verify_zfs_backbone_monotonicity(path_graph(5), foreign, 5, 0), InputError);
}

// Supersets that drop a force edge may lose forcing; the check is specific
// to supersets of the recorded force edges.
TEST(MonotonicityTest, DroppingForceEdgeCanHurt) {
  const Graph p4 = path_graph(4);
  EXPECT_LT(zeta(Graph(4, {Edge(0, 1), Edge(2, 3)}), {0}), zeta(p4, {0}));
}

TEST(BackboneControllabilityTest, TreeIsFullyControllable) {
  Rng rng(35);
  for (int t = 0; t < 30; ++t) {
    const Graph g = random_connected_gnp(rng, uniform_between(rng, 3, 20), 0.3);
    const Backbone b = zfs_backbone(g);
    EXPECT_EQ(generic_rank(b.graph(), b.leaders, 10, t).rank, g.vertex_count());
  }
}

}  // namespace
}  // namespace zfb
