#include <gtest/gtest.h>

#include "support/graphs.hpp"
#include "support/temp_dir.hpp"
#include "zfb/dataset.hpp"

#ifndef ZFB_DATA_DIR
#error "ZFB_DATA_DIR must point at the bundled datasets"
#endif

namespace zfb {
namespace {

using namespace zfb::testing;

// P3 (nodes 1-3) and a triangle (nodes 4-6), edges listed both ways.
void write_toy(const std::filesystem::path& dir) {
  write_text(dir / "TOY_A.txt", "1, 2\n2, 1\n2, 3\n3, 2\n4, 5\n4, 6\n5, 4\n5, 6\n6, 4\n6, 5\n");
  write_text(dir / "TOY_graph_indicator.txt", "1\n1\n1\n2\n2\n2\n");
  write_text(dir / "TOY_graph_labels.txt", "-1\n1\n");
  write_text(dir / "TOY_node_labels.txt", "0\n1\n0\n2\n2\n3\n");
}

TEST(ReadDatasetTest, Toy) {
  TempDir dir;
  write_toy(dir.path());
  const DatasetBundle b = read_dataset(dir.path(), "TOY");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.graphs[0], path_graph(3));
  EXPECT_EQ(b.graphs[1], complete_graph(3));
  EXPECT_EQ(b.labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(b.label_values, (std::vector<long long>{-1, 1}));
  ASSERT_TRUE(b.node_labels);
  EXPECT_EQ((*b.node_labels)[1], (std::vector<long long>{2, 2, 3}));
}

TEST(ReadDatasetTest, DropsSelfLoopsAndDuplicates) {
  TempDir dir;
  write_toy(dir.path());
  write_text(dir / "TOY_A.txt", "1, 2\n1, 2\n2, 1\n3, 3\n2, 3\n4, 5\n5, 6\n4, 6\n");
  ReadReport report;
  const DatasetBundle b = read_dataset(dir.path(), "TOY", &report);
  EXPECT_EQ(report.self_loops_dropped, 1u);
  EXPECT_EQ(report.duplicates_dropped, 1u);
  EXPECT_EQ(b.graphs[0], path_graph(3));
}

TEST(ReadDatasetTest, Errors) {
  TempDir dir;
  write_toy(dir.path());
  EXPECT_THROW(read_dataset(dir.path(), "NOPE"), IoError);

  write_text(dir / "TOY_A.txt", "1, 2\n2, 9\n");
  try {
    read_dataset(dir.path(), "TOY");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }

  write_text(dir / "TOY_A.txt", "1, 2\n3, 4\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);  // edge across graphs

  write_text(dir / "TOY_A.txt", "1 2\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);

  write_toy(dir.path());
  write_text(dir / "TOY_graph_indicator.txt", "1\n1\n1\n3\n2\n2\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);  // dangling graph id

  write_toy(dir.path());
  write_text(dir / "TOY_graph_labels.txt", "-1\n1\n1\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);  // graph without nodes

  write_toy(dir.path());
  write_text(dir / "TOY_node_labels.txt", "0\n1\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);

  write_toy(dir.path());
  write_text(dir / "TOY_graph_labels.txt", "-1\nx\n");
  EXPECT_THROW(read_dataset(dir.path(), "TOY"), FormatError);
}

TEST(WriteDatasetTest, ToyRoundTripIsExact) {
  TempDir dir;
  write_toy(dir.path());
  const DatasetBundle b = read_dataset(dir.path(), "TOY");
  TempDir out;
  write_dataset(b, out.path());
  EXPECT_EQ(read_dataset(out.path(), "TOY"), b);
  // the toy input is already in canonical order
  for (const char* f : {"TOY_A.txt", "TOY_graph_indicator.txt", "TOY_graph_labels.txt", "TOY_node_labels.txt"})
    EXPECT_EQ(read_text(out / f), read_text(dir / f)) << f;
}

TEST(WriteDatasetTest, EdgelessGraph) {
  DatasetBundle b;
  b.name = "E";
  b.graphs = {Graph(3)};
  b.labels = {0};
  b.label_values = {7};
  TempDir out;
  write_dataset(b, out.path());
  EXPECT_EQ(read_text(out / "E_A.txt"), "");
  EXPECT_EQ(read_text(out / "E_graph_indicator.txt"), "1\n1\n1\n");
  EXPECT_EQ(read_text(out / "E_graph_labels.txt"), "7\n");
  EXPECT_FALSE(std::filesystem::exists(out / "E_node_labels.txt"));
  EXPECT_EQ(read_dataset(out.path(), "E"), b);
}

TEST(WriteDatasetTest, RandomBundlesRoundTrip) {
  Rng rng(51);
  for (int t = 0; t < 10; ++t) {
    DatasetBundle b;
    b.name = "R";
    b.label_values = {0, 1, 2};
    std::vector<std::vector<long long>> nl;
    for (int i = 0; i < 15; ++i) {
      b.graphs.push_back(random_gnp(rng, uniform_between(rng, 1, 12), 0.3));
      b.labels.push_back(static_cast<int>(uniform_index(rng, 3)));
      nl.emplace_back(b.graphs.back().vertex_count());
      for (auto& x : nl.back()) x = static_cast<long long>(uniform_index(rng, 5));
    }
    // every class must occur for the label normalization to be the identity
    b.labels[0] = 0, b.labels[1] = 1, b.labels[2] = 2;
    b.node_labels = nl;
    TempDir out;
    write_dataset(b, out.path());
    const DatasetBundle back = read_dataset(out.path(), "R");
    EXPECT_EQ(back, b);
    TempDir again;
    write_dataset(back, again.path());
    EXPECT_EQ(read_text(again / "R_A.txt"), read_text(out / "R_A.txt"));
  }
}

TEST(LeadersFileTest, RoundTrip) {
  TempDir dir;
  const std::vector<LeaderSet> leaders{{0, 4}, {}, {2}};
  write_leaders(leaders, dir / "L_leaders.txt");
  EXPECT_EQ(read_text(dir / "L_leaders.txt"), "0 4\n\n2\n");
  EXPECT_EQ(read_leaders(dir / "L_leaders.txt"), leaders);
  write_text(dir / "bad.txt", "1 1\n");
  EXPECT_THROW(read_leaders(dir / "bad.txt"), FormatError);
}

TEST(SparsifyTest, TreesAreUnchanged) {
  DatasetBundle b;
  b.name = "T";
  b.graphs = {path_graph(5), star_graph(4), Graph(1)};
  b.labels = {0, 1, 0};
  b.label_values = {0, 1};
  for (auto method : {BackboneMethod::zfs, BackboneMethod::random_tree, BackboneMethod::distance_tree}) {
    const SparsifyResult r = sparsify_dataset(b, method, 3, 2);
    EXPECT_EQ(r.bundle, b) << to_string(method);
  }
}

TEST(SparsifyTest, PreservesLabelsAndNeverAddsEdges) {
  Rng rng(52);
  DatasetBundle b;
  b.name = "S";
  b.label_values = {0, 1};
  std::vector<std::vector<long long>> nl;
  for (int i = 0; i < 40; ++i) {
    b.graphs.push_back(random_gnp(rng, uniform_between(rng, 2, 20), 0.25));
    b.labels.push_back(i % 2);
    nl.emplace_back(b.graphs.back().vertex_count(), i);
  }
  b.node_labels = nl;
  for (auto method : {BackboneMethod::zfs, BackboneMethod::distance, BackboneMethod::distance_tree,
                      BackboneMethod::random_tree}) {
    const SparsifyResult r = sparsify_dataset(b, method, 9, 3);
    EXPECT_EQ(r.bundle.labels, b.labels);
    EXPECT_EQ(r.bundle.node_labels, b.node_labels);
    ASSERT_EQ(r.leaders.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Graph& host = b.graphs[i];
      const Graph& sparse = r.bundle.graphs[i];
      EXPECT_EQ(sparse.vertex_count(), host.vertex_count());
      EXPECT_LE(sparse.edge_count(), host.edge_count());
      for (const Edge& e : sparse.edges()) EXPECT_TRUE(host.has_edge(e));
      if (is_tree_method(method)) {
        EXPECT_EQ(sparse.edge_count(), host.vertex_count() - connected_components(host).count);
      }
      EXPECT_EQ(r.leaders[i].empty(), method == BackboneMethod::random_tree);
    }
    // independent of the worker count
    EXPECT_EQ(sparsify_dataset(b, method, 9, 1).bundle, r.bundle);
  }
}

TEST(StatsTest, Toy) {
  TempDir dir;
  write_toy(dir.path());
  const DatasetBundle b = read_dataset(dir.path(), "TOY");
  const StatsReport r = compute_stats(b, b);
  EXPECT_EQ(r.graph_count, 2u);
  EXPECT_EQ(r.node_min, 3u);
  EXPECT_EQ(r.node_max, 3u);
  EXPECT_DOUBLE_EQ(r.avg_degree_original, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.density_min_original, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.density_max_original, 1.0);
  EXPECT_DOUBLE_EQ(*r.avg_degree_backbone, 5.0 / 3.0);
}

TEST(StatsTest, SingleVertexGraphsSkipDensity) {
  DatasetBundle b;
  b.graphs = {Graph(1), path_graph(2)};
  b.labels = {0, 0};
  b.label_values = {0};
  const StatsReport r = compute_stats(b);
  EXPECT_DOUBLE_EQ(r.density_min_original, 1.0);
  EXPECT_DOUBLE_EQ(r.avg_degree_original, 0.5);
}

TEST(StatsTest, MisalignedBundles) {
  DatasetBundle a, b;
  a.graphs = {path_graph(3)};
  a.labels = {0};
  b.graphs = {path_graph(4)};
  b.labels = {0};
  EXPECT_THROW(compute_stats(a, b), InputError);
  b.graphs.push_back(path_graph(3));
  EXPECT_THROW(compute_stats(a, b), InputError);
}

TEST(StatsTest, TreeClosedForm) {
  Rng rng(53);
  DatasetBundle b;
  double closed_form = 0.0;
  for (int i = 0; i < 30; ++i) {
    b.graphs.push_back(random_gnp(rng, uniform_between(rng, 2, 20), 0.2));
    b.labels.push_back(0);
    const double n = static_cast<double>(b.graphs.back().vertex_count());
    closed_form += 2.0 * (n - static_cast<double>(connected_components(b.graphs.back()).count)) / n;
  }
  b.label_values = {0};
  const StatsReport r = compute_stats(b, sparsify_dataset(b, BackboneMethod::zfs, 0).bundle);
  EXPECT_NEAR(*r.avg_degree_backbone, closed_form / 30.0, 1e-12);
}

TEST(MutagTest, ShapeAndRoundTrip) {
  const std::filesystem::path dir = std::filesystem::path(ZFB_DATA_DIR) / "MUTAG";
  const DatasetBundle b = read_dataset(dir, "MUTAG");
  const StatsReport r = compute_stats(b);
  EXPECT_EQ(r.graph_count, 188u);
  EXPECT_EQ(r.node_min, 10u);
  EXPECT_EQ(r.node_max, 28u);
  TempDir out;
  write_dataset(b, out.path());
  EXPECT_EQ(read_dataset(out.path(), "MUTAG"), b);
}

}  // namespace
}  // namespace zfb
