// zfb: sparsify graph-classification datasets into controllability backbones.
//
// Exit codes: 0 success, 1 input/format/I-O error, 2 invariant violation.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "zfb/backbone.hpp"
#include "zfb/dataset.hpp"
#include "zfb/graph.hpp"
#include "zfb/report.hpp"
#include "zfb/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;

struct RunConfig {
  std::string input_dir;
  std::string output_dir;
  std::string backbone_dir;
  std::vector<std::string> names;
  std::string method = "zfs";
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  double rank_tol = 1e-9;
  bool tree = false;
  bool rank_check = false;
  bool json = false;
  unsigned jobs = 0;
  std::size_t graph_index = 0;
};

zfb::BackboneMethod resolve_method(const RunConfig& cfg) {
  auto m = zfb::parse_backbone_method(cfg.method);
  if (!m) throw zfb::InputError("unknown method '" + cfg.method + "'");
  if (*m == zfb::BackboneMethod::distance && cfg.tree) return zfb::BackboneMethod::distance_tree;
  return *m;
}

void print_failures(const zfb::DatasetVerdict& verdict) {
  std::size_t shown = 0;
  for (const auto& v : verdict.failing) {
    if (shown++ == 10) break;
    std::cerr << "graph " << v.index << ": " << v.failures.front() << '\n';
  }
}

int cmd_sparsify(const RunConfig& cfg) {
  const auto method = resolve_method(cfg);
  const std::string& name = cfg.names.front();
  zfb::ReadReport read_report;
  const zfb::DatasetBundle original = zfb::read_dataset(cfg.input_dir, name, &read_report);
  if (read_report.self_loops_dropped || read_report.duplicates_dropped)
    std::cerr << "warning: dropped " << read_report.self_loops_dropped << " self-loops and "
              << read_report.duplicates_dropped << " duplicate edge lines\n";

  const zfb::SparsifyResult result = zfb::sparsify_dataset(original, method, cfg.seed, cfg.jobs);

  zfb::VerifyOptions opts;
  opts.method = method;
  opts.monotonicity_trials = 0;
  const auto verdict = zfb::verify_sparsified_dataset(original, result.bundle, result.leaders, opts);
  if (!verdict.ok()) {
    std::cerr << "invariant violation in " << verdict.failing.size() << " graphs\n";
    print_failures(verdict);
    return kExitInvariant;
  }

  zfb::write_dataset(result.bundle, cfg.output_dir);
  zfb::write_leaders(result.leaders, zfb::leaders_file(cfg.output_dir, name));

  const zfb::StatsReport stats = zfb::compute_stats(original, result.bundle);
  auto sidecar = zfb::to_json(stats);
  sidecar["dataset"] = name;
  sidecar["method"] = std::string(zfb::to_string(method));
  sidecar["seed"] = cfg.seed;
  std::ofstream out(fs::path(cfg.output_dir) / (name + "_stats.json"), std::ios::binary);
  out << sidecar.dump(2) << '\n';
  if (!out) throw zfb::IoError("cannot write stats sidecar in " + cfg.output_dir);

  zfb::print_stats_header(std::cout);
  zfb::print_stats_row(std::cout, name, stats);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  zfb::VerifyOptions opts;
  opts.method = resolve_method(cfg);
  opts.monotonicity_trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.rank_check = cfg.rank_check;
  opts.rank_trials = cfg.trials;
  opts.rank_tol = cfg.rank_tol;

  const std::string& name = cfg.names.front();
  const zfb::DatasetBundle original = zfb::read_dataset(cfg.input_dir, name);
  const zfb::DatasetBundle sparse = zfb::read_dataset(cfg.backbone_dir, name);
  std::vector<zfb::LeaderSet> leaders;
  const fs::path leaders_path = zfb::leaders_file(cfg.backbone_dir, name);
  if (opts.method != zfb::BackboneMethod::random_tree || fs::exists(leaders_path))
    leaders = zfb::read_leaders(leaders_path);

  const auto verdict = zfb::verify_sparsified_dataset(original, sparse, leaders, opts);
  std::cout << "checked " << verdict.checked << " graphs, passed " << verdict.checked - verdict.failing.size()
            << ", failed " << verdict.failing.size() << '\n';
  if (!verdict.ok()) {
    print_failures(verdict);
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg) {
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  if (!cfg.json) zfb::print_stats_header(std::cout);
  for (const std::string& name : cfg.names) {
    const zfb::DatasetBundle original = zfb::read_dataset(cfg.input_dir, name);
    zfb::StatsReport stats = cfg.backbone_dir.empty()
                                 ? zfb::compute_stats(original)
                                 : zfb::compute_stats(original, zfb::read_dataset(cfg.backbone_dir, name));
    if (cfg.json) {
      auto j = zfb::to_json(stats);
      j["dataset"] = name;
      all.push_back(std::move(j));
    } else {
      zfb::print_stats_row(std::cout, name, stats);
    }
  }
  if (cfg.json) std::cout << all.dump(2) << '\n';
  return kExitOk;
}

int cmd_count_trees(const RunConfig& cfg) {
  const zfb::DatasetBundle b = zfb::read_dataset(cfg.input_dir, cfg.names.front());
  if (cfg.graph_index >= b.graphs.size())
    throw zfb::InputError("graph index " + std::to_string(cfg.graph_index) + " out of range (" +
                          std::to_string(b.graphs.size()) + " graphs)");
  const zfb::Graph& g = b.graphs[cfg.graph_index];
  std::cout << "graph " << cfg.graph_index << ": n=" << g.vertex_count() << " m=" << g.edge_count() << '\n';
  if (!zfb::is_connected(g)) {
    std::cout << "spanning_trees 0\n";
    std::cout << "note: graph is disconnected\n";
    return kExitOk;
  }
  const zfb::BigInt count = zfb::spanning_tree_count(g);
  std::cout << "spanning_trees " << count << '\n';
  if (g.vertex_count() > 3) std::cout << "upper_bound " << zfb::spanning_tree_upper_bound(g) << '\n';
  const zfb::BigInt check = zfb::spanning_tree_count_crosscheck(g);
  if (check != count) {
    std::cerr << "determinant cross-check disagrees: " << check << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-forcing and distance backbones for graph-classification datasets"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("-i,--input", cfg.input_dir, "dataset directory")->required()->check(CLI::ExistingDirectory);
    sub->add_option("-n,--name", cfg.names, "dataset name (file prefix)")->required()->expected(1);
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("-m,--method", cfg.method, "zfs | distance | random-tree")
        ->check(CLI::IsMember({"zfs", "distance", "random-tree"}));
    sub->add_flag("--tree", cfg.tree, "distance backbone as a spanning forest");
    sub->add_option("--seed", cfg.seed, "seed for every randomized step");
  };

  auto* sparsify = app.add_subcommand("sparsify", "write the backbone of every graph");
  add_dataset(sparsify);
  add_method(sparsify);
  sparsify->add_option("-o,--output", cfg.output_dir, "output directory")->required();
  sparsify->add_option("-j,--jobs", cfg.jobs, "worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "check a sparsified dataset against its original");
  add_dataset(verify);
  add_method(verify);
  verify->add_option("-b,--backbone", cfg.backbone_dir, "sparsified dataset directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  verify->add_option("--trials", cfg.trials, "monotonicity supersets / rank trials per graph");
  verify->add_flag("--rank-check", cfg.rank_check, "also check controllability rank of each backbone");
  verify->add_option("--rank-tol", cfg.rank_tol, "relative singular value threshold")->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "print dataset statistics");
  stats->add_option("-i,--input", cfg.input_dir, "dataset directory")->required()->check(CLI::ExistingDirectory);
  stats->add_option("-n,--name", cfg.names, "dataset name(s)")->required();
  stats->add_option("-b,--backbone", cfg.backbone_dir, "sparsified dataset directory")->check(CLI::ExistingDirectory);
  stats->add_flag("--json", cfg.json, "emit JSON instead of a table");

  auto* count = app.add_subcommand("count-trees", "exact spanning tree count of one graph");
  add_dataset(count);
  count->add_option("-g,--graph-index", cfg.graph_index, "0-based graph index")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sparsify) return cmd_sparsify(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*stats) return cmd_stats(cfg);
    if (*count) return cmd_count_trees(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
