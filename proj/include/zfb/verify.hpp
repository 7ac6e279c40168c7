#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "zfb/backbone.hpp"
#include "zfb/controllability.hpp"
#include "zfb/dataset.hpp"
#include "zfb/graph.hpp"
#include "zfb/random.hpp"
#include "zfb/zero_forcing.hpp"

namespace zfb {

struct VerifyOptions {
  BackboneMethod method = BackboneMethod::zfs;
  std::size_t monotonicity_trials = 10;  // 0 disables sampling
  std::uint64_t seed = 0;
  bool rank_check = false;
  std::size_t rank_trials = 10;
  double rank_tol = 1e-9;
};

struct GraphVerdict {
  std::size_t index = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks one (host, sparsified, leaders) triple against the invariants of
/// its construction method. Monotonicity and rank trials for graph `index`
/// draw from derive_seed(opts.seed, index).
inline GraphVerdict verify_backbone_graph(const Graph& host, const Graph& sparse, const LeaderSet& leaders,
                                          std::size_t index, const VerifyOptions& opts) {
  GraphVerdict v{index, {}};
  auto fail = [&](std::string what) { v.failures.push_back(std::move(what)); };

  if (sparse.vertex_count() != host.vertex_count()) {
    fail("vertex count differs from host");
    return v;
  }
  for (const Edge& e : sparse.edges())
    if (!host.has_edge(e)) {
      fail("containment: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in host");
      return v;
    }
  if (!leaders.empty() && leaders.vertices().back() >= host.vertex_count()) {
    fail("leader out of range");
    return v;
  }
  if (opts.method != BackboneMethod::random_tree && leaders.empty()) {
    fail("no leaders logged");
    return v;
  }
  if (is_tree_method(opts.method) && !is_spanning_forest(host, sparse.edges())) fail("not a spanning forest of the host");

  if (opts.method == BackboneMethod::zfs) {
    const ZeroForcingResult host_zf = apply_zero_forcing(host, leaders);
    const std::vector<Edge> forced = host_zf.record.force_edges();
    if (!std::includes(sparse.edges().begin(), sparse.edges().end(), forced.begin(), forced.end()))
      fail("backbone is missing a force edge");
    // every vertex in a host component that holds a leader must be forced
    const ComponentLabeling comp = connected_components(host);
    std::vector<char> led(comp.count, 0);
    for (Vertex l : leaders) led[comp.labels[l]] = 1;
    ForcingProcess process(sparse);
    process.seed(leaders.vertices());
    process.run();
    for (Vertex u = 0; u < host.vertex_count(); ++u)
      if (led[comp.labels[u]] && !process.is_black(u)) {
        fail("zero forcing on the backbone leaves vertex " + std::to_string(u) + " white");
        break;
      }
    if (opts.monotonicity_trials > 0 && v.ok()) {
      Backbone b;
      b.vertex_count = host.vertex_count();
      b.leaders = leaders;
      b.force_edges = forced;
      b.kept_edges = sparse.edges();
      b.method = BackboneMethod::zfs;
      const MonotonicityReport rep =
          verify_zfs_backbone_monotonicity(host, b, opts.monotonicity_trials, derive_seed(opts.seed, index));
      if (!rep.all_pass())
        fail("monotonicity: " + std::to_string(rep.trial_pass.size() - rep.passed()) + " of " +
             std::to_string(rep.trial_pass.size()) + " supersets lost derived-set size");
    }
  } else if (opts.method == BackboneMethod::distance) {
    if (dl_vectors(sparse, leaders) != dl_vectors(host, leaders)) fail("DL vectors differ from host");
  } else if (opts.method == BackboneMethod::distance_tree) {
    const Vertex first = leaders.vertices().front();
    if (bfs_distances(sparse, first).dist != bfs_distances(host, first).dist)
      fail("distances from leader " + std::to_string(first) + " differ from host");
  }

  if (opts.rank_check && !leaders.empty()) {
    const RankEstimate est =
        generic_rank(sparse, leaders, opts.rank_trials, derive_seed(opts.seed ^ 0x5a5a5a5aULL, index), opts.rank_tol);
    if (est.bound_violated)
      fail("generic rank " + std::to_string(est.rank) + " below zero-forcing bound " + std::to_string(est.zeta));
    if (opts.method == BackboneMethod::zfs && is_connected(host) && est.rank != host.vertex_count())
      fail("generic rank " + std::to_string(est.rank) + " != n = " + std::to_string(host.vertex_count()));
  }
  return v;
}

struct DatasetVerdict {
  std::size_t checked = 0;
  std::vector<GraphVerdict> failing;  // ascending index

  bool ok() const { return failing.empty(); }
};

inline DatasetVerdict verify_sparsified_dataset(const DatasetBundle& original, const DatasetBundle& sparse,
                                                std::span<const LeaderSet> leaders, const VerifyOptions& opts) {
  if (original.graphs.size() != sparse.graphs.size())
    throw InputError("original and sparsified datasets differ in graph count");
  if (opts.method != BackboneMethod::random_tree && leaders.size() != original.graphs.size())
    throw InputError("leaders log has " + std::to_string(leaders.size()) + " lines for " +
                     std::to_string(original.graphs.size()) + " graphs");
  DatasetVerdict out;
  static const LeaderSet kNone;
  for (std::size_t i = 0; i < original.graphs.size(); ++i) {
    const LeaderSet& l = i < leaders.size() ? leaders[i] : kNone;
    GraphVerdict v = verify_backbone_graph(original.graphs[i], sparse.graphs[i], l, i, opts);
    ++out.checked;
    if (!v.ok()) out.failing.push_back(std::move(v));
  }
  return out;
}

}  // namespace zfb
