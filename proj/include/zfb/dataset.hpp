#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "zfb/backbone.hpp"
#include "zfb/errors.hpp"
#include "zfb/graph.hpp"
#include "zfb/random.hpp"
#include "zfb/zero_forcing.hpp"

namespace zfb {

/// Graph-classification dataset in memory.
///
/// labels[i] is the class index of graphs[i] in [0, label_values.size());
/// label_values maps a class index back to the integer found on disk.
/// node_labels, when present, has one raw integer per vertex of each graph.
struct DatasetBundle {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> labels;
  std::vector<long long> label_values;
  std::optional<std::vector<std::vector<long long>>> node_labels;

  std::size_t size() const noexcept { return graphs.size(); }

  friend bool operator==(const DatasetBundle&, const DatasetBundle&) = default;
};

struct ReadReport {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

struct StatsReport {
  std::size_t graph_count = 0;
  std::size_t node_min = 0;
  std::size_t node_max = 0;
  double avg_degree_original = 0.0;
  double density_min_original = 0.0;
  double density_max_original = 0.0;
  std::optional<double> avg_degree_backbone;
  std::optional<double> density_min_backbone;
  std::optional<double> density_max_backbone;
};

namespace detail {

inline std::filesystem::path dataset_file(const std::filesystem::path& dir, std::string_view name,
                                          std::string_view suffix) {
  return dir / (std::string(name) + "_" + std::string(suffix) + ".txt");
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline long long parse_int(std::string_view s, const std::string& file, std::size_t line) {
  s = trim(s);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(file, line, "expected an integer, got '" + std::string(s) + "'");
  return value;
}

// Non-empty lines of a file with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) out.emplace_back(number, std::move(line));
  }
  if (in.bad()) throw IoError("read error on " + path.string());
  return out;
}

inline std::vector<long long> read_int_column(const std::filesystem::path& path) {
  std::vector<long long> out;
  for (const auto& [number, text] : read_lines(path)) out.push_back(parse_int(text, path.string(), number));
  return out;
}

class FileWriter {
public:
  explicit FileWriter(std::filesystem::path path) : path_(std::move(path)), out_(path_, std::ios::binary) {
    if (!out_) throw IoError("cannot open " + path_.string() + " for writing");
  }

  std::ostream& stream() { return out_; }

  void close() {
    out_.close();
    if (!out_) throw IoError("write failed on " + path_.string());
  }

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace detail

/// Reads `<name>_A.txt`, `<name>_graph_indicator.txt`, `<name>_graph_labels.txt`
/// and, if present, `<name>_node_labels.txt` from dir.
///
/// Vertex ids are remapped per graph to [0, n_i) in file order. An edge listed
/// in both directions is stored once; self-loops and repeated lines are
/// dropped and counted in `report`.
inline DatasetBundle read_dataset(const std::filesystem::path& dir, const std::string& name,
                                  ReadReport* report = nullptr) {
  namespace fs = std::filesystem;
  const fs::path a_path = detail::dataset_file(dir, name, "A");
  const fs::path ind_path = detail::dataset_file(dir, name, "graph_indicator");
  const fs::path lab_path = detail::dataset_file(dir, name, "graph_labels");
  const fs::path node_path = detail::dataset_file(dir, name, "node_labels");
  for (const fs::path& p : {a_path, ind_path, lab_path})
    if (!fs::exists(p)) throw IoError("missing dataset file " + p.string());

  DatasetBundle b;
  b.name = name;

  const std::vector<long long> raw_labels = detail::read_int_column(lab_path);
  const std::size_t graph_count = raw_labels.size();
  b.label_values = raw_labels;
  std::sort(b.label_values.begin(), b.label_values.end());
  b.label_values.erase(std::unique(b.label_values.begin(), b.label_values.end()), b.label_values.end());
  for (long long raw : raw_labels)
    b.labels.push_back(static_cast<int>(
        std::lower_bound(b.label_values.begin(), b.label_values.end(), raw) - b.label_values.begin()));

  // node -> (graph, local id)
  std::vector<std::uint32_t> graph_of;
  std::vector<Vertex> local_of;
  std::vector<std::size_t> sizes(graph_count, 0);
  for (const auto& [number, text] : detail::read_lines(ind_path)) {
    const long long gid = detail::parse_int(text, ind_path.string(), number);
    if (gid < 1 || static_cast<std::size_t>(gid) > graph_count)
      throw FormatError(ind_path.string(), number,
                        "graph id " + std::to_string(gid) + " outside 1.." + std::to_string(graph_count));
    const auto g = static_cast<std::uint32_t>(gid - 1);
    graph_of.push_back(g);
    local_of.push_back(static_cast<Vertex>(sizes[g]++));
  }
  for (std::size_t g = 0; g < graph_count; ++g)
    if (sizes[g] == 0) throw FormatError(lab_path.string(), g + 1, "graph " + std::to_string(g + 1) + " has no nodes");

  std::vector<std::vector<Edge>> edges(graph_count);
  std::set<std::pair<long long, long long>> seen;
  ReadReport local_report;
  for (const auto& [number, text] : detail::read_lines(a_path)) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw FormatError(a_path.string(), number, "expected 'row, col'");
    const long long a = detail::parse_int(std::string_view(text).substr(0, comma), a_path.string(), number);
    const long long c = detail::parse_int(std::string_view(text).substr(comma + 1), a_path.string(), number);
    for (long long id : {a, c})
      if (id < 1 || static_cast<std::size_t>(id) > graph_of.size())
        throw FormatError(a_path.string(), number,
                          "node id " + std::to_string(id) + " outside 1.." + std::to_string(graph_of.size()));
    const std::size_t ia = static_cast<std::size_t>(a - 1);
    const std::size_t ic = static_cast<std::size_t>(c - 1);
    if (graph_of[ia] != graph_of[ic])
      throw FormatError(a_path.string(), number,
                        "edge joins graphs " + std::to_string(graph_of[ia] + 1) + " and " + std::to_string(graph_of[ic] + 1));
    if (a == c) {
      ++local_report.self_loops_dropped;
      continue;
    }
    if (!seen.emplace(a, c).second) {
      ++local_report.duplicates_dropped;
      continue;
    }
    if (seen.count({c, a})) continue;  // reverse direction already stored
    edges[graph_of[ia]].emplace_back(local_of[ia], local_of[ic]);
  }

  b.graphs.reserve(graph_count);
  for (std::size_t g = 0; g < graph_count; ++g) b.graphs.emplace_back(sizes[g], edges[g]);

  if (std::filesystem::exists(node_path)) {
    const std::vector<long long> column = detail::read_int_column(node_path);
    if (column.size() != graph_of.size())
      throw FormatError(node_path.string(), 0,
                        "expected " + std::to_string(graph_of.size()) + " node labels, got " + std::to_string(column.size()));
    std::vector<std::vector<long long>> per_graph(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) per_graph[g].resize(sizes[g]);
    for (std::size_t i = 0; i < column.size(); ++i) per_graph[graph_of[i]][local_of[i]] = column[i];
    b.node_labels = std::move(per_graph);
  }
  if (report) *report = local_report;
  return b;
}

/// Writes the same layout: 1-based ids, both directions of every edge in
/// ascending (row, col) order, ", " separated, LF endings.
inline void write_dataset(const DatasetBundle& b, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  detail::FileWriter a_out(detail::dataset_file(dir, b.name, "A"));
  detail::FileWriter ind_out(detail::dataset_file(dir, b.name, "graph_indicator"));
  std::size_t offset = 1;
  for (std::size_t g = 0; g < b.graphs.size(); ++g) {
    const Graph& graph = b.graphs[g];
    for (Vertex u = 0; u < graph.vertex_count(); ++u) {
      for (Vertex v : graph.neighbors(u)) a_out.stream() << offset + u << ", " << offset + v << '\n';
      ind_out.stream() << g + 1 << '\n';
    }
    offset += graph.vertex_count();
  }
  a_out.close();
  ind_out.close();

  detail::FileWriter lab_out(detail::dataset_file(dir, b.name, "graph_labels"));
  for (int label : b.labels) lab_out.stream() << b.label_values.at(static_cast<std::size_t>(label)) << '\n';
  lab_out.close();

  if (b.node_labels) {
    detail::FileWriter node_out(detail::dataset_file(dir, b.name, "node_labels"));
    for (const auto& per_graph : *b.node_labels)
      for (long long label : per_graph) node_out.stream() << label << '\n';
    node_out.close();
  }
}

inline std::filesystem::path leaders_file(const std::filesystem::path& dir, const std::string& name) {
  return detail::dataset_file(dir, name, "leaders");
}

/// One line per graph, space-separated 0-based leader ids (empty line for none).
inline void write_leaders(std::span<const LeaderSet> leaders, const std::filesystem::path& path) {
  detail::FileWriter out(path);
  for (const LeaderSet& set : leaders) {
    bool first = true;
    for (Vertex v : set) {
      out.stream() << (first ? "" : " ") << v;
      first = false;
    }
    out.stream() << '\n';
  }
  out.close();
}

inline std::vector<LeaderSet> read_leaders(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<LeaderSet> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::vector<Vertex> ids;
    std::istringstream fields{std::string(detail::trim(line))};
    std::string token;
    while (fields >> token) {
      const long long id = detail::parse_int(token, path.string(), number);
      if (id < 0) throw FormatError(path.string(), number, "negative leader id");
      ids.push_back(static_cast<Vertex>(id));
    }
    try {
      out.emplace_back(std::move(ids));
    } catch (const InputError& e) {
      throw FormatError(path.string(), number, e.what());
    }
  }
  return out;
}

struct SparsifyResult {
  DatasetBundle bundle;
  std::vector<LeaderSet> leaders;  // empty sets for random-tree
};

/// Backbone of one graph. Distance methods use greedy_zfs leaders so they
/// are comparable with the zfs backbone.
inline Backbone build_backbone(const Graph& g, BackboneMethod method, std::uint64_t seed) {
  switch (method) {
    case BackboneMethod::zfs: return zfs_backbone(g);
    case BackboneMethod::distance: return distance_backbone(g, greedy_zfs(g));
    case BackboneMethod::distance_tree: return distance_tree_backbone(g, greedy_zfs(g));
    case BackboneMethod::random_tree: return random_spanning_tree(g, seed);
  }
  throw InputError("unknown backbone method");
}

/// Replaces every graph by its backbone. Labels and node labels pass through.
/// Graph i of a random-tree run uses seed derive_seed(seed, i). Work fans out
/// over `jobs` threads (0 = hardware concurrency); results are ordered by
/// graph index regardless.
inline SparsifyResult sparsify_dataset(const DatasetBundle& b, BackboneMethod method, std::uint64_t seed,
                                       unsigned jobs = 0) {
  const std::size_t count = b.graphs.size();
  std::vector<Backbone> backbones(count);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        backbones[i] = build_backbone(b.graphs[i], method, derive_seed(seed, i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  SparsifyResult out;
  out.bundle.name = b.name;
  out.bundle.labels = b.labels;
  out.bundle.label_values = b.label_values;
  out.bundle.node_labels = b.node_labels;
  out.bundle.graphs.reserve(count);
  out.leaders.reserve(count);
  for (Backbone& bb : backbones) {
    out.bundle.graphs.push_back(bb.graph());
    out.leaders.push_back(std::move(bb.leaders));
  }
  return out;
}

namespace detail {

inline void check_bundle(const DatasetBundle& b) {
  if (b.graphs.empty()) throw InputError("dataset has no graphs");
  for (const Graph& g : b.graphs)
    if (g.vertex_count() == 0) throw InputError("dataset contains a graph with no vertices");
}

// Mean per-graph average degree; density extremes over graphs with n >= 2.
inline void degree_density(const DatasetBundle& b, double& avg, double& dmin, double& dmax) {
  double sum = 0.0;
  dmin = std::numeric_limits<double>::infinity();
  dmax = -std::numeric_limits<double>::infinity();
  for (const Graph& g : b.graphs) {
    sum += average_degree(g);
    if (g.vertex_count() >= 2) {
      dmin = std::min(dmin, density(g));
      dmax = std::max(dmax, density(g));
    }
  }
  avg = sum / static_cast<double>(b.graphs.size());
  if (dmin > dmax) dmin = dmax = std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline StatsReport compute_stats(const DatasetBundle& original) {
  detail::check_bundle(original);
  StatsReport r;
  r.graph_count = original.graphs.size();
  r.node_min = std::numeric_limits<std::size_t>::max();
  for (const Graph& g : original.graphs) {
    r.node_min = std::min(r.node_min, g.vertex_count());
    r.node_max = std::max(r.node_max, g.vertex_count());
  }
  detail::degree_density(original, r.avg_degree_original, r.density_min_original, r.density_max_original);
  return r;
}

/// Statistics of a dataset and its sparsified counterpart. Extremes are taken
/// independently per column.
inline StatsReport compute_stats(const DatasetBundle& original, const DatasetBundle& backbone) {
  if (original.graphs.size() != backbone.graphs.size())
    throw InputError("bundles differ in graph count");
  for (std::size_t i = 0; i < original.graphs.size(); ++i)
    if (original.graphs[i].vertex_count() != backbone.graphs[i].vertex_count())
      throw InputError("bundles differ in node count at graph " + std::to_string(i));
  StatsReport r = compute_stats(original);
  double avg, dmin, dmax;
  detail::degree_density(backbone, avg, dmin, dmax);
  r.avg_degree_backbone = avg;
  r.density_min_backbone = dmin;
  r.density_max_backbone = dmax;
  return r;
}

}  // namespace zfb
