#pragma once

#include <algorithm>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zfb/errors.hpp"
#include "zfb/graph.hpp"

namespace zfb {

/// Leader (input) vertices, kept sorted ascending and duplicate-free.
class LeaderSet {
public:
  LeaderSet() = default;

  LeaderSet(std::vector<Vertex> leaders) : leaders_(std::move(leaders)) {
    std::sort(leaders_.begin(), leaders_.end());
    if (std::adjacent_find(leaders_.begin(), leaders_.end()) != leaders_.end())
      throw InputError("leader set contains a repeated vertex");
  }

  LeaderSet(std::initializer_list<Vertex> leaders) : LeaderSet(std::vector<Vertex>(leaders)) {}

  const std::vector<Vertex>& vertices() const noexcept { return leaders_; }
  std::size_t size() const noexcept { return leaders_.size(); }
  bool empty() const noexcept { return leaders_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(leaders_.begin(), leaders_.end(), v); }

  auto begin() const noexcept { return leaders_.begin(); }
  auto end() const noexcept { return leaders_.end(); }

  void validate(const Graph& g) const {
    if (!leaders_.empty() && leaders_.back() >= g.vertex_count())
      throw InputError("leader " + std::to_string(leaders_.back()) + " out of range (n=" +
                       std::to_string(g.vertex_count()) + ")");
  }

  friend bool operator==(const LeaderSet&, const LeaderSet&) = default;

private:
  std::vector<Vertex> leaders_;
};

struct Force {
  Vertex forcer = 0;
  Vertex forced = 0;

  Edge edge() const { return Edge(forcer, forced); }
  friend bool operator==(const Force&, const Force&) = default;
};

/// Force log of one zero-forcing run plus the chains it traces.
/// chains[i] starts at the i-th leader (ascending order).
struct ForcingRecord {
  std::vector<Force> forces;
  std::vector<std::vector<Vertex>> chains;

  std::vector<Edge> force_edges() const {
    std::vector<Edge> out;
    out.reserve(forces.size());
    for (const Force& f : forces) out.push_back(f.edge());
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct ZeroForcingResult {
  std::vector<Vertex> derived;  // sorted
  ForcingRecord record;
};

/// Incremental color-change engine.
///
/// Tracks for every vertex its number of white neighbors. A FIFO queue holds
/// black vertices with exactly one white neighbor; vertices that become
/// eligible at the same moment are queued in ascending id order. Stale queue
/// entries are skipped on pop. The state is a value type, so callers can copy
/// it to explore "what if v were black too".
class ForcingProcess {
public:
  explicit ForcingProcess(const Graph& g) : graph_(&g), black_(g.vertex_count(), 0), white_nbrs_(g.vertex_count()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) white_nbrs_[v] = static_cast<std::uint32_t>(g.degree(v));
  }

  /// Colors `initial` black (already-black vertices are ignored) and queues
  /// every black vertex that became eligible, ascending.
  void seed(std::span<const Vertex> initial) {
    std::vector<Vertex> touched;
    for (Vertex v : initial) {
      graph_->check_vertex(v);
      if (black_[v]) continue;
      paint(v);
      touched.push_back(v);
      for (Vertex w : graph_->neighbors(v)) touched.push_back(w);
    }
    enqueue_eligible(touched);
  }

  /// Runs the color-change rule to its fixpoint. Forces are appended to `log`
  /// when provided.
  void run(std::vector<Force>* log = nullptr) {
    std::vector<Vertex> touched;
    while (!queue_.empty()) {
      const Vertex v = queue_.front();
      queue_.pop_front();
      if (!black_[v] || white_nbrs_[v] != 1) continue;
      Vertex target = v;
      for (Vertex w : graph_->neighbors(v))
        if (!black_[w]) {
          target = w;
          break;
        }
      paint(target);
      if (log) log->push_back({v, target});
      touched.clear();
      touched.push_back(target);
      for (Vertex w : graph_->neighbors(target)) touched.push_back(w);
      enqueue_eligible(touched);
    }
  }

  bool is_black(Vertex v) const { return black_.at(v) != 0; }
  std::size_t black_count() const noexcept { return black_count_; }
  bool all_black() const noexcept { return black_count_ == black_.size(); }

  std::vector<Vertex> black_vertices() const {
    std::vector<Vertex> out;
    out.reserve(black_count_);
    for (Vertex v = 0; v < black_.size(); ++v)
      if (black_[v]) out.push_back(v);
    return out;
  }

private:
  void paint(Vertex v) {
    black_[v] = 1;
    ++black_count_;
    for (Vertex w : graph_->neighbors(v)) --white_nbrs_[w];
  }

  void enqueue_eligible(std::vector<Vertex>& candidates) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Vertex v : candidates)
      if (black_[v] && white_nbrs_[v] == 1) queue_.push_back(v);
  }

  const Graph* graph_;
  std::vector<char> black_;
  std::vector<std::uint32_t> white_nbrs_;
  std::deque<Vertex> queue_;
  std::size_t black_count_ = 0;
};

namespace detail {

inline std::vector<std::vector<Vertex>> extract_chains(const Graph& g, const LeaderSet& leaders,
                                                       std::span<const Force> forces) {
  std::vector<std::vector<Vertex>> chains;
  std::vector<std::size_t> chain_of(g.vertex_count(), SIZE_MAX);
  for (Vertex l : leaders) {
    chain_of[l] = chains.size();
    chains.push_back({l});
  }
  for (const Force& f : forces) {
    const std::size_t c = chain_of[f.forcer];
    chain_of[f.forced] = c;
    chains[c].push_back(f.forced);
  }
  return chains;
}

}  // namespace detail

inline ZeroForcingResult apply_zero_forcing(const Graph& g, const LeaderSet& init) {
  init.validate(g);
  ForcingProcess process(g);
  process.seed(init.vertices());
  ZeroForcingResult out;
  process.run(&out.record.forces);
  out.derived = process.black_vertices();
  out.record.chains = detail::extract_chains(g, init, out.record.forces);
  return out;
}

inline std::size_t zeta(const Graph& g, const LeaderSet& init) {
  init.validate(g);
  ForcingProcess process(g);
  process.seed(init.vertices());
  process.run();
  return process.black_count();
}

inline bool is_zfs(const Graph& g, const LeaderSet& init) { return zeta(g, init) == g.vertex_count(); }

/// Greedy zero forcing set: repeatedly add the white vertex whose addition
/// yields the largest derived set (smallest id on ties) until all are black.
inline LeaderSet greedy_zfs(const Graph& g) {
  ForcingProcess state(g);
  std::vector<Vertex> chosen;
  while (!state.all_black()) {
    Vertex best = 0;
    std::size_t best_size = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (state.is_black(v)) continue;
      ForcingProcess trial = state;
      const Vertex one[] = {v};
      trial.seed(one);
      trial.run();
      if (trial.black_count() > best_size) {
        best_size = trial.black_count();
        best = v;
      }
    }
    chosen.push_back(best);
    const Vertex one[] = {best};
    state.seed(one);
    state.run();
  }
  return LeaderSet(std::move(chosen));
}

/// Exact minimum zero forcing set by enumerating subsets in increasing size,
/// lexicographic within a size. Exponential; refuses graphs above max_n.
inline LeaderSet minimum_zfs_bruteforce(const Graph& g, std::size_t max_n = 20) {
  const std::size_t n = g.vertex_count();
  if (n > max_n)
    throw CapabilityError("brute-force minimum ZFS limited to n <= " + std::to_string(max_n) + ", got n=" +
                          std::to_string(n));
  std::vector<Vertex> pick;
  for (std::size_t k = 0; k <= n; ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Vertex>(i);
    while (true) {
      ForcingProcess process(g);
      process.seed(pick);
      process.run();
      if (process.all_black()) return LeaderSet(pick);
      // next k-combination of [0, n)
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return LeaderSet();  // unreachable: the full vertex set is always a ZFS
}

}  // namespace zfb
