#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zfb/errors.hpp"
#include "zfb/graph.hpp"
#include "zfb/random.hpp"
#include "zfb/zero_forcing.hpp"

namespace zfb {

/// One member M of the symmetric pattern family of a graph, with the 0/1
/// leader input matrix H.
///
/// Off-diagonal M_ij is nonzero exactly on edges (drawn from weight_range,
/// strictly positive); the diagonal is free and drawn from [-1, 1].
/// Column j of H is the indicator vector of the j-th leader.
struct SystemSample {
  Eigen::MatrixXd M;
  Eigen::MatrixXd H;
  std::uint64_t seed = 0;
  std::pair<double, double> weight_range{0.5, 1.5};
};

struct RankEstimate {
  std::size_t rank = 0;  // max over trials
  std::size_t trials = 0;
  double tolerance = 0.0;
  std::vector<std::size_t> per_trial_ranks;
  std::size_t zeta = 0;          // zero-forcing lower bound for the same leaders
  bool bound_violated = false;   // rank < zeta: numerical trouble
};

/// Distance-to-leader vectors: row i holds d(leader_j, v_i) for each leader j
/// (kUnreachable across components).
struct DLMatrix {
  std::vector<Vertex> leaders;
  std::vector<std::vector<std::uint32_t>> rows;

  friend bool operator==(const DLMatrix&, const DLMatrix&) = default;
};

inline SystemSample sample_system(const Graph& g, const LeaderSet& leaders, std::uint64_t seed,
                                  std::pair<double, double> weight_range = {0.5, 1.5}) {
  leaders.validate(g);
  if (!(weight_range.first > 0.0) || weight_range.second < weight_range.first)
    throw InputError("edge weight range must be positive and ordered");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  SystemSample s;
  s.seed = seed;
  s.weight_range = weight_range;
  s.M = Eigen::MatrixXd::Zero(n, n);
  s.H = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(leaders.size()));
  Rng rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) s.M(i, i) = uniform_real(rng, -1.0, 1.0);
  for (const Edge& e : g.edges()) {
    const double w = uniform_real(rng, weight_range.first, weight_range.second);
    s.M(e.u, e.v) = w;
    s.M(e.v, e.u) = w;
  }
  Eigen::Index j = 0;
  for (Vertex l : leaders) s.H(l, j++) = 1.0;
  return s;
}

/// [H, MH, M^2 H, ..., M^(n-1) H].
inline Eigen::MatrixXd controllability_matrix(const SystemSample& s) {
  const Eigen::Index n = s.M.rows();
  const Eigen::Index m = s.H.cols();
  Eigen::MatrixXd C(n, n * m);
  if (n == 0 || m == 0) return C;
  Eigen::MatrixXd block = s.H;
  for (Eigen::Index k = 0; k < n; ++k) {
    C.middleCols(k * m, m) = block;
    if (k + 1 < n) block = s.M * block;
  }
  return C;
}

/// Number of singular values above rel_tol times the largest one.
inline std::size_t numeric_rank(const Eigen::MatrixXd& A, double rel_tol = 1e-9) {
  if (!(rel_tol > 0.0)) throw InputError("rank tolerance must be positive");
  if (A.size() == 0) return 0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
  if (sv(0) == 0.0) return 0;
  return static_cast<std::size_t>((sv.array() > rel_tol * sv(0)).count());
}

/// Rank of [H, MH, ..., M^(n-1)H] computed as the dimension of the Krylov
/// space through orthonormal block iterations (controllability staircase).
///
/// Each new block M*Q is orthogonalized twice against the basis found so far
/// and its directions are kept when their singular value exceeds
/// rel_tol * ||M||_2 (rel_tol * sigma_max(H) for the first block). Unlike the
/// raw power matrix, nothing here is exponentially scaled, so full rank stays
/// detectable for n in the hundreds.
inline std::size_t controllable_dimension(const Eigen::MatrixXd& M, const Eigen::MatrixXd& H, double rel_tol = 1e-9) {
  if (!(rel_tol > 0.0)) throw InputError("rank tolerance must be positive");
  const Eigen::Index n = M.rows();
  if (n == 0 || H.cols() == 0) return 0;

  auto new_directions = [&](const Eigen::MatrixXd& W, double threshold) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU);
    const auto keep = (svd.singularValues().array() > threshold).count();
    return Eigen::MatrixXd(svd.matrixU().leftCols(keep));
  };

  const Eigen::VectorXd hsv = Eigen::JacobiSVD<Eigen::MatrixXd>(H).singularValues();
  if (hsv(0) == 0.0) return 0;
  Eigen::MatrixXd basis = new_directions(H, rel_tol * hsv(0));
  Eigen::MatrixXd latest = basis;

  const double m_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()(0);
  if (m_norm == 0.0) return static_cast<std::size_t>(basis.cols());

  while (latest.cols() > 0 && basis.cols() < n) {
    Eigen::MatrixXd W = M * latest;
    for (int pass = 0; pass < 2; ++pass) W -= basis * (basis.transpose() * W);
    latest = new_directions(W, rel_tol * m_norm);
    if (latest.cols() == 0) break;
    Eigen::MatrixXd grown(n, basis.cols() + latest.cols());
    grown << basis, latest;
    basis = std::move(grown);
  }
  return static_cast<std::size_t>(std::min<Eigen::Index>(basis.cols(), n));
}

/// Max controllability rank over `trials` random members of the pattern
/// family. Trial t uses seed derive_seed(seed, t). Also records the
/// zero-forcing bound and flags rank < zeta.
inline RankEstimate generic_rank(const Graph& g, const LeaderSet& leaders, std::size_t trials, std::uint64_t seed,
                                 double rel_tol = 1e-9) {
  if (trials < 1) throw InputError("generic rank needs at least one trial");
  leaders.validate(g);
  RankEstimate est;
  est.trials = trials;
  est.tolerance = rel_tol;
  for (std::size_t t = 0; t < trials; ++t) {
    const SystemSample s = sample_system(g, leaders, derive_seed(seed, t));
    const std::size_t r = controllable_dimension(s.M, s.H, rel_tol);
    est.per_trial_ranks.push_back(r);
    est.rank = std::max(est.rank, r);
  }
  est.zeta = zeta(g, leaders);
  est.bound_violated = est.rank < est.zeta;
  return est;
}

inline DLMatrix dl_vectors(const Graph& g, const LeaderSet& leaders) {
  if (leaders.empty()) throw InputError("DL vectors need at least one leader");
  leaders.validate(g);
  DLMatrix out;
  out.leaders = leaders.vertices();
  out.rows.assign(g.vertex_count(), std::vector<std::uint32_t>(leaders.size()));
  std::size_t j = 0;
  for (Vertex l : leaders) {
    const DistanceMap d = bfs_distances(g, l);
    for (Vertex v = 0; v < g.vertex_count(); ++v) out.rows[v][j] = d.dist[v];
    ++j;
  }
  return out;
}

}  // namespace zfb
