#include "mac/baselines.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace mac {

BinarySelection naive_topk(const SparsificationProblem& problem, int K) {
  Eigen::VectorXd weights(problem.num_candidates());
  for (int k = 0; k < weights.size(); ++k) {
    weights[k] = problem.candidate_edges[k].weight;
  }
  return solve_direction(weights, K);
}

namespace {

Eigen::MatrixXd reduced_laplacian(const SparsificationProblem& problem,
                                  const BinarySelection& selection,
                                  int anchor) {
  const int n = problem.n;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
  auto reduced = [anchor](int i) { return i < anchor ? i : i - 1; };
  auto add = [&](const WeightedEdge& e) {
    const bool keep_u = e.u != anchor;
    const bool keep_v = e.v != anchor;
    if (keep_u) lap(reduced(e.u), reduced(e.u)) += e.weight;
    if (keep_v) lap(reduced(e.v), reduced(e.v)) += e.weight;
    if (keep_u && keep_v) {
      lap(reduced(e.u), reduced(e.v)) -= e.weight;
      lap(reduced(e.v), reduced(e.u)) -= e.weight;
    }
  };
  for (const auto& e : problem.fixed_edges) add(e);
  for (std::size_t k = 0; k < selection.size(); ++k) {
    if (selection[k]) add(problem.candidate_edges[k]);
  }
  return lap;
}

}  // namespace

BinarySelection greedy_esp(const SparsificationProblem& problem, int K) {
  const int m = problem.num_candidates();
  const int n = problem.n;
  if (K < 0 || K > m) throw std::invalid_argument("K outside [0, m]");
  if (count_components(problem.fixed_edges, n) != 1) {
    throw std::invalid_argument(
        "greedy_esp requires a connected base graph; seed the fixed edge set "
        "with a spanning tree");
  }

  // Dense inverse of the anchored Laplacian (anchor = node 0). a^T Minv a
  // for an edge column a = e_u - e_v reads off three entries.
  Eigen::MatrixXd minv =
      reduced_laplacian(problem, BinarySelection(m, 0), 0).inverse();

  auto quad = [&](const WeightedEdge& e) {
    const int u = e.u - 1;
    const int v = e.v - 1;
    if (e.u == 0) return minv(v, v);
    if (e.v == 0) return minv(u, u);
    return minv(u, u) + minv(v, v) - 2.0 * minv(u, v);
  };
  auto gain = [&](int k) {
    const WeightedEdge& e = problem.candidate_edges[k];
    return std::log1p(e.weight * quad(e));
  };

  // Lazy greedy: cached gains are upper bounds once the solution grows
  // (submodularity), so a fresh top-of-heap gain is the true maximum.
  using Entry = std::tuple<double, int, int>;  // (gain, -index, stamp)
  std::priority_queue<Entry> heap;
  for (int k = 0; k < m; ++k) heap.emplace(gain(k), -k, 0);

  BinarySelection bits(m, 0);
  for (int picked = 0; picked < K; ++picked) {
    while (true) {
      auto [cached, neg_k, stamp] = heap.top();
      heap.pop();
      const int k = -neg_k;
      if (stamp == picked) {
        bits[k] = 1;
        const WeightedEdge& e = problem.candidate_edges[k];
        const double q = quad(e);
        Eigen::VectorXd col;
        if (e.u == 0) {
          col = -minv.col(e.v - 1);
        } else if (e.v == 0) {
          col = minv.col(e.u - 1);
        } else {
          col = minv.col(e.u - 1) - minv.col(e.v - 1);
        }
        minv.noalias() -=
            (e.weight / (1.0 + e.weight * q)) * col * col.transpose();
        break;
      }
      heap.emplace(gain(k), neg_k, picked);
    }
  }
  return bits;
}

double reduced_logdet(const SparsificationProblem& problem,
                      const BinarySelection& selection, int anchor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      reduced_laplacian(problem, selection, anchor), Eigen::EigenvaluesOnly);
  double logdet = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev <= 0.0) return -std::numeric_limits<double>::infinity();
    logdet += std::log(ev);
  }
  return logdet;
}

}  // namespace mac
