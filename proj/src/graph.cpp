#include "mac/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace mac {

namespace {

void check_edge(const WeightedEdge& e, int n) {
  if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
    throw std::out_of_range("edge index out of range: (" + std::to_string(e.u) +
                            ", " + std::to_string(e.v) + ") with n = " +
                            std::to_string(n));
  }
  if (e.u == e.v) {
    throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
  }
  if (e.weight < 0.0) {
    throw std::invalid_argument("negative edge weight " +
                                std::to_string(e.weight));
  }
}

std::pair<int, int> canonical(const WeightedEdge& e) {
  return {std::min(e.u, e.v), std::max(e.u, e.v)};
}

// Union-find with path halving.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

SparseLaplacian::SparseLaplacian(int n)
    : n_(n), diag_(Eigen::VectorXd::Zero(n)), offdiag_(n) {
  if (n < 0) throw std::invalid_argument("negative dimension");
}

void SparseLaplacian::add_edge(const WeightedEdge& e) {
  check_edge(e, n_);
  diag_[e.u] += e.weight;
  diag_[e.v] += e.weight;
  offdiag_[e.u].emplace_back(e.v, -e.weight);
  offdiag_[e.v].emplace_back(e.u, -e.weight);
}

Eigen::VectorXd SparseLaplacian::multiply(const Eigen::VectorXd& q) const {
  if (q.size() != n_) throw std::invalid_argument("matvec dimension mismatch");
  Eigen::VectorXd out = diag_.cwiseProduct(q);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (const auto& [j, val] : offdiag_[i]) acc += val * q[j];
    out[i] += acc;
  }
  return out;
}

double SparseLaplacian::norm_estimate() const {
  return n_ == 0 ? 0.0 : 2.0 * diag_.maxCoeff();
}

Eigen::SparseMatrix<double> SparseLaplacian::to_sparse() const {
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t nnz = static_cast<std::size_t>(n_);
  for (const auto& row : offdiag_) nnz += row.size();
  triplets.reserve(nnz);
  for (int i = 0; i < n_; ++i) {
    triplets.emplace_back(i, i, diag_[i]);
    for (const auto& [j, val] : offdiag_[i]) triplets.emplace_back(i, j, val);
  }
  Eigen::SparseMatrix<double> mat(n_, n_);
  mat.setFromTriplets(triplets.begin(), triplets.end());
  return mat;
}

Eigen::MatrixXd SparseLaplacian::to_dense() const {
  Eigen::MatrixXd mat = diag_.asDiagonal();
  for (int i = 0; i < n_; ++i) {
    for (const auto& [j, val] : offdiag_[i]) mat(i, j) += val;
  }
  return mat;
}

SparseLaplacian build_laplacian(const std::vector<WeightedEdge>& edges, int n) {
  SparseLaplacian lap(n);
  for (const auto& e : edges) lap.add_edge(e);
  return lap;
}

SparseLaplacian laplacian_at(const SparsificationProblem& problem,
                             const Eigen::VectorXd& x) {
  if (x.size() != problem.num_candidates()) {
    throw std::invalid_argument("selection length does not match candidates");
  }
  SparseLaplacian lap = build_laplacian(problem.fixed_edges, problem.n);
  for (int k = 0; k < x.size(); ++k) {
    if (x[k] < -1e-12 || x[k] > 1.0 + 1e-12) {
      throw std::invalid_argument("selection entry outside [0, 1]");
    }
    if (x[k] > 0.0) {
      const WeightedEdge& e = problem.candidate_edges[k];
      lap.add_edge({e.u, e.v, x[k] * e.weight});
    }
  }
  return lap;
}

double edge_quadratic_form(const WeightedEdge& e, const Eigen::VectorXd& q) {
  const int n = static_cast<int>(q.size());
  if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
    throw std::out_of_range("edge index out of range in quadratic form");
  }
  const double d = q[e.u] - q[e.v];
  return e.weight * d * d;
}

int count_components(const std::vector<WeightedEdge>& edges, int n) {
  Dsu dsu(n);
  int components = n;
  for (const auto& e : edges) {
    check_edge(e, n);
    if (e.weight > 0.0 && dsu.merge(e.u, e.v)) --components;
  }
  return components;
}

namespace {

std::vector<WeightedEdge> merge_duplicates(
    const std::vector<WeightedEdge>& edges) {
  std::map<std::pair<int, int>, double> acc;
  std::vector<std::pair<int, int>> order;
  for (const auto& e : edges) {
    auto key = canonical(e);
    auto [it, inserted] = acc.emplace(key, 0.0);
    if (inserted) order.push_back(key);
    it->second += e.weight;
  }
  std::vector<WeightedEdge> merged;
  merged.reserve(order.size());
  for (const auto& key : order) {
    merged.push_back({key.first, key.second, acc.at(key)});
  }
  return merged;
}

}  // namespace

SparsificationProblem normalize_problem(SparsificationProblem problem) {
  for (const auto& e : problem.fixed_edges) check_edge(e, problem.n);
  for (const auto& e : problem.candidate_edges) check_edge(e, problem.n);
  problem.fixed_edges = merge_duplicates(problem.fixed_edges);
  problem.candidate_edges = merge_duplicates(problem.candidate_edges);

  std::map<std::pair<int, int>, bool> fixed_pairs;
  for (const auto& e : problem.fixed_edges) fixed_pairs[canonical(e)] = true;
  for (const auto& e : problem.candidate_edges) {
    if (fixed_pairs.count(canonical(e))) {
      throw std::invalid_argument(
          "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
          ") appears in both fixed and candidate sets");
    }
  }
  if (problem.budget < 0 || problem.budget > problem.num_candidates()) {
    throw std::invalid_argument("budget K outside [0, m]");
  }
  return problem;
}

std::vector<std::string> validate(const SparsificationProblem& problem) {
  std::vector<std::string> warnings;
  const int fixed_components = count_components(problem.fixed_edges, problem.n);
  if (fixed_components > 1) {
    // K independent merges are needed on top of what the fixed edges give;
    // each selected candidate can reduce the component count by at most one.
    const int merges_needed = fixed_components - 1;
    if (problem.budget < merges_needed) {
      warnings.push_back(
          "feasible selections cannot contain a spanning tree: fixed edges "
          "leave " +
          std::to_string(fixed_components) + " components but K = " +
          std::to_string(problem.budget));
    } else {
      std::vector<WeightedEdge> all = problem.fixed_edges;
      all.insert(all.end(), problem.candidate_edges.begin(),
                 problem.candidate_edges.end());
      if (count_components(all, problem.n) > 1) {
        warnings.push_back(
            "graph is disconnected even with every candidate selected");
      }
    }
  }
  return warnings;
}

}  // namespace mac
