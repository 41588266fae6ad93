#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace mac {

/// An undirected edge {u, v} with nonnegative weight.
struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

/// Symmetric sparse Laplacian with amortized O(1) edge insertion.
/// Row sums are zero by construction (the all-ones vector is in the kernel).
class SparseLaplacian {
 public:
  explicit SparseLaplacian(int n);

  int dim() const { return n_; }

  /// Adds the Laplacian of a single weighted edge in place.
  void add_edge(const WeightedEdge& e);

  Eigen::VectorXd multiply(const Eigen::VectorXd& q) const;

  /// Upper bound on the induced inf-norm: 2 * max diagonal entry.
  double norm_estimate() const;

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;

 private:
  int n_;
  Eigen::VectorXd diag_;
  // Per-row off-diagonal contributions; duplicate (col, -w) entries are
  // accumulated on read, so insertion never scans.
  std::vector<std::vector<std::pair<int, double>>> offdiag_;
};

/// Edge-selection problem: fixed edges E^f, candidate edges E^c, budget K.
struct SparsificationProblem {
  int n = 0;
  std::vector<WeightedEdge> fixed_edges;
  std::vector<WeightedEdge> candidate_edges;
  int budget = 0;

  int num_candidates() const { return static_cast<int>(candidate_edges.size()); }
};

SparseLaplacian build_laplacian(const std::vector<WeightedEdge>& edges, int n);

/// Evaluates the affine map x -> L^f + sum_k x_k L^c_k.
SparseLaplacian laplacian_at(const SparsificationProblem& problem,
                             const Eigen::VectorXd& x);

/// q^T L_e q = w_e (q_u - q_v)^2 for a single edge Laplacian.
double edge_quadratic_form(const WeightedEdge& e, const Eigen::VectorXd& q);

/// Number of connected components of (V, {e : w_e > 0}) via disjoint-set union.
int count_components(const std::vector<WeightedEdge>& edges, int n);

/// Merges duplicate pairs within each edge list (weights add), rejects
/// duplicates across the fixed/candidate lists, checks 0 <= K <= m.
/// Throws std::invalid_argument on violation.
SparsificationProblem normalize_problem(SparsificationProblem problem);

/// Warnings only: flags budgets that cannot yield a connected selection
/// (neither E^f nor E^f plus any K candidates can contain a spanning tree).
std::vector<std::string> validate(const SparsificationProblem& problem);

}  // namespace mac
