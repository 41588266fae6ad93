#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "mac/graph.hpp"

namespace mac {

using BinarySelection = std::vector<std::uint8_t>;

enum class Rounding { kNearest, kMadow };
enum class Init { kNaiveTopK, kUniform };

struct IterationRecord {
  int iter = 0;
  double f_value = 0.0;
  double dual_bound = 0.0;
  double gap = 0.0;
  double step_size = 0.0;
  double fiedler_solve_time = 0.0;
  // lambda3 - lambda2 below 1e-6: the supergradient is one element of a
  // nontrivial superdifferential.
  bool degenerate = false;
};

struct SolveResult {
  Eigen::VectorXd relaxed_x;
  BinarySelection rounded_x;
  double f_relaxed = 0.0;
  double f_rounded = 0.0;
  double best_dual_bound = 0.0;
  double final_dual_bound = 0.0;
  std::vector<IterationRecord> history;
  double total_time = 0.0;
};

struct FrankWolfeOptions {
  int max_iters = 20;
  double gap_tol = 1e-8;
  double fiedler_tol = 1e-8;
};

struct MacOptions {
  Rounding rounding = Rounding::kMadow;
  Init init = Init::kNaiveTopK;
  int max_iters = 20;
  double gap_tol = 1e-8;
  double fiedler_tol = 1e-8;
  std::uint64_t seed = 0;
  int madow_draws = 1;
};

/// g_k = q2^T L^c_k q2; every entry is nonnegative.
Eigen::VectorXd supergradient(const SparsificationProblem& problem,
                              const Eigen::VectorXd& q2);

/// Closed-form maximizer of g^T s over the budgeted box: ones at the K
/// largest entries of g, ties broken by lowest index.
BinarySelection solve_direction(const Eigen::VectorXd& g, int K);

/// Dual upper bound F_D(x) = f(x) + g^T (s* - x) on the optimal value of the
/// original (integral) problem.
double dual_bound(double f_value, const Eigen::VectorXd& g,
                  const BinarySelection& s_star, const Eigen::VectorXd& x);

/// Feasible starting point for a given initialization strategy.
Eigen::VectorXd initial_selection(const SparsificationProblem& problem,
                                  Init init);

/// Frank-Wolfe on the Boolean relaxation, step size 2/(2+t), stopping when
/// the duality gap reaches gap_tol or after max_iters iterations.
std::pair<Eigen::VectorXd, std::vector<IterationRecord>> frank_wolfe(
    const SparsificationProblem& problem, Eigen::VectorXd x0,
    const FrankWolfeOptions& options = {});

/// Full pipeline: Frank-Wolfe from the configured initializer, rounding,
/// objective evaluation at the relaxed and rounded points, dual bounds.
SolveResult mac(const SparsificationProblem& problem,
                const MacOptions& options = {});

}  // namespace mac
