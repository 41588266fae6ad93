#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "mac/graph.hpp"
#include "mac/solver.hpp"

namespace mac {

/// Ones at the K largest entries of x (ties by lowest index); the nearest
/// K-sparse binary vector in the l1 sense.
BinarySelection round_nearest(const Eigen::VectorXd& x, int K);

/// Madow systematic sampling: one uniform draw, cumulative thresholds,
/// half-open intervals. Inclusion probability of index k equals x_k.
/// Deterministic for a given seed (mt19937_64, 53-bit uniform).
BinarySelection round_madow(const Eigen::VectorXd& x, int K,
                            std::uint64_t seed);

/// Runs Madow sampling `draws` times (seeds seed, seed+1, ...) and keeps the
/// selection with the largest algebraic connectivity.
BinarySelection round_madow_best(const SparsificationProblem& problem,
                                 const Eigen::VectorXd& x, int K,
                                 std::uint64_t seed, int draws,
                                 double fiedler_tol = 1e-8);

/// lambda2 of the graph with the fixed edges plus the selected candidates.
double evaluate_selection(const SparsificationProblem& problem,
                          const BinarySelection& selection,
                          double fiedler_tol = 1e-8);

}  // namespace mac
