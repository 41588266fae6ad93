#include "mac/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mac/fiedler.hpp"
#include "mac/rounding.hpp"

namespace mac {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void check_feasible(const Eigen::VectorXd& x, int K) {
  for (int k = 0; k < x.size(); ++k) {
    if (x[k] < -1e-12 || x[k] > 1.0 + 1e-12) {
      throw std::invalid_argument("iterate left the box [0, 1]^m");
    }
  }
  if (std::abs(x.sum() - K) > 1e-9 * std::max(1.0, static_cast<double>(K))) {
    throw std::invalid_argument("iterate violates the budget equality");
  }
}

}  // namespace

Eigen::VectorXd supergradient(const SparsificationProblem& problem,
                              const Eigen::VectorXd& q2) {
  if (q2.size() != problem.n) {
    throw std::invalid_argument("Fiedler vector has wrong dimension");
  }
  Eigen::VectorXd g(problem.num_candidates());
  for (int k = 0; k < g.size(); ++k) {
    g[k] = edge_quadratic_form(problem.candidate_edges[k], q2);
  }
  return g;
}

BinarySelection solve_direction(const Eigen::VectorXd& g, int K) {
  if (K < 0 || K > g.size()) throw std::invalid_argument("K outside [0, m]");
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g[a] > g[b]; });
  BinarySelection s(g.size(), 0);
  for (int i = 0; i < K; ++i) s[order[i]] = 1;
  return s;
}

double dual_bound(double f_value, const Eigen::VectorXd& g,
                  const BinarySelection& s_star, const Eigen::VectorXd& x) {
  if (static_cast<int>(s_star.size()) != g.size() || x.size() != g.size()) {
    throw std::invalid_argument("dual_bound dimension mismatch");
  }
  double correction = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    correction += g[k] * (static_cast<double>(s_star[k]) - x[k]);
  }
  return f_value + correction;
}

Eigen::VectorXd initial_selection(const SparsificationProblem& problem,
                                  Init init) {
  const int m = problem.num_candidates();
  const int K = problem.budget;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  if (init == Init::kUniform) {
    if (m > 0) x.setConstant(static_cast<double>(K) / m);
    return x;
  }
  // Top-K weights, ties by lowest index (shares solve_direction's rule).
  Eigen::VectorXd weights(m);
  for (int k = 0; k < m; ++k) weights[k] = problem.candidate_edges[k].weight;
  BinarySelection bits = solve_direction(weights, K);
  for (int k = 0; k < m; ++k) x[k] = bits[k];
  return x;
}

std::pair<Eigen::VectorXd, std::vector<IterationRecord>> frank_wolfe(
    const SparsificationProblem& problem, Eigen::VectorXd x,
    const FrankWolfeOptions& options) {
  const int K = problem.budget;
  check_feasible(x, K);

  std::vector<IterationRecord> history;
  std::optional<Eigen::VectorXd> warm;

  for (int t = 0; t < options.max_iters; ++t) {
    const auto tic = std::chrono::steady_clock::now();
    FiedlerPair pair;
    try {
      pair = find_fiedler(laplacian_at(problem, x), warm, options.fiedler_tol);
    } catch (const FiedlerError& err) {
      throw FiedlerError("Frank-Wolfe iteration " + std::to_string(t) + ": " +
                             err.what(),
                         err.best_residual());
    }
    const double solve_time = seconds_since(tic);
    warm = pair.q2;

    const Eigen::VectorXd g = supergradient(problem, pair.q2);
    const BinarySelection s = solve_direction(g, K);
    const double bound = dual_bound(pair.lambda2, g, s, x);
    const double alpha = 2.0 / (2.0 + t);

    IterationRecord record;
    record.iter = t;
    record.f_value = pair.lambda2;
    record.dual_bound = bound;
    record.gap = bound - pair.lambda2;
    record.step_size = alpha;
    record.fiedler_solve_time = solve_time;
    record.degenerate = (pair.lambda3 - pair.lambda2) < 1e-6;
    history.push_back(record);

    if (record.gap <= options.gap_tol) break;

    for (int k = 0; k < x.size(); ++k) {
      x[k] += alpha * (static_cast<double>(s[k]) - x[k]);
      x[k] = std::clamp(x[k], 0.0, 1.0);
    }
    check_feasible(x, K);
  }
  return {std::move(x), std::move(history)};
}

SolveResult mac(const SparsificationProblem& problem,
                const MacOptions& options) {
  const auto tic = std::chrono::steady_clock::now();
  const int K = problem.budget;

  FrankWolfeOptions fw;
  fw.max_iters = options.max_iters;
  fw.gap_tol = options.gap_tol;
  fw.fiedler_tol = options.fiedler_tol;

  Eigen::VectorXd x0 = initial_selection(problem, options.init);
  auto [x, history] = frank_wolfe(problem, std::move(x0), fw);

  SolveResult result;
  result.relaxed_x = x;
  result.history = std::move(history);

  if (options.rounding == Rounding::kNearest) {
    result.rounded_x = round_nearest(x, K);
  } else {
    result.rounded_x = round_madow_best(problem, x, K, options.seed,
                                        options.madow_draws,
                                        options.fiedler_tol);
  }

  result.f_relaxed =
      find_fiedler(laplacian_at(problem, x), {}, options.fiedler_tol).lambda2;
  result.f_rounded =
      evaluate_selection(problem, result.rounded_x, options.fiedler_tol);

  // Each per-iteration F_D is a valid upper bound on the integral optimum;
  // the minimum over the run is the tightest certificate.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rec : result.history) best = std::min(best, rec.dual_bound);
  if (result.history.empty()) {
    // max_iters = 0 (or no candidates): certify from the returned point.
    FiedlerPair pair =
        find_fiedler(laplacian_at(problem, x), {}, options.fiedler_tol);
    const Eigen::VectorXd g = supergradient(problem, pair.q2);
    best = dual_bound(pair.lambda2, g, solve_direction(g, K), x);
    result.final_dual_bound = best;
  } else {
    result.final_dual_bound = result.history.back().dual_bound;
  }
  result.best_dual_bound = best;
  result.total_time = seconds_since(tic);
  return result;
}

}  // namespace mac
