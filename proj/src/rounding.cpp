#include "mac/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mac/fiedler.hpp"

namespace mac {

namespace {

// Indices of the K largest values, ties broken by lowest index.
std::vector<int> top_k_indices(const Eigen::VectorXd& values, int K) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  order.resize(K);
  return order;
}

// One uniform draw in [0, 1) with exactly 53 random mantissa bits, so the
// result is identical on any platform for a given seed.
double uniform53(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

BinarySelection round_nearest(const Eigen::VectorXd& x, int K) {
  if (K < 0 || K > x.size()) throw std::invalid_argument("K outside [0, m]");
  BinarySelection bits(x.size(), 0);
  for (int idx : top_k_indices(x, K)) bits[idx] = 1;
  return bits;
}

BinarySelection round_madow(const Eigen::VectorXd& x, int K,
                            std::uint64_t seed) {
  const int m = static_cast<int>(x.size());
  if (K < 0 || K > m) throw std::invalid_argument("K outside [0, m]");
  BinarySelection bits(m, 0);
  if (K == 0) return bits;

  const double total = x.sum();
  if (std::abs(total - K) > 1e-6) {
    throw std::invalid_argument("selection mass does not sum to K");
  }
  // Renormalize floating-point drift so the final threshold is exactly K.
  const double scale = total > 0.0 ? static_cast<double>(K) / total : 1.0;
  std::vector<double> thresholds(m + 1, 0.0);
  for (int k = 0; k < m; ++k) {
    thresholds[k + 1] = thresholds[k] + scale * x[k];
  }
  thresholds[m] = static_cast<double>(K);

  const double u = uniform53(seed);
  int selected = 0;
  for (int i = 0; i < K; ++i) {
    const double point = u + static_cast<double>(i);
    // k such that thresholds[k] <= point < thresholds[k + 1].
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), point);
    int k = static_cast<int>(it - thresholds.begin()) - 1;
    k = std::clamp(k, 0, m - 1);
    if (!bits[k]) {
      bits[k] = 1;
      ++selected;
    }
  }
  // Intervals are half-open with unit spacing, so double selection cannot
  // occur; guard anyway so the exactly-K contract never silently breaks.
  if (selected != K) {
    throw std::logic_error("Madow sampling selected " +
                           std::to_string(selected) + " != K elements");
  }
  return bits;
}

BinarySelection round_madow_best(const SparsificationProblem& problem,
                                 const Eigen::VectorXd& x, int K,
                                 std::uint64_t seed, int draws,
                                 double fiedler_tol) {
  if (draws < 1) throw std::invalid_argument("draws must be positive");
  if (draws == 1) return round_madow(x, K, seed);

  BinarySelection best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < draws; ++r) {
    BinarySelection bits = round_madow(x, K, seed + static_cast<std::uint64_t>(r));
    const double value = evaluate_selection(problem, bits, fiedler_tol);
    if (value > best_value) {
      best_value = value;
      best = std::move(bits);
    }
  }
  return best;
}

double evaluate_selection(const SparsificationProblem& problem,
                          const BinarySelection& selection,
                          double fiedler_tol) {
  if (static_cast<int>(selection.size()) != problem.num_candidates()) {
    throw std::invalid_argument("selection length does not match candidates");
  }
  SparseLaplacian lap = build_laplacian(problem.fixed_edges, problem.n);
  for (std::size_t k = 0; k < selection.size(); ++k) {
    if (selection[k]) lap.add_edge(problem.candidate_edges[k]);
  }
  return find_fiedler(lap, {}, fiedler_tol).lambda2;
}

}  // namespace mac
