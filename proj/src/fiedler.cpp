#include "mac/fiedler.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace mac {

namespace {

constexpr int kDenseThreshold = 64;

void project_out_ones(Eigen::VectorXd& v) {
  v.array() -= v.mean();
}

FiedlerPair dense_fiedler(const SparseLaplacian& lap) {
  const int n = lap.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap.to_dense());
  const Eigen::VectorXd& evs = es.eigenvalues();
  const double lambda2 = evs[1];
  const double cluster_eps = 1e-9 * std::max(1.0, evs[n - 1]);

  // Within the eigenspace cluster at lambda2, pick a representative
  // orthogonal to the all-ones kernel direction. When lambda2 = 0 the
  // cluster contains the kernel, so the projection is what removes 1.
  Eigen::VectorXd best;
  double best_norm = -1.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(evs[i] - lambda2) > cluster_eps) continue;
    Eigen::VectorXd v = es.eigenvectors().col(i);
    project_out_ones(v);
    const double norm = v.norm();
    if (norm > best_norm) {
      best_norm = norm;
      best = v;
    }
  }
  best /= best.norm();

  FiedlerPair out;
  out.lambda2 = lambda2;
  out.q2 = best;
  out.lambda3 =
      n > 2 ? evs[2] : std::numeric_limits<double>::infinity();
  return out;
}

// Shift-invert Lanczos with full reorthogonalization, restricted to the
// subspace orthogonal to the all-ones vector. The largest Ritz values of
// (L + eps I)^{-1} correspond to the smallest eigenvalues of the deflated L.
class ShiftInvertLanczos {
 public:
  ShiftInvertLanczos(const SparseLaplacian& lap, double tol)
      : lap_(lap), n_(lap.dim()), tol_(tol) {
    const double max_diag = lap.norm_estimate() / 2.0;
    shift_ = 1e-9 * std::max(1.0, max_diag);
    matrix_ = lap.to_sparse();
    for (int attempt = 0; attempt < 4; ++attempt) {
      Eigen::SparseMatrix<double> shifted = matrix_;
      for (int i = 0; i < n_; ++i) shifted.coeffRef(i, i) += shift_;
      ldlt_.compute(shifted);
      if (ldlt_.info() == Eigen::Success) return;
      shift_ *= 1e3;
    }
    throw FiedlerError("sparse factorization of shifted Laplacian failed",
                       std::numeric_limits<double>::infinity());
  }

  FiedlerPair run(std::optional<Eigen::VectorXd> warm_start) {
    Eigen::VectorXd start = make_start(std::move(warm_start));
    double best_residual = std::numeric_limits<double>::infinity();
    FiedlerPair best;
    const int max_restarts = 4;
    for (int restart = 0; restart < max_restarts; ++restart) {
      auto [pair, residual] = sweep(start);
      if (residual < best_residual) {
        best_residual = residual;
        best = pair;
      }
      if (best_residual <= tol_ * std::max(1.0, lap_.norm_estimate())) {
        return best;
      }
      start = best.q2;
    }
    throw FiedlerError("Fiedler iteration did not converge, best residual " +
                           std::to_string(best_residual),
                       best_residual);
  }

 private:
  Eigen::VectorXd make_start(std::optional<Eigen::VectorXd> warm) {
    Eigen::VectorXd v;
    if (warm && warm->size() == n_) {
      v = std::move(*warm);
    } else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      v.resize(n_);
      for (int i = 0; i < n_; ++i) v[i] = dist(rng);
    }
    project_out_ones(v);
    const double norm = v.norm();
    if (norm < 1e-14) return make_start(std::nullopt);
    return v / norm;
  }

  // One Lanczos sweep; returns the best Ritz approximation and its residual.
  std::pair<FiedlerPair, double> sweep(const Eigen::VectorXd& start) {
    const int jmax = std::min(n_ - 1, 250);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(jmax);
    std::vector<double> alpha, beta;

    basis.push_back(start);
    FiedlerPair best;
    double best_residual = std::numeric_limits<double>::infinity();

    for (int j = 0; j < jmax; ++j) {
      Eigen::VectorXd w = ldlt_.solve(basis[j]);
      project_out_ones(w);
      const double a = basis[j].dot(w);
      alpha.push_back(a);
      w -= a * basis[j];
      if (j > 0) w -= beta[j - 1] * basis[j - 1];
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) w -= v.dot(w) * v;
      }
      const double b = w.norm();

      const bool check_now = (j + 1) % 10 == 0 || b < 1e-13 || j + 1 == jmax;
      if (check_now) {
        auto [pair, residual] = ritz_extract(basis, alpha, beta);
        if (residual < best_residual) {
          best_residual = residual;
          best = pair;
        }
        if (best_residual <= tol_ * std::max(1.0, lap_.norm_estimate())) {
          return {best, best_residual};
        }
      }
      if (b < 1e-13) break;  // invariant subspace
      beta.push_back(b);
      basis.push_back(w / b);
    }
    return {best, best_residual};
  }

  std::pair<FiedlerPair, double> ritz_extract(
      const std::vector<Eigen::VectorXd>& basis,
      const std::vector<double>& alpha, const std::vector<double>& beta) {
    const int j = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(j, j);
    for (int i = 0; i < j; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < j) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);

    auto ritz_vector = [&](int col) {
      Eigen::VectorXd q = Eigen::VectorXd::Zero(n_);
      for (int i = 0; i < j; ++i) q += es.eigenvectors()(i, col) * basis[i];
      project_out_ones(q);
      q /= q.norm();
      return q;
    };

    // Largest Ritz value of the inverse operator <-> smallest deflated
    // eigenvalue of L; the Rayleigh quotient on L refines the estimate.
    Eigen::VectorXd q2 = ritz_vector(j - 1);
    const double lambda2 = q2.dot(lap_.multiply(q2));
    const double residual = (lap_.multiply(q2) - lambda2 * q2).norm();

    FiedlerPair pair;
    pair.lambda2 = lambda2;
    pair.q2 = std::move(q2);
    if (j >= 2) {
      Eigen::VectorXd q3 = ritz_vector(j - 2);
      pair.lambda3 = q3.dot(lap_.multiply(q3));
    } else {
      pair.lambda3 = std::numeric_limits<double>::infinity();
    }
    return {pair, residual};
  }

  const SparseLaplacian& lap_;
  int n_;
  double tol_;
  double shift_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

}  // namespace

FiedlerPair find_fiedler(const SparseLaplacian& lap,
                         std::optional<Eigen::VectorXd> warm_start,
                         double tol) {
  const int n = lap.dim();
  if (n < 2) {
    throw std::invalid_argument("Fiedler value requires at least two nodes");
  }
  if (n <= kDenseThreshold) return dense_fiedler(lap);
  ShiftInvertLanczos solver(lap, tol);
  return solver.run(std::move(warm_start));
}

}  // namespace mac
