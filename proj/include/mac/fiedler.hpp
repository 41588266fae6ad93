#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>

#include "mac/graph.hpp"

namespace mac {

/// Algebraic connectivity and an associated unit Fiedler vector.
/// q2 is orthogonal to the all-ones vector. lambda3 is an estimate of the
/// next eigenvalue (exact on the dense path), used to flag near-degeneracy.
struct FiedlerPair {
  double lambda2 = 0.0;
  Eigen::VectorXd q2;
  double lambda3 = 0.0;
};

class FiedlerError : public std::runtime_error {
 public:
  FiedlerError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Second-smallest eigenpair of a graph Laplacian, deflating the all-ones
/// kernel vector. Small matrices go through a dense eigendecomposition;
/// larger ones use shift-invert Lanczos on the subspace orthogonal to 1,
/// optionally warm-started from a previous Fiedler vector.
FiedlerPair find_fiedler(const SparseLaplacian& lap,
                         std::optional<Eigen::VectorXd> warm_start = {},
                         double tol = 1e-8);

}  // namespace mac
