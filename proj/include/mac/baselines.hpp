#pragma once

#include "mac/graph.hpp"
#include "mac/solver.hpp"

namespace mac {

/// Topology-agnostic baseline: the K candidate edges of largest weight,
/// ties broken by lowest index.
BinarySelection naive_topk(const SparsificationProblem& problem, int K);

/// Greedy D-optimal edge selection: K edges chosen sequentially, each
/// maximizing the log-determinant gain of the reduced Laplacian (anchored at
/// node 0), with lazy evaluation of the submodular gains. Gains are computed
/// from an explicitly maintained dense inverse updated by Sherman-Morrison,
/// so each evaluation costs O(1) and each selection O(n^2).
/// Throws std::invalid_argument if the fixed-edge graph is disconnected
/// (seed it with a spanning tree first).
BinarySelection greedy_esp(const SparsificationProblem& problem, int K);

/// log det of the reduced (anchored) Laplacian of fixed edges plus the
/// selected candidates; equals the log weighted spanning-tree count.
double reduced_logdet(const SparsificationProblem& problem,
                      const BinarySelection& selection, int anchor = 0);

}  // namespace mac
