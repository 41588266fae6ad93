#pragma once

#include <string>
#include <vector>

#include "mac/graph.hpp"
#include "mac/solver.hpp"

namespace mac {

enum class PoseKind { kSE2, kSE3 };

struct G2oVertex {
  int id = 0;
  PoseKind kind = PoseKind::kSE2;
  std::vector<double> pose;  // SE2: x y theta; SE3: x y z qx qy qz qw
};

struct G2oEdge {
  int from = 0;
  int to = 0;
  PoseKind kind = PoseKind::kSE2;
  std::vector<double> measurement;
  std::vector<double> info_upper;  // row-major upper triangle (6 or 21 values)
};

struct PoseGraphFile {
  std::vector<G2oVertex> vertices;
  std::vector<G2oEdge> edges;
  int skipped_records = 0;
};

/// Reads VERTEX_SE2/EDGE_SE2 or VERTEX_SE3:QUAT/EDGE_SE3:QUAT records.
/// Unknown record types are counted and skipped. Throws std::runtime_error
/// with a line number on malformed fields and on mixed 2D/3D content.
PoseGraphFile parse_g2o(const std::string& path);

/// Rotation-precision weight of an edge: the (3,3) information entry for
/// SE2, the mean of the three rotational diagonal entries for SE3.
double rotational_weight(const G2oEdge& edge);

/// Edges between consecutive vertex ids are odometry (fixed); all others are
/// loop-closure candidates. Returns indices into file.edges.
struct EdgeClassification {
  std::vector<int> fixed;
  std::vector<int> candidates;
};
EdgeClassification classify_edges(const PoseGraphFile& file);

/// Builds the rotational-weight sparsification problem with budget
/// K = round(fraction * m). Candidate order follows file order.
SparsificationProblem to_problem(const PoseGraphFile& file,
                                 double budget_fraction);

/// As above with an absolute budget K (overrides any fraction).
SparsificationProblem to_problem_with_budget(const PoseGraphFile& file, int K);

/// Writes all vertices, all fixed edges, and exactly the selected candidates
/// as valid g2o text (17 significant digits).
void write_g2o(const PoseGraphFile& file, const BinarySelection& selection,
               const std::string& path);

}  // namespace mac
