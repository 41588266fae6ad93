#include "mac/g2o_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mac {

namespace {

struct LineReader {
  std::istringstream stream;
  int line_number;

  double next_double() {
    double value = 0.0;
    if (!(stream >> value) || !std::isfinite(value)) {
      throw std::runtime_error("malformed numeric field at line " +
                               std::to_string(line_number));
    }
    return value;
  }
  int next_int() {
    int value = 0;
    if (!(stream >> value)) {
      throw std::runtime_error("malformed integer field at line " +
                               std::to_string(line_number));
    }
    return value;
  }
};

void check_kind(std::optional<PoseKind>& file_kind, PoseKind record_kind,
                int line_number) {
  if (!file_kind) {
    file_kind = record_kind;
  } else if (*file_kind != record_kind) {
    throw std::runtime_error("mixed SE2/SE3 records at line " +
                             std::to_string(line_number));
  }
}

// Row-major upper-triangular index for a d x d symmetric matrix.
int upper_index(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i - 1) / 2 + (j - i);
}

void check_info(const G2oEdge& edge, int line_number) {
  const int d = edge.kind == PoseKind::kSE2 ? 3 : 6;
  for (int i = 0; i < d; ++i) {
    if (edge.info_upper[upper_index(i, i, d)] < 0.0) {
      throw std::runtime_error("negative information diagonal at line " +
                               std::to_string(line_number));
    }
  }
}

}  // namespace

PoseGraphFile parse_g2o(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  PoseGraphFile file;
  std::optional<PoseKind> kind;
  std::string line;
  int line_number = 0;

  while (std::getline(in, line)) {
    ++line_number;
    LineReader reader{std::istringstream(line), line_number};
    std::string tag;
    if (!(reader.stream >> tag) || tag.empty() || tag[0] == '#') continue;

    if (tag == "VERTEX_SE2" || tag == "VERTEX_SE3:QUAT") {
      G2oVertex vertex;
      vertex.kind = tag == "VERTEX_SE2" ? PoseKind::kSE2 : PoseKind::kSE3;
      check_kind(kind, vertex.kind, line_number);
      vertex.id = reader.next_int();
      const int dims = vertex.kind == PoseKind::kSE2 ? 3 : 7;
      for (int i = 0; i < dims; ++i) vertex.pose.push_back(reader.next_double());
      file.vertices.push_back(std::move(vertex));
    } else if (tag == "EDGE_SE2" || tag == "EDGE_SE3:QUAT") {
      G2oEdge edge;
      edge.kind = tag == "EDGE_SE2" ? PoseKind::kSE2 : PoseKind::kSE3;
      check_kind(kind, edge.kind, line_number);
      edge.from = reader.next_int();
      edge.to = reader.next_int();
      const int meas = edge.kind == PoseKind::kSE2 ? 3 : 7;
      const int info = edge.kind == PoseKind::kSE2 ? 6 : 21;
      for (int i = 0; i < meas; ++i) {
        edge.measurement.push_back(reader.next_double());
      }
      for (int i = 0; i < info; ++i) {
        edge.info_upper.push_back(reader.next_double());
      }
      check_info(edge, line_number);
      file.edges.push_back(std::move(edge));
    } else {
      ++file.skipped_records;
    }
  }

  std::set<int> ids;
  for (const auto& v : file.vertices) ids.insert(v.id);
  for (const auto& e : file.edges) {
    if (!ids.count(e.from) || !ids.count(e.to)) {
      throw std::runtime_error("edge (" + std::to_string(e.from) + ", " +
                               std::to_string(e.to) +
                               ") references an undeclared vertex");
    }
  }
  return file;
}

double rotational_weight(const G2oEdge& edge) {
  if (edge.kind == PoseKind::kSE2) {
    return edge.info_upper[upper_index(2, 2, 3)];
  }
  return (edge.info_upper[upper_index(3, 3, 6)] +
          edge.info_upper[upper_index(4, 4, 6)] +
          edge.info_upper[upper_index(5, 5, 6)]) /
         3.0;
}

EdgeClassification classify_edges(const PoseGraphFile& file) {
  EdgeClassification out;
  for (int i = 0; i < static_cast<int>(file.edges.size()); ++i) {
    const G2oEdge& e = file.edges[i];
    if (std::abs(e.from - e.to) == 1) {
      out.fixed.push_back(i);
    } else {
      out.candidates.push_back(i);
    }
  }
  return out;
}

namespace {

SparsificationProblem build_problem(const PoseGraphFile& file) {
  std::map<int, int> index;  // sorted vertex id -> contiguous node index
  for (const auto& v : file.vertices) index.emplace(v.id, 0);
  int next = 0;
  for (auto& [id, idx] : index) idx = next++;

  const EdgeClassification classes = classify_edges(file);
  SparsificationProblem problem;
  problem.n = static_cast<int>(index.size());
  for (int i : classes.fixed) {
    const G2oEdge& e = file.edges[i];
    problem.fixed_edges.push_back(
        {index.at(e.from), index.at(e.to), rotational_weight(e)});
  }
  for (int i : classes.candidates) {
    const G2oEdge& e = file.edges[i];
    problem.candidate_edges.push_back(
        {index.at(e.from), index.at(e.to), rotational_weight(e)});
  }
  return problem;
}

}  // namespace

SparsificationProblem to_problem(const PoseGraphFile& file,
                                 double budget_fraction) {
  if (budget_fraction < 0.0 || budget_fraction > 1.0) {
    throw std::invalid_argument("budget fraction outside [0, 1]");
  }
  SparsificationProblem problem = build_problem(file);
  problem.budget = static_cast<int>(
      std::lround(budget_fraction * problem.num_candidates()));
  return problem;
}

SparsificationProblem to_problem_with_budget(const PoseGraphFile& file,
                                             int K) {
  SparsificationProblem problem = build_problem(file);
  if (K < 0 || K > problem.num_candidates()) {
    throw std::invalid_argument("budget K outside [0, m]");
  }
  problem.budget = K;
  return problem;
}

void write_g2o(const PoseGraphFile& file, const BinarySelection& selection,
               const std::string& path) {
  const EdgeClassification classes = classify_edges(file);
  if (selection.size() != classes.candidates.size()) {
    throw std::invalid_argument(
        "selection length does not match candidate count");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);

  auto write_edge = [&](const G2oEdge& e) {
    out << (e.kind == PoseKind::kSE2 ? "EDGE_SE2" : "EDGE_SE3:QUAT") << ' '
        << e.from << ' ' << e.to;
    for (double v : e.measurement) out << ' ' << v;
    for (double v : e.info_upper) out << ' ' << v;
    out << '\n';
  };

  for (const auto& v : file.vertices) {
    out << (v.kind == PoseKind::kSE2 ? "VERTEX_SE2" : "VERTEX_SE3:QUAT") << ' '
        << v.id;
    for (double p : v.pose) out << ' ' << p;
    out << '\n';
  }
  for (int i : classes.fixed) write_edge(file.edges[i]);
  for (std::size_t k = 0; k < selection.size(); ++k) {
    if (selection[k]) write_edge(file.edges[classes.candidates[k]]);
  }
  if (!out) throw std::runtime_error("I/O failure writing " + path);
}

}  // namespace mac
