// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Criteria that depend on optional benchmark datasets are
// skipped (and reported as such) when the files are not present.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mac/baselines.hpp"
#include "mac/fiedler.hpp"
#include "mac/g2o_io.hpp"
#include "mac/pipeline.hpp"
#include "mac/rounding.hpp"
#include "mac/solver.hpp"
#include "oracles.hpp"

using namespace mac;
using namespace mac::testing;

namespace {

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// 1. On small instances, the rounded objective and the dual certificate
//    sandwich the exhaustively computed optimum.
Criterion criterion_sandwich() {
  Criterion c;
  std::mt19937 rng(20240501);
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);   // 5..8
    const int m = 6 + static_cast<int>(rng() % 5);   // 6..10
    const int K = 2 + static_cast<int>(rng() % 4);   // 2..5
    auto problem = random_problem(rng, n, std::min(m, n * (n - 1) / 2 - (n - 1)),
                                  std::min(K, m));
    const double brute = brute_force_optimum(problem);
    MacOptions options;
    options.seed = 7;
    auto result = mac::mac(problem, options);
    c.require(result.f_rounded <= brute + 1e-8,
              "trial " + std::to_string(trial) + ": rounded " +
                  fmt(result.f_rounded) + " exceeds optimum " + fmt(brute));
    c.require(brute <= result.best_dual_bound + 1e-8,
              "trial " + std::to_string(trial) + ": optimum " + fmt(brute) +
                  " exceeds dual bound " + fmt(result.best_dual_bound));
  }
  return c;
}

// 2. The supergradient matches central finite differences of lambda2 at
//    points where the second eigenvalue is simple.
Criterion criterion_finite_differences() {
  Criterion c;
  std::mt19937 rng(20240502);
  int tested = 0;
  int attempts = 0;
  while (tested < 30 && attempts < 600 && c.ok) {
    ++attempts;
    const int K = 5 + static_cast<int>(rng() % 16);  // 5..20
    auto problem = random_problem(rng, 20, 40, K);
    Eigen::VectorXd x = random_feasible(rng, 40, K);
    auto pair = find_fiedler(laplacian_at(problem, x));
    if (pair.lambda3 - pair.lambda2 <= 1e-4) continue;
    ++tested;
    Eigen::VectorXd g = supergradient(problem, pair.q2);
    const double h = 1e-6;
    for (int k = 0; k < 40 && c.ok; ++k) {
      Eigen::VectorXd up = x, down = x;
      up[k] += h;
      down[k] -= h;
      const double slope = (dense_lambda2_at(problem, up) -
                            dense_lambda2_at(problem, down)) /
                           (2.0 * h);
      c.require(std::abs(g[k] - slope) <= 1e-4,
                "coordinate " + std::to_string(k) + ": analytic " + fmt(g[k]) +
                    " vs finite difference " + fmt(slope));
    }
  }
  c.require(tested == 30, "found only " + std::to_string(tested) +
                              " well-separated spectra in 600 attempts");
  return c;
}

// 3. lambda2 is concave on the box and lies below every supergradient plane.
Criterion criterion_concavity() {
  Criterion c;
  std::mt19937 rng(20240503);
  std::uniform_real_distribution<double> theta_dist(0.0, 1.0);
  auto problem = random_problem(rng, 12, 14, 5);
  for (int trial = 0; trial < 500 && c.ok; ++trial) {
    if (trial % 100 == 0) problem = random_problem(rng, 12, 14, 5);
    Eigen::VectorXd x = random_feasible(rng, 14, 5);
    Eigen::VectorXd y = random_feasible(rng, 14, 5);
    const double theta = theta_dist(rng);
    const double mid = dense_lambda2_at(problem, theta * x + (1 - theta) * y);
    const double chord = theta * dense_lambda2_at(problem, x) +
                         (1 - theta) * dense_lambda2_at(problem, y);
    c.require(mid >= chord - 1e-8, "concavity violated: f(mix) " + fmt(mid) +
                                       " < chord " + fmt(chord));
    auto pair = find_fiedler(laplacian_at(problem, x));
    Eigen::VectorXd g = supergradient(problem, pair.q2);
    const double plane = pair.lambda2 + g.dot(y - x);
    c.require(dense_lambda2_at(problem, y) <= plane + 1e-8,
              "supergradient plane violated at trial " + std::to_string(trial));
  }
  return c;
}

// 4. Madow rounding draws exactly K elements, matches the marginals, and
//    respects deterministic 0/1 entries.
Criterion criterion_madow() {
  Criterion c;
  Eigen::VectorXd half = Eigen::VectorXd::Constant(4, 0.5);
  std::vector<long> counts(4, 0);
  const int draws = 100000;
  for (int seed = 0; seed < draws && c.ok; ++seed) {
    auto bits = round_madow(half, 2, static_cast<std::uint64_t>(seed));
    c.require(std::count(bits.begin(), bits.end(), 1) == 2,
              "draw " + std::to_string(seed) + " did not select exactly 2");
    for (int k = 0; k < 4; ++k) counts[k] += bits[k];
  }
  for (int k = 0; k < 4; ++k) {
    const double freq = counts[k] / static_cast<double>(draws);
    c.require(std::abs(freq - 0.5) <= 0.01,
              "index " + std::to_string(k) + " frequency " + fmt(freq));
  }

  Eigen::VectorXd pinned(4);
  pinned << 1.0, 0.0, 0.6, 0.4;
  for (int seed = 0; seed < 1000 && c.ok; ++seed) {
    auto bits = round_madow(pinned, 2, static_cast<std::uint64_t>(seed));
    c.require(bits[0] == 1, "entry at 1.0 was dropped");
    c.require(bits[1] == 0, "entry at 0.0 was selected");
  }
  return c;
}

// 5. The optimizer follows the fixed-step protocol: feasible iterates,
//    step sizes 2/(2+t), and bounded support growth.
Criterion criterion_protocol() {
  Criterion c;
  std::mt19937 rng(20240505);
  auto problem = random_problem(rng, 30, 25, 8);
  Eigen::VectorXd x0 = initial_selection(problem, Init::kUniform);
  const auto support = [](const Eigen::VectorXd& v) {
    int count = 0;
    for (int k = 0; k < v.size(); ++k) {
      if (v[k] != 0.0) ++count;
    }
    return count;
  };
  const int s0 = support(x0);
  for (int t_max = 1; t_max <= 20 && c.ok; ++t_max) {
    FrankWolfeOptions options;
    options.max_iters = t_max;
    options.gap_tol = 0.0;
    auto [x, history] = frank_wolfe(problem, x0, options);
    c.require(static_cast<int>(history.size()) == t_max, "missing iterations");
    for (const auto& rec : history) {
      c.require(rec.step_size == 2.0 / (2.0 + rec.iter),
                "step size at iteration " + std::to_string(rec.iter));
    }
    double mass = 0.0;
    for (int k = 0; k < x.size(); ++k) {
      c.require(x[k] >= -1e-9 && x[k] <= 1.0 + 1e-9,
                "iterate left the box at coordinate " + std::to_string(k));
      mass += x[k];
    }
    c.require(std::abs(mass - problem.budget) <= 1e-9,
              "budget drifted to " + fmt(mass));
    c.require(support(x) <= s0 + problem.budget * t_max,
              "support grew beyond the additive bound");
  }
  return c;
}

struct DeskScale {
  SparsificationProblem problem;
  // per fraction: lambda2 per method and wall times for the speed check
  std::vector<double> fractions{0.1, 0.3, 0.5};
  std::vector<double> mac_lambda2, naive_lambda2, greedy_lambda2;
  std::vector<double> mac_time, greedy_time;
};

// Synthetic pose-graph analog: an odometry chain over a circuit of 100
// locations traversed repeatedly, with loop closures between poses that
// revisit (approximately) the same location on a later lap.
SparsificationProblem synthetic_pose_graph(std::mt19937& rng, int n, int m) {
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  std::uniform_int_distribution<int> node(0, n - 1);
  std::normal_distribution<double> jitter(0.0, 2.0);
  const int lap = 100;
  SparsificationProblem problem;
  problem.n = n;
  for (int i = 0; i + 1 < n; ++i) {
    problem.fixed_edges.push_back({i, i + 1, weight(rng)});
  }
  std::set<std::pair<int, int>> used;
  while (static_cast<int>(problem.candidate_edges.size()) < m) {
    const int a = node(rng);
    const int span = (1 + static_cast<int>(rng() % 4)) * lap;
    const int b = a + span + static_cast<int>(std::lround(jitter(rng)));
    if (b >= n || std::abs(a - b) <= 1) continue;
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (used.count(key)) continue;
    used.insert(key);
    problem.candidate_edges.push_back(
        {std::min(a, b), std::max(a, b), weight(rng)});
  }
  return problem;
}

DeskScale run_desk_scale() {
  DeskScale desk;
  std::mt19937 rng(20240506);
  desk.problem = synthetic_pose_graph(rng, 500, 800);
  for (double fraction : desk.fractions) {
    SparsificationProblem problem = desk.problem;
    problem.budget = static_cast<int>(std::lround(fraction * 800));
    RunOptions options;
    options.seed = 1;
    // drawing several samples and keeping the best costs one extra
    // eigensolve per draw and markedly stabilizes the rounded objective
    options.madow_draws = 5;
    auto mac_run = run_method(problem, Method::kMacMadow, fraction, options,
                              "synthetic-500-800");
    auto naive_run =
        run_method(problem, Method::kNaive, fraction, options,
                   "synthetic-500-800");
    auto greedy_run = run_method(problem, Method::kGreedyEsp, fraction,
                                 options, "synthetic-500-800");
    desk.mac_lambda2.push_back(mac_run.report.lambda2_rounded);
    desk.naive_lambda2.push_back(naive_run.report.lambda2_rounded);
    desk.greedy_lambda2.push_back(greedy_run.report.lambda2_rounded);
    desk.mac_time.push_back(mac_run.report.wall_time_s);
    desk.greedy_time.push_back(greedy_run.report.wall_time_s);
  }
  return desk;
}

// 6. On a 500-node / 800-candidate synthetic instance, the solver beats the
//    weight-ranking baseline and stays within 5% of the greedy baseline.
Criterion criterion_desk_quality(const DeskScale& desk) {
  Criterion c;
  for (std::size_t i = 0; i < desk.fractions.size(); ++i) {
    const std::string at = " at fraction " + fmt(desk.fractions[i]);
    c.require(desk.mac_lambda2[i] >= desk.naive_lambda2[i] - 1e-12,
              "lambda2 " + fmt(desk.mac_lambda2[i]) + " below naive " +
                  fmt(desk.naive_lambda2[i]) + at);
    c.require(desk.mac_lambda2[i] >= 0.95 * desk.greedy_lambda2[i],
              "lambda2 " + fmt(desk.mac_lambda2[i]) +
                  " more than 5% below greedy " + fmt(desk.greedy_lambda2[i]) +
                  at);
  }
  return c;
}

// 7. On the same instance the solver is faster than the greedy baseline at
//    every fraction; an absolute timing check runs only when the
//    corresponding benchmark dataset is available.
Criterion criterion_desk_speed(const DeskScale& desk,
                               const std::string& benchmark_dir) {
  Criterion c;
  for (std::size_t i = 0; i < desk.fractions.size(); ++i) {
    c.require(desk.mac_time[i] < desk.greedy_time[i],
              fmt(desk.mac_time[i]) + "s vs greedy " +
                  fmt(desk.greedy_time[i]) + "s at fraction " +
                  fmt(desk.fractions[i]));
  }
  const std::string intel = benchmark_dir + "/intel.g2o";
  if (std::filesystem::exists(intel)) {
    auto problem = to_problem(parse_g2o(intel), 0.5);
    RunOptions options;
    auto run = run_method(problem, Method::kMacMadow, 0.5, options, "intel");
    c.require(run.report.wall_time_s < 2.5,
              "intel solve took " + fmt(run.report.wall_time_s) + "s");
    if (c.ok && c.detail.empty()) {
      c.detail = "intel timing " + fmt(run.report.wall_time_s) + "s";
    }
  } else if (c.ok) {
    c.detail = "relative timing only; intel.g2o not present";
  }
  return c;
}

// 8. g2o parse -> write -> parse is structurally idempotent and the
//    sparsified file reproduces the evaluated connectivity.
Criterion criterion_g2o_roundtrip(const std::string& fixtures) {
  Criterion c;
  for (const std::string name : {"triple_se2.g2o", "triple_se3.g2o"}) {
    auto file = parse_g2o(fixtures + "/" + name);
    auto classes = classify_edges(file);
    const std::string out1 = "/tmp/mac_acceptance_1_" + name;
    const std::string out2 = "/tmp/mac_acceptance_2_" + name;
    write_g2o(file, BinarySelection(classes.candidates.size(), 1), out1);
    auto reparsed = parse_g2o(out1);
    c.require(reparsed.vertices.size() == file.vertices.size() &&
                  reparsed.edges.size() == file.edges.size(),
              name + ": structure changed across a round trip");
    write_g2o(reparsed, BinarySelection(classes.candidates.size(), 1), out2);
    std::ifstream a(out1), b(out2);
    std::string ta((std::istreambuf_iterator<char>(a)),
                   std::istreambuf_iterator<char>());
    std::string tb((std::istreambuf_iterator<char>(b)),
                   std::istreambuf_iterator<char>());
    c.require(ta == tb, name + ": second write is not byte-identical");

    auto problem = to_problem(file, 1.0);
    for (std::size_t k = 0; k < classes.candidates.size(); ++k) {
      BinarySelection selection(classes.candidates.size(), 0);
      selection[k] = 1;
      const std::string sparse = "/tmp/mac_acceptance_s_" + name;
      write_g2o(file, selection, sparse);
      auto sparse_problem = to_problem(parse_g2o(sparse), 1.0);
      std::vector<WeightedEdge> all = sparse_problem.fixed_edges;
      for (const auto& e : sparse_problem.candidate_edges) all.push_back(e);
      const double from_file = dense_lambda2(all, sparse_problem.n);
      const double direct = evaluate_selection(problem, selection);
      c.require(std::abs(from_file - direct) <= 1e-10,
                name + ": reparsed lambda2 " + fmt(from_file) +
                    " vs evaluated " + fmt(direct));
      std::remove(sparse.c_str());
    }
    std::remove(out1.c_str());
    std::remove(out2.c_str());
  }
  return c;
}

// 9. Vertex/candidate counts of the published benchmark datasets, checked
//    only for files that are present.
Criterion criterion_benchmark_counts(const std::string& benchmark_dir) {
  Criterion c;
  struct Expected {
    const char* file;
    int vertices;
    int candidates;
  };
  const std::vector<Expected> expected = {
      {"intel.g2o", 1728, 785},      {"sphere.g2o", 2500, 2500},
      {"torus.g2o", 5000, 4049},     {"grid.g2o", 8000, 14237},
      {"city10k.g2o", 10000, 10688}, {"ais2klinik.g2o", 15115, 1614},
  };
  int checked = 0;
  for (const auto& e : expected) {
    const std::string path = benchmark_dir + "/" + e.file;
    if (!std::filesystem::exists(path)) continue;
    ++checked;
    auto file = parse_g2o(path);
    auto classes = classify_edges(file);
    c.require(static_cast<int>(file.vertices.size()) == e.vertices,
              std::string(e.file) + ": " +
                  std::to_string(file.vertices.size()) + " vertices");
    c.require(static_cast<int>(classes.candidates.size()) == e.candidates,
              std::string(e.file) + ": " +
                  std::to_string(classes.candidates.size()) + " candidates");
  }
  if (checked == 0 && c.ok) {
    c.detail = "skipped; no benchmark datasets present";
  } else if (c.ok) {
    c.detail = std::to_string(checked) + " dataset(s) checked";
  }
  return c;
}

}  // namespace

int main() {
  const char* env_dir = std::getenv("MAC_BENCHMARK_DIR");
  const std::string benchmark_dir = env_dir ? env_dir : "datasets";
  const std::string fixtures = MAC_TEST_FIXTURES;

  struct Entry {
    const char* label;
    std::function<Criterion()> run;
  };

  DeskScale desk;
  bool desk_ready = false;
  std::string desk_error;
  try {
    desk = run_desk_scale();
    desk_ready = true;
  } catch (const std::exception& ex) {
    desk_error = ex.what();
  }

  const std::vector<Entry> entries = {
      {"1 optimality sandwich on exhaustively solvable instances",
       criterion_sandwich},
      {"2 supergradient matches finite differences", criterion_finite_differences},
      {"3 concavity and supergradient inequality", criterion_concavity},
      {"4 fixed-size sampling marginals", criterion_madow},
      {"5 optimizer protocol conformance", criterion_protocol},
      {"6 quality ordering at desk scale",
       [&] {
         if (!desk_ready) return Criterion{false, desk_error};
         return criterion_desk_quality(desk);
       }},
      {"7 speed ordering at desk scale",
       [&] {
         if (!desk_ready) return Criterion{false, desk_error};
         return criterion_desk_speed(desk, benchmark_dir);
       }},
      {"8 g2o round trip", [&] { return criterion_g2o_roundtrip(fixtures); }},
      {"9 benchmark dataset counts",
       [&] { return criterion_benchmark_counts(benchmark_dir); }},
  };

  bool all_ok = true;
  for (const auto& entry : entries) {
    Criterion result;
    try {
      result = entry.run();
    } catch (const std::exception& ex) {
      result.ok = false;
      result.detail = std::string("exception: ") + ex.what();
    }
    all_ok = all_ok && result.ok;
    std::cout << (result.ok ? "PASS" : "FAIL") << " criterion " << entry.label;
    if (!result.detail.empty()) std::cout << " (" << result.detail << ")";
    std::cout << "\n";
  }
  return all_ok ? 0 : 1;
}
