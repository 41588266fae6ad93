#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mac/g2o_io.hpp"
#include "mac/graph.hpp"
#include "mac/solver.hpp"

namespace mac {

inline constexpr int kReportSchemaVersion = 1;

enum class Method { kMacNearest, kMacMadow, kNaive, kGreedyEsp };

std::string method_name(Method method);
Method parse_method(const std::string& name);

struct RunReport {
  std::string dataset;
  Method method = Method::kMacMadow;
  double fraction = 0.0;
  int budget = 0;
  double lambda2_rounded = 0.0;
  double lambda2_relaxed = 0.0;  // NaN for baselines
  double dual_bound = 0.0;       // NaN for baselines
  double duality_gap = 0.0;      // NaN for baselines
  int iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

struct RunOptions {
  std::uint64_t seed = 0;
  int max_iters = 20;
  double gap_tol = 1e-8;
  int madow_draws = 1;
  Init init = Init::kNaiveTopK;
  bool record_timing = true;
};

/// Runs one selector on a problem. Wall time covers the selector only.
struct RunOutcome {
  RunReport report;
  BinarySelection selection;
};
RunOutcome run_method(const SparsificationProblem& problem, Method method,
                      double fraction, const RunOptions& options,
                      const std::string& dataset);

std::string report_to_json(const RunReport& report);

/// Stable CSV schema; the header line is fixed within schema version 1.
std::string csv_header();
std::string csv_row(const RunReport& report);

}  // namespace mac
