#include "mac/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mac/baselines.hpp"
#include "mac/rounding.hpp"

namespace mac {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_value(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::kMacNearest:
      return "mac-nearest";
    case Method::kMacMadow:
      return "mac-madow";
    case Method::kNaive:
      return "naive";
    case Method::kGreedyEsp:
      return "greedy-esp";
  }
  throw std::logic_error("unreachable");
}

Method parse_method(const std::string& name) {
  if (name == "mac-nearest") return Method::kMacNearest;
  if (name == "mac-madow") return Method::kMacMadow;
  if (name == "naive") return Method::kNaive;
  if (name == "greedy-esp") return Method::kGreedyEsp;
  throw std::invalid_argument("unknown method: " + name);
}

RunOutcome run_method(const SparsificationProblem& problem, Method method,
                      double fraction, const RunOptions& options,
                      const std::string& dataset) {
  RunOutcome outcome;
  RunReport& report = outcome.report;
  report.dataset = dataset;
  report.method = method;
  report.fraction = fraction;
  report.budget = problem.budget;
  report.seed = options.seed;
  report.lambda2_relaxed = kNan;
  report.dual_bound = kNan;
  report.duality_gap = kNan;

  const auto tic = std::chrono::steady_clock::now();
  switch (method) {
    case Method::kMacNearest:
    case Method::kMacMadow: {
      MacOptions mac_options;
      mac_options.rounding = method == Method::kMacNearest ? Rounding::kNearest
                                                           : Rounding::kMadow;
      mac_options.init = options.init;
      mac_options.max_iters = options.max_iters;
      mac_options.gap_tol = options.gap_tol;
      mac_options.seed = options.seed;
      mac_options.madow_draws = options.madow_draws;
      SolveResult result = mac(problem, mac_options);
      outcome.selection = result.rounded_x;
      report.lambda2_rounded = result.f_rounded;
      report.lambda2_relaxed = result.f_relaxed;
      report.dual_bound = result.best_dual_bound;
      report.duality_gap = result.best_dual_bound - result.f_relaxed;
      report.iterations = static_cast<int>(result.history.size());
      break;
    }
    case Method::kNaive:
      outcome.selection = naive_topk(problem, problem.budget);
      break;
    case Method::kGreedyEsp:
      outcome.selection = greedy_esp(problem, problem.budget);
      break;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - tic)
          .count();
  report.wall_time_s = options.record_timing ? elapsed : 0.0;

  if (method == Method::kNaive || method == Method::kGreedyEsp) {
    report.lambda2_rounded = evaluate_selection(problem, outcome.selection);
  }
  return outcome;
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["dataset"] = report.dataset;
  j["method"] = method_name(report.method);
  j["fraction"] = report.fraction;
  j["budget"] = report.budget;
  j["lambda2_rounded"] = report.lambda2_rounded;
  auto set_or_null = [&](const char* key, double v) {
    if (std::isnan(v)) {
      j[key] = nullptr;
    } else {
      j[key] = v;
    }
  };
  set_or_null("lambda2_relaxed", report.lambda2_relaxed);
  set_or_null("dual_bound", report.dual_bound);
  set_or_null("duality_gap", report.duality_gap);
  j["iterations"] = report.iterations;
  j["wall_time_s"] = report.wall_time_s;
  j["seed"] = report.seed;
  return j.dump(2);
}

std::string csv_header() {
  return "schema_version,dataset,method,fraction,budget,lambda2_rounded,"
         "lambda2_relaxed,dual_bound,duality_gap,iterations,wall_time_s,seed";
}

std::string csv_row(const RunReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << kReportSchemaVersion << ',' << report.dataset << ','
      << method_name(report.method) << ',' << report.fraction << ','
      << report.budget << ',' << format_value(report.lambda2_rounded) << ','
      << format_value(report.lambda2_relaxed) << ','
      << format_value(report.dual_bound) << ','
      << format_value(report.duality_gap) << ',' << report.iterations << ','
      << format_value(report.wall_time_s) << ',' << report.seed;
  return out.str();
}

}  // namespace mac
