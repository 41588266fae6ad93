#include <doctest.h>

#include <cmath>
#include <random>

#include "mac/pipeline.hpp"
#include "oracles.hpp"

using namespace mac;
using namespace mac::testing;

TEST_CASE("method names round-trip") {
  for (auto method : {Method::kMacNearest, Method::kMacMadow, Method::kNaive,
                      Method::kGreedyEsp}) {
    CHECK(parse_method(method_name(method)) == method);
  }
  CHECK_THROWS_AS(parse_method("simulated-annealing"), std::invalid_argument);
}

TEST_CASE("run_method produces consistent reports") {
  std::mt19937 rng(107);
  auto problem = random_problem(rng, 10, 8, 3);
  RunOptions options;
  options.record_timing = false;

  for (auto method : {Method::kMacNearest, Method::kMacMadow, Method::kNaive,
                      Method::kGreedyEsp}) {
    auto outcome = run_method(problem, method, 3.0 / 8.0, options, "synthetic");
    CHECK(std::count(outcome.selection.begin(), outcome.selection.end(), 1) ==
          3);
    CHECK(outcome.report.budget == 3);
    if (method == Method::kMacNearest || method == Method::kMacMadow) {
      CHECK(outcome.report.lambda2_rounded <=
            outcome.report.dual_bound + 1e-8);
      CHECK(outcome.report.iterations >= 1);
    } else {
      CHECK(std::isnan(outcome.report.dual_bound));
    }
    CHECK(outcome.report.lambda2_rounded ==
          doctest::Approx(dense_lambda2_at(
                              problem,
                              [&] {
                                Eigen::VectorXd x =
                                    Eigen::VectorXd::Zero(8);
                                for (int k = 0; k < 8; ++k) {
                                  x[k] = outcome.selection[k];
                                }
                                return x;
                              }()))
              .epsilon(1e-8));
  }
}

TEST_CASE("CSV output is deterministic without timing") {
  std::mt19937 rng(109);
  auto problem = random_problem(rng, 10, 8, 4);
  RunOptions options;
  options.seed = 5;
  options.record_timing = false;

  auto render = [&] {
    std::string text = csv_header();
    for (auto method : {Method::kMacMadow, Method::kNaive}) {
      text += "\n" + csv_row(run_method(problem, method, 0.5, options,
                                        "synthetic")
                                 .report);
    }
    return text;
  };
  CHECK(render() == render());
}

TEST_CASE("CSV header is the stable v1 schema") {
  CHECK(csv_header() ==
        "schema_version,dataset,method,fraction,budget,lambda2_rounded,"
        "lambda2_relaxed,dual_bound,duality_gap,iterations,wall_time_s,seed");
}

TEST_CASE("JSON report carries the schema version and nulls for baselines") {
  std::mt19937 rng(113);
  auto problem = random_problem(rng, 8, 6, 2);
  RunOptions options;
  options.record_timing = false;
  auto report =
      run_method(problem, Method::kNaive, 2.0 / 6.0, options, "ds").report;
  const std::string json = report_to_json(report);
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(json.find("\"dual_bound\": null") != std::string::npos);
  CHECK(json.find("\"method\": \"naive\"") != std::string::npos);
}
