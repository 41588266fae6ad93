// Command-line front end: sparsify a g2o pose graph or sweep budgets and
// selection methods, emitting CSV/JSON metrics.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mac/g2o_io.hpp"
#include "mac/pipeline.hpp"

namespace {

bool verbose() {
  const char* level = std::getenv("MAC_LOG_LEVEL");
  return level != nullptr && std::string(level) == "debug";
}

void log_debug(const std::string& message) {
  if (verbose()) std::cerr << "[mac] " << message << "\n";
}

std::string dataset_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

struct SolverFlags {
  std::uint64_t seed = 0;
  int max_iters = 20;
  double gap_tol = 1e-8;
  int madow_draws = 1;
  std::string init = "naive";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "PRNG seed for randomized rounding");
    cmd->add_option("--max-iters", max_iters, "Frank-Wolfe iteration cap");
    cmd->add_option("--gap-tol", gap_tol, "duality-gap stopping tolerance");
    cmd->add_option("--madow-draws", madow_draws,
                    "number of Madow draws (best selection kept)");
    cmd->add_option("--init", init, "initialization: naive or uniform")
        ->check(CLI::IsMember({"naive", "uniform"}));
  }

  mac::RunOptions run_options() const {
    mac::RunOptions options;
    options.seed = seed;
    options.max_iters = max_iters;
    options.gap_tol = gap_tol;
    options.madow_draws = madow_draws;
    options.init = init == "uniform" ? mac::Init::kUniform
                                     : mac::Init::kNaiveTopK;
    return options;
  }
};

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write " + output_path);
    out << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAC: pose-graph sparsification by maximizing algebraic "
               "connectivity"};
  app.require_subcommand(1);

  // sparsify
  auto* sparsify = app.add_subcommand(
      "sparsify", "select a K-edge subset and write the sparsified g2o file");
  std::string input, output, report_path;
  std::string method_str = "mac-madow";
  double fraction = 0.5;
  int budget = -1;
  SolverFlags flags;
  sparsify->add_option("input", input, "input g2o file")->required();
  sparsify->add_option("-o,--output", output, "output g2o path")->required();
  sparsify->add_option("--method", method_str,
                       "mac-nearest | mac-madow | naive | greedy-esp");
  sparsify->add_option("--fraction", fraction,
                       "fraction of candidate edges to keep");
  sparsify->add_option("--budget", budget,
                       "absolute edge budget K (overrides --fraction)");
  sparsify->add_option("--report", report_path,
                       "write the JSON report here instead of stdout");
  flags.add_to(sparsify);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "run a grid of methods and budget fractions, emit metrics");
  std::string sweep_input, sweep_output;
  std::vector<double> fractions;
  std::vector<std::string> methods;
  std::string format = "csv";
  bool no_timing = false;
  SolverFlags sweep_flags;
  sweep->add_option("input", sweep_input, "input g2o file")->required();
  sweep->add_option("--fractions", fractions,
                    "budget fractions (default 0.1 ... 1.0)");
  sweep->add_option("--methods", methods,
                    "methods to run (default: all four)");
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("-o,--output", sweep_output, "output path (default stdout)");
  sweep->add_flag("--no-timing", no_timing,
                  "zero the wall-time column for reproducible output");
  sweep_flags.add_to(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sparsify->parsed()) {
      const mac::PoseGraphFile file = mac::parse_g2o(input);
      log_debug("parsed " + std::to_string(file.vertices.size()) +
                " vertices, " + std::to_string(file.edges.size()) + " edges");
      const mac::SparsificationProblem problem =
          budget >= 0 ? mac::to_problem_with_budget(file, budget)
                      : mac::to_problem(file, fraction);
      const double used_fraction =
          problem.num_candidates() > 0
              ? static_cast<double>(problem.budget) / problem.num_candidates()
              : 1.0;
      const mac::RunOutcome outcome =
          mac::run_method(problem, mac::parse_method(method_str),
                          used_fraction, flags.run_options(),
                          dataset_name(input));
      mac::write_g2o(file, outcome.selection, output);
      emit(mac::report_to_json(outcome.report), report_path);
      return 0;
    }

    // sweep
    if (fractions.empty()) {
      for (int i = 1; i <= 10; ++i) fractions.push_back(0.1 * i);
    }
    if (methods.empty()) {
      methods = {"mac-nearest", "mac-madow", "naive", "greedy-esp"};
    }
    const mac::PoseGraphFile file = mac::parse_g2o(sweep_input);
    mac::RunOptions options = sweep_flags.run_options();
    options.record_timing = !no_timing;

    std::vector<mac::RunReport> reports;
    std::vector<std::string> failures;
    for (const std::string& name : methods) {
      const mac::Method method = mac::parse_method(name);
      for (double f : fractions) {
        try {
          const mac::SparsificationProblem problem = mac::to_problem(file, f);
          log_debug("running " + name + " at fraction " + std::to_string(f));
          reports.push_back(
              mac::run_method(problem, method, f, options,
                              dataset_name(sweep_input))
                  .report);
        } catch (const std::exception& err) {
          failures.push_back(name + " @ " + std::to_string(f) + ": " +
                             err.what());
        }
      }
    }

    std::string text;
    if (format == "csv") {
      std::string body = mac::csv_header();
      for (const auto& report : reports) body += "\n" + mac::csv_row(report);
      text = body;
    } else {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& report : reports) {
        rows.push_back(
            nlohmann::ordered_json::parse(mac::report_to_json(report)));
      }
      text = rows.dump(2);
    }
    emit(text, sweep_output);

    if (!failures.empty()) {
      for (const auto& failure : failures) {
        std::cerr << "failed: " << failure << "\n";
      }
      return 1;
    }
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
