#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mac/baselines.hpp"
#include "mac/fiedler.hpp"
#include "mac/g2o_io.hpp"
#include "mac/graph.hpp"
#include "mac/pipeline.hpp"
#include "mac/rounding.hpp"
#include "mac/solver.hpp"

namespace py = pybind11;

using namespace mac;

PYBIND11_MODULE(pymac, m) {
  m.doc() = "Graph sparsification by algebraic connectivity maximization";

  py::class_<WeightedEdge>(m, "WeightedEdge")
      .def(py::init<int, int, double>(), py::arg("u"), py::arg("v"),
           py::arg("weight"))
      .def_readwrite("u", &WeightedEdge::u)
      .def_readwrite("v", &WeightedEdge::v)
      .def_readwrite("weight", &WeightedEdge::weight)
      .def("__repr__", [](const WeightedEdge& e) {
        return "WeightedEdge(" + std::to_string(e.u) + ", " +
               std::to_string(e.v) + ", " + std::to_string(e.weight) + ")";
      });

  py::class_<SparsificationProblem>(m, "SparsificationProblem")
      .def(py::init([](int n, std::vector<WeightedEdge> fixed,
                       std::vector<WeightedEdge> candidates, int budget) {
             SparsificationProblem p{n, std::move(fixed), std::move(candidates),
                                     budget};
             return normalize_problem(std::move(p));
           }),
           py::arg("n"), py::arg("fixed_edges"), py::arg("candidate_edges"),
           py::arg("budget"))
      .def_readonly("n", &SparsificationProblem::n)
      .def_readonly("fixed_edges", &SparsificationProblem::fixed_edges)
      .def_readonly("candidate_edges", &SparsificationProblem::candidate_edges)
      .def_readonly("budget", &SparsificationProblem::budget);

  py::class_<FiedlerPair>(m, "FiedlerPair")
      .def_readonly("lambda2", &FiedlerPair::lambda2)
      .def_readonly("q2", &FiedlerPair::q2)
      .def_readonly("lambda3", &FiedlerPair::lambda3);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("iter", &IterationRecord::iter)
      .def_readonly("f_value", &IterationRecord::f_value)
      .def_readonly("dual_bound", &IterationRecord::dual_bound)
      .def_readonly("gap", &IterationRecord::gap)
      .def_readonly("step_size", &IterationRecord::step_size)
      .def_readonly("degenerate", &IterationRecord::degenerate);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("relaxed_x", &SolveResult::relaxed_x)
      .def_readonly("rounded_x", &SolveResult::rounded_x)
      .def_readonly("f_relaxed", &SolveResult::f_relaxed)
      .def_readonly("f_rounded", &SolveResult::f_rounded)
      .def_readonly("best_dual_bound", &SolveResult::best_dual_bound)
      .def_readonly("final_dual_bound", &SolveResult::final_dual_bound)
      .def_readonly("history", &SolveResult::history)
      .def_readonly("total_time", &SolveResult::total_time);

  m.def(
      "laplacian",
      [](const std::vector<WeightedEdge>& edges, int n) {
        return build_laplacian(edges, n).to_dense();
      },
      py::arg("edges"), py::arg("n"),
      "Dense Laplacian of a weighted edge list");

  m.def(
      "fiedler",
      [](const std::vector<WeightedEdge>& edges, int n, double tol) {
        return find_fiedler(build_laplacian(edges, n), {}, tol);
      },
      py::arg("edges"), py::arg("n"), py::arg("tol") = 1e-8,
      "Algebraic connectivity and Fiedler vector of an edge list");

  m.def("count_components", &count_components, py::arg("edges"), py::arg("n"));

  m.def(
      "solve",
      [](const SparsificationProblem& problem, const std::string& rounding,
         int max_iters, double gap_tol, std::uint64_t seed, int madow_draws,
         const std::string& init) {
        MacOptions options;
        options.rounding =
            rounding == "nearest" ? Rounding::kNearest : Rounding::kMadow;
        options.init = init == "uniform" ? Init::kUniform : Init::kNaiveTopK;
        options.max_iters = max_iters;
        options.gap_tol = gap_tol;
        options.seed = seed;
        options.madow_draws = madow_draws;
        return mac::mac(problem, options);
      },
      py::arg("problem"), py::arg("rounding") = "madow",
      py::arg("max_iters") = 20, py::arg("gap_tol") = 1e-8,
      py::arg("seed") = 0, py::arg("madow_draws") = 1,
      py::arg("init") = "naive",
      "Run the full relax-round pipeline on a sparsification problem");

  m.def("round_nearest", &round_nearest, py::arg("x"), py::arg("k"));
  m.def("round_madow", &round_madow, py::arg("x"), py::arg("k"),
        py::arg("seed"));
  m.def("evaluate_selection", &evaluate_selection, py::arg("problem"),
        py::arg("selection"), py::arg("tol") = 1e-8);
  m.def("naive_topk", &naive_topk, py::arg("problem"), py::arg("k"));
  m.def("greedy_esp", &greedy_esp, py::arg("problem"), py::arg("k"));

  m.def(
      "load_g2o",
      [](const std::string& path, double fraction) {
        return to_problem(parse_g2o(path), fraction);
      },
      py::arg("path"), py::arg("fraction"),
      "Parse a g2o file into a rotational-weight sparsification problem");

  m.def(
      "sparsify_g2o",
      [](const std::string& input, const std::string& output, double fraction,
         const std::string& method, std::uint64_t seed) {
        const PoseGraphFile file = parse_g2o(input);
        const SparsificationProblem problem = to_problem(file, fraction);
        RunOptions options;
        options.seed = seed;
        const RunOutcome outcome = run_method(
            problem, parse_method(method), fraction, options, input);
        write_g2o(file, outcome.selection, output);
        return report_to_json(outcome.report);
      },
      py::arg("input"), py::arg("output"), py::arg("fraction") = 0.5,
      py::arg("method") = "mac-madow", py::arg("seed") = 0,
      "Sparsify a g2o file end to end; returns the JSON report");
}
