// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "parsimplex/bench.hpp"
#include "parsimplex/lp_model.hpp"
#include "parsimplex/parallel.hpp"
#include "parsimplex/problem_gen.hpp"
#include "parsimplex/tableau.hpp"

namespace py = pybind11;
using namespace parsimplex;

namespace {

SolverConfig make_config(unsigned threads, std::size_t chunk_min,
                         double eps_cost, double eps_pivot,
                         std::size_t max_iterations,
                         std::size_t bland_stall_window, bool log_pivots) {
  SolverConfig config;
  config.threads = threads;
  config.chunk_min = chunk_min;
  config.eps_cost = eps_cost;
  config.eps_pivot = eps_pivot;
  config.max_iterations = max_iterations;
  config.bland_stall_window = bland_stall_window;
  config.log_pivots = log_pivots;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dense standard-simplex LP solver with a shared-memory parallel engine";

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Optimal", SolveStatus::Optimal)
      .value("Unbounded", SolveStatus::Unbounded)
      .value("IterationLimit", SolveStatus::IterationLimit);

  py::class_<LpProblem>(m, "Problem")
      .def(py::init([](std::size_t m_, std::size_t n_, std::vector<double> a,
                       std::vector<double> b, std::vector<double> c) {
             LpProblem p;
             p.m = m_;
             p.n = n_;
             p.a = std::move(a);
             p.b = std::move(b);
             p.c = std::move(c);
             return p;
           }),
           py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("c"))
      .def_readonly("m", &LpProblem::m)
      .def_readonly("n", &LpProblem::n)
      .def_readonly("a", &LpProblem::a)
      .def_readonly("b", &LpProblem::b)
      .def_readonly("c", &LpProblem::c)
      .def_readonly("density", &LpProblem::density)
      .def_readonly("seed", &LpProblem::seed)
      .def("__eq__", [](const LpProblem& p, const LpProblem& q) { return p == q; })
      .def("__repr__", [](const LpProblem& p) {
        std::ostringstream os;
        os << "<Problem " << p.m << "x" << p.n << ">";
        return os.str();
      });

  py::class_<PivotRecord>(m, "PivotRecord")
      .def_readonly("entering", &PivotRecord::entering)
      .def_readonly("leaving", &PivotRecord::leaving)
      .def("__repr__", [](const PivotRecord& r) {
        std::ostringstream os;
        os << "(k=" << r.entering << ", l=" << r.leaving << ")";
        return os.str();
      });

  py::class_<SolveOutcome>(m, "SolveOutcome")
      .def_readonly("status", &SolveOutcome::status)
      .def_readonly("objective", &SolveOutcome::objective)
      .def_readonly("x", &SolveOutcome::x)
      .def_readonly("iterations", &SolveOutcome::iterations)
      .def_readonly("pivot_log", &SolveOutcome::pivot_log)
      .def_readonly("solve_seconds", &SolveOutcome::solve_seconds)
      .def("__repr__", [](const SolveOutcome& o) {
        std::ostringstream os;
        os << "<SolveOutcome " << to_string(o.status) << " z=" << o.objective
           << " iterations=" << o.iterations << ">";
        return os.str();
      });

  m.def(
      "validate",
      [](const LpProblem& p) -> std::optional<std::string> {
        const auto result = validate(p);
        if (result.ok()) return std::nullopt;
        return result.violation->message;
      },
      py::arg("problem"),
      "None when the problem is valid, else the first violation message");

  m.def(
      "solve_serial",
      [](const LpProblem& p, std::size_t chunk_min, double eps_cost,
         double eps_pivot, std::size_t max_iterations,
         std::size_t bland_stall_window, bool log_pivots) {
        return solve_serial(p, make_config(1, chunk_min, eps_cost, eps_pivot,
                                           max_iterations, bland_stall_window,
                                           log_pivots));
      },
      py::arg("problem"), py::kw_only(), py::arg("chunk_min") = 64,
      py::arg("eps_cost") = 1e-9, py::arg("eps_pivot") = 1e-9,
      py::arg("max_iterations") = 0, py::arg("bland_stall_window") = 0,
      py::arg("log_pivots") = false,
      "serial reference engine (Steps 1-5 loop)");

  m.def(
      "solve_parallel",
      [](const LpProblem& p, unsigned threads, std::size_t chunk_min,
         double eps_cost, double eps_pivot, std::size_t max_iterations,
         std::size_t bland_stall_window, bool log_pivots) {
        return parallel::solve_parallel(
            p, make_config(threads, chunk_min, eps_cost, eps_pivot,
                           max_iterations, bland_stall_window, log_pivots));
      },
      py::arg("problem"), py::kw_only(), py::arg("threads") = 1,
      py::arg("chunk_min") = 64, py::arg("eps_cost") = 1e-9,
      py::arg("eps_pivot") = 1e-9, py::arg("max_iterations") = 0,
      py::arg("bland_stall_window") = 0, py::arg("log_pivots") = false,
      py::call_guard<py::gil_scoped_release>(),
      "6-phase parallel engine; identical pivots to solve_serial");

  m.def(
      "generate",
      [](std::size_t m_, std::size_t n_, double density, std::uint64_t seed) {
        return generate(GenSpec{m_, n_, density, seed});
      },
      py::arg("m"), py::arg("n"), py::kw_only(), py::arg("density") = 0.9,
      py::arg("seed") = 0,
      "random solvable dense instance (feasible and bounded by construction)");

  m.def("realized_density", &realized_density, py::arg("problem"));

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("save_problem", &save_problem, py::arg("path"), py::arg("problem"));

  m.def(
      "cache_limit_constraints",
      [](std::uint64_t vars, std::uint64_t cache_bytes, std::uint64_t element_bytes) {
        return bench::cache_limit_constraints(
            vars, bench::CacheModel{cache_bytes, element_bytes});
      },
      py::arg("vars"), py::kw_only(), py::arg("cache_bytes") = 64ull << 20,
      py::arg("element_bytes") = 8,
      "largest constraint count whose modeled footprint fits the cache");

  m.def(
      "cache_limit_reference_note",
      [](std::uint64_t vars) { return bench::cache_limit_reference_note(vars); },
      py::arg("vars"));
}
