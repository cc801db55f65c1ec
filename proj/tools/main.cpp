// SPDX-License-Identifier: Apache-2.0
//
// parsimplex CLI: generate instances, solve problem files, run benchmark
// grids, and query the cache-capacity model.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parsimplex/bench.hpp"
#include "parsimplex/lp_model.hpp"
#include "parsimplex/parallel.hpp"
#include "parsimplex/problem_gen.hpp"
#include "parsimplex/tableau.hpp"

namespace {

// Exit codes (also documented in the README):
//   0 success / Optimal, 1 usage error, 2 Unbounded, 3 IterationLimit,
//   4 file or parse error.
constexpr int kExitOk = 0;
constexpr int kExitUnbounded = 2;
constexpr int kExitIterationLimit = 3;
constexpr int kExitFileError = 4;

int run_gen(const parsimplex::GenSpec& spec, const std::string& out_path) {
  const auto problem = parsimplex::generate(spec);
  if (out_path.empty()) {
    parsimplex::write_problem(std::cout, problem);
  } else {
    parsimplex::save_problem(out_path, problem);
    std::fprintf(stderr, "wrote %zux%zu instance (density %.3g, seed %llu) to %s\n",
                 problem.m, problem.n, problem.density,
                 static_cast<unsigned long long>(spec.seed), out_path.c_str());
  }
  return kExitOk;
}

int run_solve(const std::string& path, parsimplex::SolverConfig config,
              bool serial, bool print_solution) {
  parsimplex::LpProblem problem;
  try {
    problem = parsimplex::load_problem(path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitFileError;
  }
  if (const auto check = parsimplex::validate(problem); !check.ok()) {
    std::fprintf(stderr, "invalid problem: %s\n", check.violation->message.c_str());
    return kExitFileError;
  }

  const auto outcome = serial
                           ? parsimplex::solve_serial(problem, config)
                           : parsimplex::parallel::solve_parallel(problem, config);

  std::printf("%s", parsimplex::to_string(outcome.status));
  if (outcome.status == parsimplex::SolveStatus::Optimal)
    std::printf(" z=%.12g", outcome.objective);
  std::printf(" iterations=%zu seconds=%.6g threads=%u\n", outcome.iterations,
              outcome.solve_seconds, serial ? 1u : config.threads);
  if (print_solution && outcome.status == parsimplex::SolveStatus::Optimal) {
    for (std::size_t j = 0; j < outcome.x.size(); ++j)
      std::printf("x%zu=%.12g\n", j, outcome.x[j]);
  }

  switch (outcome.status) {
    case parsimplex::SolveStatus::Optimal: return kExitOk;
    case parsimplex::SolveStatus::Unbounded: return kExitUnbounded;
    case parsimplex::SolveStatus::IterationLimit: return kExitIterationLimit;
  }
  return kExitOk;
}

int run_bench(const parsimplex::bench::GridConfig& config, const std::string& out_stem) {
  using parsimplex::bench::BenchCell;
  const auto report = parsimplex::bench::run_grid(config);
  const auto files = parsimplex::bench::emit_report(report, out_stem);

  std::printf("%8s %8s %4s %12s %9s %11s %6s\n", "m", "n", "P", "median_s",
              "speedup", "efficiency", "cache");
  for (const BenchCell& cell : report.cells) {
    std::printf("%8zu %8zu %4u %12.6f %9.3f %11.3f %6s", cell.m, cell.n,
                cell.threads, cell.median_seconds, cell.speedup,
                cell.efficiency, cell.over_cache_limit ? "over" : "fits");
    if (cell.status != parsimplex::SolveStatus::Optimal)
      std::printf("  [%s]", parsimplex::to_string(cell.status));
    std::printf("\n");
  }
  for (const auto& file : files)
    std::fprintf(stderr, "wrote %s\n", file.c_str());
  return kExitOk;
}

int run_cachelimit(const std::vector<unsigned long long>& vars,
                   const parsimplex::bench::CacheModel& model) {
  std::printf("%10s %16s %16s %18s\n", "variables", "max_constraints",
              "model_bytes", "tableau_bytes");
  for (unsigned long long b : vars) {
    const auto limit = parsimplex::bench::cache_limit_constraints(b, model);
    // model footprint at the bound vs the bytes the solver really allocates
    std::printf("%10llu %16llu %16llu %18llu\n", b,
                static_cast<unsigned long long>(limit),
                static_cast<unsigned long long>(
                    parsimplex::bench::model_footprint_bytes(limit, b, model)),
                static_cast<unsigned long long>(
                    parsimplex::bench::exact_tableau_bytes(limit, b,
                                                           model.element_bytes)));
    if (const auto note = parsimplex::bench::cache_limit_reference_note(b, model))
      std::printf("%s\n", note->c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense standard-simplex LP solver with a shared-memory "
               "parallel engine and benchmark harness"};
  app.require_subcommand(1);

  // gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random solvable instance");
  parsimplex::GenSpec spec;
  spec.m = 64;
  spec.n = 64;
  std::string gen_out;
  gen->add_option("--m", spec.m, "constraint count")->check(CLI::PositiveNumber);
  gen->add_option("--n", spec.n, "variable count")->check(CLI::PositiveNumber);
  gen->add_option("--density", spec.density, "nonzero fraction in (0,1]");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  // solve -------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  std::string solve_path;
  parsimplex::SolverConfig solver;
  solver.threads = 1;
  bool solve_serial_engine = false;
  bool print_solution = false;
  solve->add_option("file", solve_path, "problem file")->required();
  solve->add_option("--threads", solver.threads, "worker count")
      ->check(CLI::PositiveNumber);
  solve->add_option("--chunk-min", solver.chunk_min, "guided chunk floor");
  solve->add_option("--max-iterations", solver.max_iterations,
                    "pivot cap (0 = 50*(m+n))");
  solve->add_flag("--serial", solve_serial_engine,
                  "use the serial reference engine");
  solve->add_flag("--pin", solver.pin_threads, "pin workers to cores");
  solve->add_flag("--print-solution", print_solution, "print the optimal x");

  // bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run a benchmark grid");
  std::vector<std::size_t> bench_m{256};
  std::vector<std::size_t> bench_n{256};
  std::vector<unsigned> bench_threads{1, 2, 4};
  parsimplex::bench::GridConfig grid;
  std::string convention = "twice-t2";
  std::string bench_out = "bench";
  bench->add_option("--m", bench_m, "constraint counts")->delimiter(',');
  bench->add_option("--n", bench_n, "variable counts")->delimiter(',');
  bench->add_option("--threads", bench_threads, "thread counts, ascending")
      ->delimiter(',');
  bench->add_option("--runs", grid.runs, "timed runs per cell");
  bench->add_option("--warmup", grid.warmup, "discarded runs per cell");
  bench->add_option("--density", grid.density, "instance density");
  bench->add_option("--seed", grid.seed_base, "seed base");
  bench->add_option("--chunk-min", grid.solver.chunk_min, "guided chunk floor");
  bench->add_option("--serial-convention", convention,
                    "serial baseline: measured | twice-t2")
      ->check(CLI::IsMember({"measured", "twice-t2"}));
  bench->add_option("--out", bench_out, "output stem for CSV/plot data");
  bench->add_flag("--pin", grid.solver.pin_threads, "pin workers to cores");

  // cachelimit ----------------------------------------------------------
  auto* cachelimit =
      app.add_subcommand("cachelimit", "cache-capacity bound on constraints");
  std::vector<unsigned long long> cache_vars{256, 512, 1024, 2048, 4096, 8192};
  parsimplex::bench::CacheModel cache_model;
  cachelimit->add_option("--vars", cache_vars, "variable counts")->delimiter(',');
  cachelimit->add_option("--cache-bytes", cache_model.cache_bytes,
                         "total last-level cache in bytes");
  cachelimit->add_option("--element-bytes", cache_model.element_bytes,
                         "bytes per tableau element");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(spec, gen_out);
    if (solve->parsed())
      return run_solve(solve_path, solver, solve_serial_engine, print_solution);
    if (bench->parsed()) {
      grid.sizes.clear();
      for (std::size_t m : bench_m)
        for (std::size_t n : bench_n) grid.sizes.push_back({m, n});
      grid.thread_counts = bench_threads;
      grid.serial_convention = convention == "measured"
                                   ? parsimplex::bench::SerialConvention::Measured
                                   : parsimplex::bench::SerialConvention::TwiceT2;
      return run_bench(grid, bench_out);
    }
    if (cachelimit->parsed()) return run_cachelimit(cache_vars, cache_model);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFileError;
  }
  return kExitOk;
}
