// SPDX-License-Identifier: Apache-2.0
#include "parsimplex/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "parsimplex/parallel.hpp"
#include "parsimplex/problem_gen.hpp"
#include "parsimplex/tableau.hpp"

namespace parsimplex::bench {

namespace {

bool footprint_fits(std::uint64_t n, std::uint64_t vars, std::uint64_t budget) {
  const unsigned __int128 used =
      (unsigned __int128)n * n + (unsigned __int128)vars * n;
  return used <= budget;
}

void append_value(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::uint64_t cache_limit_constraints(std::uint64_t vars, const CacheModel& model) {
  const std::uint64_t budget = model.element_budget();
  const double b = static_cast<double>(vars);
  const double root =
      (-b + std::sqrt(b * b + 4.0 * static_cast<double>(budget))) / 2.0;
  std::uint64_t n = root > 0.0 ? static_cast<std::uint64_t>(root) : 0;
  while (n > 0 && !footprint_fits(n, vars, budget)) --n;
  while (footprint_fits(n + 1, vars, budget)) ++n;
  return n;
}

std::uint64_t model_footprint_bytes(std::uint64_t constraints, std::uint64_t vars,
                                    const CacheModel& model) {
  return (vars + constraints) * constraints * model.element_bytes;
}

std::uint64_t exact_tableau_bytes(std::uint64_t m, std::uint64_t n,
                                  std::uint64_t element_bytes) {
  return (m + 1) * (n + m + 1) * element_bytes;
}

std::optional<std::string> cache_limit_reference_note(std::uint64_t vars,
                                                      const CacheModel& model) {
  static constexpr std::pair<std::uint64_t, std::uint64_t> kReferenceLimits[] = {
      {256, 2771}, {512, 2651}, {1024, 2429},
      {2048, 2048}, {4096, 1499}, {8192, 1499},
  };
  const CacheModel defaults;
  if (model.cache_bytes != defaults.cache_bytes ||
      model.element_bytes != defaults.element_bytes)
    return std::nullopt;
  for (const auto& [ref_vars, ref_limit] : kReferenceLimits) {
    if (ref_vars != vars) continue;
    const std::uint64_t computed = cache_limit_constraints(vars, model);
    if (computed == ref_limit) return std::nullopt;
    std::ostringstream os;
    os << "note: reference tables quote " << ref_limit << " constraints for "
       << vars << " variables, but " << ref_limit << "^2 + " << vars << "*"
       << ref_limit << " exceeds " << model.element_budget()
       << " elements; the model bound is " << computed;
    return os.str();
  }
  return std::nullopt;
}

const char* to_string(SerialConvention convention) {
  return convention == SerialConvention::Measured ? "measured" : "twice-t2";
}

double median(std::vector<double> samples) {
  if (samples.empty())
    throw std::invalid_argument("median of no samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return (samples[mid - 1] + samples[mid]) / 2.0;
}

std::uint64_t instance_seed(std::uint64_t seed_base, std::size_t m, std::size_t n) {
  // splitmix64 over the packed inputs; stable across platforms.
  std::uint64_t z = seed_base + 0x9e3779b97f4a7c15ull * (2654435761ull * m + n + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

void validate_grid(const GridConfig& config) {
  if (config.sizes.empty())
    throw std::invalid_argument("bench grid: no problem sizes");
  if (config.thread_counts.empty())
    throw std::invalid_argument("bench grid: no thread counts");
  if (!std::is_sorted(config.thread_counts.begin(), config.thread_counts.end()))
    throw std::invalid_argument("bench grid: thread counts must be ascending");
  for (unsigned p : config.thread_counts)
    if (p == 0) throw std::invalid_argument("bench grid: thread count 0");
  if (config.runs < 1)
    throw std::invalid_argument("bench grid: runs must be >= 1");
  if (config.serial_convention == SerialConvention::TwiceT2 &&
      std::find(config.thread_counts.begin(), config.thread_counts.end(), 2u) ==
          config.thread_counts.end())
    throw std::invalid_argument(
        "bench grid: twice-t2 serial convention requires P = 2 in the grid");
}

struct CellTiming {
  double median_seconds = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  std::size_t iterations = 0;
};

template <typename Solve>
CellTiming time_cell(const GridConfig& config, Solve&& solve) {
  CellTiming out;
  std::vector<double> samples;
  samples.reserve(config.runs);
  for (std::size_t r = 0; r < config.warmup + config.runs; ++r) {
    const SolveOutcome run = solve();
    if (run.status != SolveStatus::Optimal && out.status == SolveStatus::Optimal)
      out.status = run.status;
    out.iterations = run.iterations;
    if (r >= config.warmup) samples.push_back(run.solve_seconds);
  }
  out.median_seconds = median(std::move(samples));
  return out;
}

}  // namespace

BenchReport run_grid(const GridConfig& config) {
  validate_grid(config);

  BenchReport report;
  report.serial_convention = config.serial_convention;

  for (const auto& [m, n] : config.sizes) {
    GenSpec spec;
    spec.m = m;
    spec.n = n;
    spec.density = config.density;
    spec.seed = instance_seed(config.seed_base, m, n);
    const LpProblem problem = generate(spec);

    double serial_seconds = std::numeric_limits<double>::quiet_NaN();
    if (config.serial_convention == SerialConvention::Measured) {
      SolverConfig serial_cfg = config.solver;
      serial_cfg.threads = 1;
      const CellTiming t =
          time_cell(config, [&] { return solve_serial(problem, serial_cfg); });
      serial_seconds = t.median_seconds;
      report.serial.push_back({m, n, t.median_seconds, t.status});
    }

    std::vector<BenchCell> size_cells;
    size_cells.reserve(config.thread_counts.size());
    double t2_seconds = std::numeric_limits<double>::quiet_NaN();
    for (unsigned p : config.thread_counts) {
      SolverConfig cell_cfg = config.solver;
      cell_cfg.threads = p;
      const CellTiming t = time_cell(
          config, [&] { return parallel::solve_parallel(problem, cell_cfg); });
      BenchCell cell;
      cell.m = m;
      cell.n = n;
      cell.threads = p;
      cell.median_seconds = t.median_seconds;
      cell.status = t.status;
      cell.iterations = t.iterations;
      cell.over_cache_limit = m > cache_limit_constraints(n, config.cache);
      if (p == 2) t2_seconds = t.median_seconds;
      size_cells.push_back(cell);
    }

    const double baseline = config.serial_convention == SerialConvention::TwiceT2
                                ? 2.0 * t2_seconds
                                : serial_seconds;
    for (BenchCell& cell : size_cells) {
      cell.speedup = baseline / cell.median_seconds;
      cell.efficiency = cell.speedup / static_cast<double>(cell.threads);
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::vector<std::string> emit_report(const BenchReport& report,
                                     const std::string& out_stem) {
  std::vector<std::string> written;

  const std::string csv_path = out_stem + ".csv";
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    out << "m,n,P,median_s,speedup,efficiency,over_cache_limit\n";
    for (const BenchCell& cell : report.cells) {
      std::string line;
      line += std::to_string(cell.m);
      line += ',';
      line += std::to_string(cell.n);
      line += ',';
      line += std::to_string(cell.threads);
      line += ',';
      append_value(line, cell.median_seconds);
      line += ',';
      append_value(line, cell.speedup);
      line += ',';
      append_value(line, cell.efficiency);
      line += ',';
      line += cell.over_cache_limit ? '1' : '0';
      line += '\n';
      out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + csv_path);
  }
  written.push_back(csv_path);

  // One plot file per fixed constraint count; within it, one block per
  // problem size: x = threads, y = speedup.
  std::map<std::size_t, std::map<std::size_t, std::vector<const BenchCell*>>> grouped;
  for (const BenchCell& cell : report.cells)
    grouped[cell.m][cell.n].push_back(&cell);

  for (const auto& [m, by_n] : grouped) {
    const std::string path = out_stem + "_speedup_m" + std::to_string(m) + ".dat";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "# speedup vs threads, " << m << " constraints; one block per size\n";
    bool first = true;
    for (const auto& [n, cells] : by_n) {
      if (!first) out << "\n\n";
      first = false;
      out << "# m=" << m << " n=" << n << "\n";
      for (const BenchCell* cell : cells) {
        std::string line = std::to_string(cell->threads);
        line += ' ';
        append_value(line, cell->speedup);
        line += '\n';
        out << line;
      }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    written.push_back(path);
  }
  return written;
}

}  // namespace parsimplex::bench
