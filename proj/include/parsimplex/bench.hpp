// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parsimplex/lp_model.hpp"

namespace parsimplex::bench {

// --- cache capacity model --------------------------------------------------
//
// The working-set model treats the problem as (n + b) * n elements for n
// constraints and b variables; the largest constraint count whose footprint
// fits the last-level caches is the positive root of n^2 + b n = C / element,
// rounded down. Defaults describe a machine with four 16 MiB L3 caches and
// 8-byte elements.

struct CacheModel {
  std::uint64_t cache_bytes = 64ull << 20;
  std::uint64_t element_bytes = 8;

  std::uint64_t element_budget() const { return cache_bytes / element_bytes; }
};

/// Largest n with n^2 + vars * n <= cache_bytes / element_bytes. Closed form
/// with an exact integer fix-up, so it equals the brute-force search.
std::uint64_t cache_limit_constraints(std::uint64_t vars, const CacheModel& model = {});

/// Footprint the model assigns to (constraints, vars), in bytes.
std::uint64_t model_footprint_bytes(std::uint64_t constraints, std::uint64_t vars,
                                    const CacheModel& model = {});

/// Exact bytes of the dense tableau (m+1) x (n+m+1) actually allocated by
/// the solver; reported alongside the model footprint, which undercounts.
std::uint64_t exact_tableau_bytes(std::uint64_t m, std::uint64_t n,
                                  std::uint64_t element_bytes = 8);

/// Historical reference bounds shipped with the reference timing data quote
/// 2771, 2651, 2429, 2048, 1499, 1499 for 256..8192 variables; the 8192 row
/// does not satisfy the model inequality. Returns a note when the model
/// disagrees with the quoted value for `vars` (only under the default model).
std::optional<std::string> cache_limit_reference_note(std::uint64_t vars,
                                                      const CacheModel& model = {});

// --- benchmark grid ----------------------------------------------------------

enum class SerialConvention {
  Measured,  // serial baseline = median of solve_serial runs
  TwiceT2,   // serial baseline assumed to be 2 x median time at P = 2
};

const char* to_string(SerialConvention convention);

struct GridConfig {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (m, n)
  std::vector<unsigned> thread_counts;                     // ascending
  std::size_t runs = 10;    // timed samples per cell
  std::size_t warmup = 1;   // discarded runs per cell
  double density = 0.9;
  std::uint64_t seed_base = 1;
  SerialConvention serial_convention = SerialConvention::TwiceT2;
  SolverConfig solver;      // threads overridden per cell
  CacheModel cache;
};

struct BenchCell {
  std::size_t m = 0;
  std::size_t n = 0;
  unsigned threads = 0;
  double median_seconds = 0.0;
  double speedup = 0.0;
  double efficiency = 0.0;          // speedup / threads, exactly
  bool over_cache_limit = false;    // m exceeds cache_limit_constraints(n)
  SolveStatus status = SolveStatus::Optimal;  // first non-Optimal run, if any
  std::size_t iterations = 0;
};

struct SerialSample {
  std::size_t m = 0;
  std::size_t n = 0;
  double median_seconds = 0.0;
  SolveStatus status = SolveStatus::Optimal;
};

struct BenchReport {
  SerialConvention serial_convention = SerialConvention::TwiceT2;
  std::vector<BenchCell> cells;
  std::vector<SerialSample> serial;  // filled under Measured
};

/// Median of the samples; even counts average the middle pair.
double median(std::vector<double> samples);

/// Runs the full grid: per size a deterministic instance (seed derived from
/// seed_base and the dimensions), per thread count `warmup + runs` solves,
/// median over the timed pivot-loop seconds. Cells that hit the iteration
/// cap are recorded and the grid continues. Throws std::invalid_argument on
/// an inconsistent config (empty grid, unsorted thread counts, runs < 1, or
/// TwiceT2 without P = 2 in the grid).
BenchReport run_grid(const GridConfig& config);

/// Instance seed used by run_grid for a given size.
std::uint64_t instance_seed(std::uint64_t seed_base, std::size_t m, std::size_t n);

/// Writes <stem>.csv with columns m,n,P,median_s,speedup,efficiency,
/// over_cache_limit and one plot-data file per fixed constraint count,
/// <stem>_speedup_m<M>.dat, holding one "P speedup" series per problem size.
/// Returns the written paths (CSV first). I/O failures throw with the path.
std::vector<std::string> emit_report(const BenchReport& report,
                                     const std::string& out_stem);

}  // namespace parsimplex::bench
