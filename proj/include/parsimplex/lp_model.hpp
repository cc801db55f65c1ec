// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace parsimplex {

/// Canonical-form maximization instance:
///
///   maximize    c'x
///   subject to  A x <= b,  b >= 0,  x >= 0
///
/// with m inequality constraints and n decision variables. A is stored
/// dense, row-major. `density` and `seed` are generator metadata and do
/// not affect solving.
struct LpProblem {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> a;  // m*n, row-major
  std::vector<double> b;  // m
  std::vector<double> c;  // n
  double density = 1.0;
  std::optional<std::uint64_t> seed;

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  bool operator==(const LpProblem& other) const = default;
};

enum class SolveStatus { Optimal, Unbounded, IterationLimit };

const char* to_string(SolveStatus status);

/// One pivot: variable `entering` (column k) replaces the basic variable of
/// constraint row `leaving` (row l).
struct PivotRecord {
  std::size_t entering = 0;
  std::size_t leaving = 0;

  bool operator==(const PivotRecord&) const = default;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Optimal;
  double objective = 0.0;          // meaningful iff status == Optimal
  std::vector<double> x;           // length n iff status == Optimal, else empty
  std::size_t iterations = 0;      // pivots performed
  std::vector<PivotRecord> pivot_log;  // filled iff SolverConfig::log_pivots
  double solve_seconds = 0.0;      // wall time of the pivot loop only
};

struct SolverConfig {
  unsigned threads = 1;
  std::size_t chunk_min = 64;      // guided-schedule chunk floor, in elements
  double eps_cost = 1e-9;          // reduced-cost negativity tolerance
  double eps_pivot = 1e-9;         // pivot-candidate positivity tolerance
  std::size_t max_iterations = 0;  // 0 -> 50 * (m + n)
  // Anti-cycling: 0 disables; otherwise switch the entering rule to Bland's
  // smallest-index rule while the run of consecutive degenerate pivots is
  // at least this long.
  std::size_t bland_stall_window = 0;
  bool log_pivots = false;
  bool pin_threads = false;        // best-effort worker->core affinity hint

  std::size_t iteration_cap(std::size_t m, std::size_t n) const {
    return max_iterations != 0 ? max_iterations : 50 * (m + n);
  }
};

/// Problem validation. `validate` accepts exactly the problems the solvers
/// and tableau construction can consume; the first violated invariant is
/// reported. Checking order: dimensions, then entries of A row-major, then
/// b, then c.
struct Violation {
  enum class Kind { DimensionMismatch, NonFiniteEntry, NegativeRhs };
  Kind kind;
  std::size_t i = 0;  // row (or vector index)
  std::size_t j = 0;  // column; only meaningful for entries of A
  std::string message;
};

struct ValidationResult {
  std::optional<Violation> violation;

  bool ok() const { return !violation.has_value(); }
  explicit operator bool() const { return ok(); }
};

ValidationResult validate(const LpProblem& problem);

// --- Problem file format -----------------------------------------------
//
// Line-oriented text, '#' starts a comment, blank lines ignored:
//
//   m n density seed          (seed may be omitted)
//   <m lines of n coefficients>   rows of A
//   <m values>                    b
//   <n values>                    c
//
// Values are written with shortest round-trip formatting, so a save/load
// cycle reproduces the problem bit for bit.

void write_problem(std::ostream& out, const LpProblem& problem);
void save_problem(const std::string& path, const LpProblem& problem);

/// Parse errors throw std::runtime_error carrying the 1-based line number.
LpProblem read_problem(std::istream& in);
LpProblem load_problem(const std::string& path);

}  // namespace parsimplex
