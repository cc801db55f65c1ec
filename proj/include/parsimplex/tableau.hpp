// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "parsimplex/lp_model.hpp"

namespace parsimplex {

/// Dense simplex tableau, (m+1) x (n+m+1), row-major:
///
///   columns [0, n)        original variables
///   columns [n, n+m)      slack variables (identity block initially)
///   column  n+m           right-hand side
///   rows    [0, m)        constraints
///   row     m             objective row, initially -c then zeros then 0
///
/// `basis[i]` is the variable currently basic in constraint row i. After a
/// completed pivot every basic column is a unit vector and the objective-row
/// RHS entry holds the current objective value.
struct DenseTableau {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> data;          // (m+1) * (n+m+1)
  std::vector<std::size_t> basis;    // length m

  std::size_t rows() const { return m + 1; }
  std::size_t cols() const { return n + m + 1; }
  std::size_t rhs_col() const { return n + m; }
  std::size_t objective_row() const { return m; }

  double* row(std::size_t i) { return data.data() + i * cols(); }
  const double* row(std::size_t i) const { return data.data() + i * cols(); }
  double& at(std::size_t i, std::size_t j) { return data[i * cols() + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols() + j]; }

  double objective_value() const { return at(m, rhs_col()); }
};

/// Leaving-row candidate from the ratio test: ratio = rhs[row] / a[row][k]
/// over rows whose pivot-column entry exceeds eps_pivot.
struct RatioCandidate {
  std::size_t row = 0;
  double ratio = 0.0;
};

/// Transcribes a validated problem into the initial tableau (slack identity
/// block, objective row -c, basis = slacks).
DenseTableau build_initial_tableau(const LpProblem& problem);

/// Dantzig pricing over all structural and slack columns [0, n+m): the most
/// negative objective-row entry below -eps_cost, ties to the smallest column
/// index. nullopt means optimal.
std::optional<std::size_t> select_entering_column(const DenseTableau& tableau,
                                                  double eps_cost);

/// Bland's rule: smallest column index with objective entry below -eps_cost.
std::optional<std::size_t> select_entering_bland(const DenseTableau& tableau,
                                                 double eps_cost);

/// Minimum-ratio test on column k, ties to the smallest row index. nullopt
/// means no entry exceeds eps_pivot: the problem is unbounded.
std::optional<RatioCandidate> select_leaving_row(const DenseTableau& tableau,
                                                 std::size_t k,
                                                 double eps_pivot);

/// Divides row l by a[l][k]; the pivot element is then set to exactly 1.
void normalize_pivot_row(DenseTableau& tableau, std::size_t l, std::size_t k);

/// For every row i != l (objective row included): row_i -= a[i][k] * row_l.
/// Eliminated column-k entries are set to exactly 0 and basis[l] becomes k.
/// Requires normalize_pivot_row applied first.
void eliminate_rows(DenseTableau& tableau, std::size_t l, std::size_t k);

/// Reads the optimum off a terminal tableau: x_j = rhs of the row where j is
/// basic (0 otherwise, tiny negative roundoff clamped), objective from the
/// objective-row RHS.
std::pair<double, std::vector<double>> extract_solution(const DenseTableau& tableau);

/// Steps 1-5 in a loop: Dantzig pricing, ratio test, pivot, until optimal,
/// unbounded, or the iteration cap. The serial reference engine.
SolveOutcome solve_serial(const LpProblem& problem, const SolverConfig& config = {});

}  // namespace parsimplex
