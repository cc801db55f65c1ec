// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "parsimplex/lp_model.hpp"

namespace test_support {

inline parsimplex::LpProblem make_problem(std::size_t m, std::size_t n,
                                          std::vector<double> a,
                                          std::vector<double> b,
                                          std::vector<double> c) {
  parsimplex::LpProblem p;
  p.m = m;
  p.n = n;
  p.a = std::move(a);
  p.b = std::move(b);
  p.c = std::move(c);
  return p;
}

// max 3x1 + 5x2  s.t.  x1 <= 4,  2x2 <= 12,  3x1 + 2x2 <= 18
// Optimum z = 36 at (2, 6), reached in two pivots under Dantzig pricing.
inline parsimplex::LpProblem textbook_problem() {
  return make_problem(3, 2,
                      {1, 0,
                       0, 2,
                       3, 2},
                      {4, 12, 18}, {3, 5});
}

// max x1  s.t.  -x1 + x2 <= 1: x1 can grow without bound.
inline parsimplex::LpProblem unbounded_problem() {
  return make_problem(1, 2, {-1, 1}, {1}, {1, 0});
}

/// Spec checks for an Optimal outcome: x >= 0, A x <= b + tol, objective
/// consistent with c'x, with tol = 1e-6 * (1 + |objective|).
inline bool optimal_outcome_consistent(const parsimplex::LpProblem& p,
                                       const parsimplex::SolveOutcome& out) {
  if (out.status != parsimplex::SolveStatus::Optimal) return false;
  if (out.x.size() != p.n) return false;
  const double tol = 1e-6 * (1.0 + std::fabs(out.objective));
  double cx = 0.0;
  for (std::size_t j = 0; j < p.n; ++j) {
    if (out.x[j] < 0.0) return false;
    cx += p.c[j] * out.x[j];
  }
  if (std::fabs(cx - out.objective) > tol) return false;
  for (std::size_t i = 0; i < p.m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) row += p.at(i, j) * out.x[j];
    if (row > p.b[i] + tol) return false;
  }
  return true;
}

}  // namespace test_support
