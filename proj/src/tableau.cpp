// SPDX-License-Identifier: Apache-2.0
#include "parsimplex/tableau.hpp"

#include <cassert>
#include <chrono>

#include "parsimplex/detail/row_kernels.hpp"

namespace parsimplex {

using detail::better_min;

DenseTableau build_initial_tableau(const LpProblem& p) {
  assert(validate(p).ok());
  DenseTableau t;
  t.m = p.m;
  t.n = p.n;
  t.data.assign(t.rows() * t.cols(), 0.0);
  t.basis.resize(p.m);
  for (std::size_t i = 0; i < p.m; ++i) {
    double* row = t.row(i);
    for (std::size_t j = 0; j < p.n; ++j) row[j] = p.at(i, j);
    row[p.n + i] = 1.0;
    row[t.rhs_col()] = p.b[i];
    t.basis[i] = p.n + i;
  }
  double* obj = t.row(p.m);
  for (std::size_t j = 0; j < p.n; ++j) obj[j] = -p.c[j];
  return t;
}

std::optional<std::size_t> select_entering_column(const DenseTableau& t,
                                                  double eps_cost) {
  const double* obj = t.row(t.objective_row());
  const std::size_t scan = t.n + t.m;
  double best_value = 0.0;
  std::size_t best = scan;  // sentinel: none
  for (std::size_t j = 0; j < scan; ++j) {
    if (obj[j] < -eps_cost && (best == scan || better_min(obj[j], j, best_value, best))) {
      best_value = obj[j];
      best = j;
    }
  }
  if (best == scan) return std::nullopt;
  return best;
}

std::optional<std::size_t> select_entering_bland(const DenseTableau& t,
                                                 double eps_cost) {
  const double* obj = t.row(t.objective_row());
  const std::size_t scan = t.n + t.m;
  for (std::size_t j = 0; j < scan; ++j)
    if (obj[j] < -eps_cost) return j;
  return std::nullopt;
}

std::optional<RatioCandidate> select_leaving_row(const DenseTableau& t,
                                                 std::size_t k,
                                                 double eps_pivot) {
  const std::size_t rhs = t.rhs_col();
  double best_ratio = 0.0;
  std::size_t best = t.m;  // sentinel: none
  for (std::size_t i = 0; i < t.m; ++i) {
    const double a_ik = t.at(i, k);
    if (a_ik > eps_pivot) {
      const double ratio = t.at(i, rhs) / a_ik;
      if (best == t.m || better_min(ratio, i, best_ratio, best)) {
        best_ratio = ratio;
        best = i;
      }
    }
  }
  if (best == t.m) return std::nullopt;
  return RatioCandidate{best, best_ratio};
}

void normalize_pivot_row(DenseTableau& t, std::size_t l, std::size_t k) {
  double* row = t.row(l);
  const double pivot = row[k];
  assert(pivot > 0.0);
  detail::divide_range(row, 0, t.cols(), pivot);
  row[k] = 1.0;
}

void eliminate_rows(DenseTableau& t, std::size_t l, std::size_t k) {
  const double* pivot_row = t.row(l);
  const std::size_t cols = t.cols();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == l) continue;
    double* row = t.row(i);
    const double factor = row[k];
    if (factor != 0.0) {
      detail::subtract_scaled_range(row, pivot_row, factor, 0, cols);
      row[k] = 0.0;
    }
  }
  t.basis[l] = k;
}

std::pair<double, std::vector<double>> extract_solution(const DenseTableau& t) {
  std::vector<double> x(t.n, 0.0);
  for (std::size_t i = 0; i < t.m; ++i) {
    const std::size_t var = t.basis[i];
    if (var < t.n) {
      const double v = t.at(i, t.rhs_col());
      x[var] = v < 0.0 ? 0.0 : v;
    }
  }
  return {t.objective_value(), std::move(x)};
}

SolveOutcome solve_serial(const LpProblem& problem, const SolverConfig& config) {
  DenseTableau t = build_initial_tableau(problem);
  const std::size_t cap = config.iteration_cap(problem.m, problem.n);

  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();

  std::size_t degenerate_run = 0;
  const auto pick_entering = [&] {
    const bool bland = config.bland_stall_window != 0 &&
                       degenerate_run >= config.bland_stall_window;
    return bland ? select_entering_bland(t, config.eps_cost)
                 : select_entering_column(t, config.eps_cost);
  };

  auto entering = pick_entering();
  while (entering) {
    if (out.iterations >= cap) {
      out.status = SolveStatus::IterationLimit;
      break;
    }
    const std::size_t k = *entering;
    const auto leaving = select_leaving_row(t, k, config.eps_pivot);
    if (!leaving) {
      out.status = SolveStatus::Unbounded;
      break;
    }
    const std::size_t l = leaving->row;
    if (t.at(l, t.rhs_col()) <= config.eps_pivot)
      ++degenerate_run;
    else
      degenerate_run = 0;
    if (config.log_pivots) out.pivot_log.push_back({k, l});

    normalize_pivot_row(t, l, k);
    eliminate_rows(t, l, k);
    ++out.iterations;
    entering = pick_entering();
  }

  out.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!entering) {
    out.status = SolveStatus::Optimal;
    auto [objective, x] = extract_solution(t);
    out.objective = objective;
    out.x = std::move(x);
  } else if (out.status == SolveStatus::IterationLimit) {
    out.objective = t.objective_value();
  }
  return out;
}

}  // namespace parsimplex
