// SPDX-License-Identifier: Apache-2.0
#include "parsimplex/problem_gen.hpp"

#include <random>
#include <stdexcept>

namespace parsimplex {

namespace {

double draw_coefficient(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  double v = dist(rng);
  while (v == 0.0) v = dist(rng);  // open interval
  return v;
}

}  // namespace

LpProblem generate(const GenSpec& spec) {
  if (spec.m == 0 || spec.n == 0)
    throw std::invalid_argument("generate: m and n must be positive");
  if (!(spec.density > 0.0) || spec.density > 1.0)
    throw std::invalid_argument("generate: density must be in (0, 1]");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  LpProblem p;
  p.m = spec.m;
  p.n = spec.n;
  p.density = spec.density;
  p.seed = spec.seed;
  p.a.assign(spec.m * spec.n, 0.0);
  p.b.assign(spec.m, 0.0);
  p.c.assign(spec.n, 0.0);

  std::vector<bool> column_used(spec.n, false);
  for (std::size_t i = 0; i < spec.m; ++i)
    for (std::size_t j = 0; j < spec.n; ++j)
      if (spec.density >= 1.0 || unit(rng) < spec.density) {
        p.at(i, j) = draw_coefficient(rng);
        column_used[j] = true;
      }

  // Hidden feasible point u in [0,1]^n; b = A u makes u a witness.
  std::vector<double> u(spec.n);
  for (double& v : u) v = unit(rng);
  for (std::size_t i = 0; i < spec.m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.n; ++j) sum += p.at(i, j) * u[j];
    p.b[i] = sum;
  }

  // Cost only on columns some constraint caps; all-zero columns stay free
  // of cost so the instance cannot be unbounded.
  for (std::size_t j = 0; j < spec.n; ++j)
    if (column_used[j]) p.c[j] = draw_coefficient(rng);

  return p;
}

double realized_density(const LpProblem& p) {
  if (p.a.empty()) return 0.0;
  std::size_t nonzero = 0;
  for (double v : p.a)
    if (v != 0.0) ++nonzero;
  return static_cast<double>(nonzero) / static_cast<double>(p.a.size());
}

}  // namespace parsimplex
