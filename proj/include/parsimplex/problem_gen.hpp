// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "parsimplex/lp_model.hpp"

namespace parsimplex {

/// Recipe for a random dense canonical-form instance. Every generated
/// problem is feasible and bounded by construction, so the solvers always
/// reach Optimal on it.
struct GenSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  double density = 0.9;   // in (0, 1]
  std::uint64_t seed = 0;
};

/// Deterministic in the seed:
///   - each A entry is nonzero with probability `density`, nonzero values
///     uniform on (0, 50)
///   - b = A u for a hidden uniform u in [0,1]^n, so u witnesses feasibility
///   - c_j uniform on (0, 50) when column j has a nonzero entry (which caps
///     the variable, giving boundedness), 0 for all-zero columns
/// Throws std::invalid_argument for m = 0, n = 0 or density outside (0, 1].
LpProblem generate(const GenSpec& spec);

/// Fraction of nonzero entries of A.
double realized_density(const LpProblem& problem);

}  // namespace parsimplex
