// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

// Scalar row kernels shared by the serial and parallel engines. Both sides
// must route their arithmetic through these so that every tableau element
// sees the identical sequence of IEEE operations regardless of how the row
// is partitioned; together with -ffp-contract=off this makes pivot
// sequences thread-count invariant bit for bit.

namespace parsimplex::detail {

inline void divide_range(double* row, std::size_t begin, std::size_t end,
                         double divisor) {
  for (std::size_t j = begin; j < end; ++j) row[j] /= divisor;
}

inline void subtract_scaled_range(double* dst, const double* src,
                                  double factor, std::size_t begin,
                                  std::size_t end) {
  for (std::size_t j = begin; j < end; ++j) dst[j] -= factor * src[j];
}

// Lexicographic (value, index) minimum: the entering rule. `true` when
// (value, index) improves on (best_value, best_index).
inline bool better_min(double value, std::size_t index, double best_value,
                       std::size_t best_index) {
  return value < best_value || (value == best_value && index < best_index);
}

}  // namespace parsimplex::detail
