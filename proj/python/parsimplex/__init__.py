# SPDX-License-Identifier: Apache-2.0
"""Dense standard-simplex LP solver with a shared-memory parallel engine."""

from ._core import (
    PivotRecord,
    Problem,
    SolveOutcome,
    SolveStatus,
    cache_limit_constraints,
    cache_limit_reference_note,
    generate,
    load_problem,
    realized_density,
    save_problem,
    solve_parallel,
    solve_serial,
    validate,
)

__all__ = [
    "PivotRecord",
    "Problem",
    "SolveOutcome",
    "SolveStatus",
    "cache_limit_constraints",
    "cache_limit_reference_note",
    "generate",
    "load_problem",
    "realized_density",
    "save_problem",
    "solve_parallel",
    "solve_serial",
    "validate",
]
