# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings, run against the built extension."""

import math
import os
import tempfile
import unittest

import parsimplex as ps


def textbook():
    # max 3x1 + 5x2  s.t.  x1 <= 4, 2x2 <= 12, 3x1 + 2x2 <= 18
    return ps.Problem(m=3, n=2, a=[1, 0, 0, 2, 3, 2], b=[4, 12, 18], c=[3, 5])


class SolveSmoke(unittest.TestCase):
    def test_textbook_serial(self):
        out = ps.solve_serial(textbook(), log_pivots=True)
        self.assertEqual(out.status, ps.SolveStatus.Optimal)
        self.assertAlmostEqual(out.objective, 36.0, places=9)
        self.assertAlmostEqual(out.x[0], 2.0, places=9)
        self.assertAlmostEqual(out.x[1], 6.0, places=9)
        self.assertLessEqual(out.iterations, 3)
        self.assertEqual(len(out.pivot_log), out.iterations)

    def test_parallel_matches_serial(self):
        problem = ps.generate(24, 24, density=1.0, seed=5)
        serial = ps.solve_serial(problem, log_pivots=True)
        for threads in (1, 2, 4):
            par = ps.solve_parallel(problem, threads=threads, log_pivots=True)
            self.assertEqual(par.status, serial.status)
            self.assertEqual(par.objective, serial.objective)
            self.assertEqual(
                [(r.entering, r.leaving) for r in par.pivot_log],
                [(r.entering, r.leaving) for r in serial.pivot_log],
            )

    def test_unbounded(self):
        problem = ps.Problem(m=1, n=2, a=[-1, 1], b=[1], c=[1, 0])
        self.assertEqual(ps.solve_parallel(problem, threads=2).status,
                         ps.SolveStatus.Unbounded)

    def test_validate(self):
        self.assertIsNone(ps.validate(textbook()))
        bad = ps.Problem(m=1, n=1, a=[2], b=[-1], c=[3])
        self.assertIn("b[0]", ps.validate(bad))


class GeneratorSmoke(unittest.TestCase):
    def test_deterministic(self):
        a = ps.generate(16, 16, density=0.9, seed=42)
        b = ps.generate(16, 16, density=0.9, seed=42)
        self.assertEqual(a, b)

    def test_realized_density(self):
        p = ps.generate(64, 64, density=1.0, seed=1)
        self.assertEqual(ps.realized_density(p), 1.0)


class FileSmoke(unittest.TestCase):
    def test_round_trip(self):
        p = ps.generate(8, 5, density=0.8, seed=11)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "problem.lp")
            ps.save_problem(path, p)
            again = ps.load_problem(path)
        self.assertEqual(again, p)
        out = ps.solve_parallel(again, threads=2)
        self.assertEqual(out.status, ps.SolveStatus.Optimal)


class CacheModelSmoke(unittest.TestCase):
    def test_published_bounds(self):
        for vars_, expected in ((256, 2771), (512, 2651), (1024, 2429),
                                (2048, 2048), (4096, 1499)):
            self.assertEqual(ps.cache_limit_constraints(vars_), expected)

    def test_model_deviation_note(self):
        self.assertEqual(ps.cache_limit_constraints(8192), 920)
        note = ps.cache_limit_reference_note(8192)
        self.assertIsNotNone(note)
        self.assertIn("920", note)
        self.assertIsNone(ps.cache_limit_reference_note(4096))


if __name__ == "__main__":
    unittest.main()
