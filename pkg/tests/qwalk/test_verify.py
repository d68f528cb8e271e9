"""
Tests for residuals, algebraic identities, membership levels and decay classes
"""
import unittest
import math
import sys
import os

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..','..')))

from core.logger import logger
from qwalk import coin as coins
from qwalk.errors import InvalidSpec, NonPositive, WindowTooSmall, WrongCase
from qwalk.lattice import UniformStateGenerator, delta_generator, sample_window
from qwalk.stationary.spectral import FullSupportStateGenerator, closed_form_measure, eigen_lambdas, solve
from qwalk.stationary.bzero import diagonal_coin, lift_to_generator, unbounded_a, unbounded_b
from qwalk.types import AmplitudeField, DecayKind, Measure
from qwalk.verify import (
    DecayClassifier, algebraic_checks, decay_classify, eigen_residual, identity_residuals,
    membership_check, recurrence_residual,
)
from qwalk.verify.residuals import IDENTITY_NAMES


class TestEigenResidual(unittest.TestCase):

    def setUp(self):
        self.coin = coins.hadamard()
        self.solution = solve(self.coin, 1, 0.5, 1.0)
        self.field = sample_window(FullSupportStateGenerator(self.solution), -10, 10)

    def test_eigenvector_passes(self):
        report = eigen_residual(self.coin, self.solution.lam, self.field)

        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.per_site), list(range(-9, 10)))
        self.assertEqual(report.thresholds['eigen_residual'], 1e-12)

    def test_wrong_lambda_fails(self):
        report = eigen_residual(self.coin, -self.solution.lam, self.field)

        self.assertFalse(report.passed)
        self.assertGreater(report.max_eigen_residual, 0.1)

    def test_single_site_perturbation_stays_local(self):
        values = np.array(self.field.values)
        values[10, 0] += 1e-3     # x = 0
        report = eigen_residual(self.coin, self.solution.lam, AmplitudeField(-10, 10, values))

        self.assertGreaterEqual(report.max_eigen_residual, 1e-4)
        self.assertLessEqual(report.max_eigen_residual, 1e-2)
        for x, residual in report.per_site.items():
            if abs(x) <= 1:
                self.assertGreaterEqual(residual, 1e-4, f"x={x}")
            else:
                self.assertLess(residual, 1e-12, f"x={x}")

    def test_window_needs_interior(self):
        with self.assertRaises(WindowTooSmall):
            eigen_residual(self.coin, self.solution.lam, self.field.restrict(0, 1))

    def test_recurrence(self):
        self.assertLess(recurrence_residual(self.coin, self.solution.lam, self.field), 1e-12)
        self.assertGreater(recurrence_residual(self.coin, 1j, self.field), 1e-3)


class TestAlgebraicChecks(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(1729)
        self.messages = []
        logger.set_output_handler(self.messages.append)

    def tearDown(self):
        logger.set_output_handler(None)

    def test_random_coins(self):
        for trial in range(200):
            coin = coins.random_full_support_coin(self.rng, min_modulus=0.1)
            report = algebraic_checks(coin)

            self.assertEqual(set(report.identities), set(IDENTITY_NAMES))
            self.assertTrue(report.passed, f"trial {trial}: {report.identities}")

    def test_non_eigenvalue_fails(self):
        coin = coins.hadamard()
        report = algebraic_checks(coin, lambdas=[1.0])

        self.assertFalse(report.passed)
        self.assertAlmostEqual(identity_residuals(coin, 1.0)['unit_gamma'], 1.0)
        self.assertTrue(any("unit_gamma" in m or "double_root" in m for m in self.messages))

    def test_needs_full_support(self):
        with self.assertRaises(WrongCase):
            algebraic_checks(coins.bzero_coin(0.0, 1))


class TestMembership(unittest.TestCase):

    def setUp(self):
        self.coin = coins.hadamard()

    def test_uniform_state(self):
        self.assertEqual(membership_check(self.coin, UniformStateGenerator([0.6, 0.8j]), 20, -10, 10), 20)

    def test_localized_state(self):
        self.assertEqual(membership_check(self.coin, delta_generator(0, (1, 0)), 5, -5, 5), 0)

    def test_lifted_unbounded_counterexample_is_level_one(self):
        generator = lift_to_generator(unbounded_a, unbounded_b)
        self.assertEqual(membership_check(diagonal_coin(), generator, 4, -6, 6), 1)

    def test_level_grows_with_tolerance(self):
        generator = delta_generator(0, (1, 0))
        levels = [membership_check(self.coin, generator, 12, -6, 6, tol)
                  for tol in (1e-12, 1e-3, 0.3, 0.6, 2.0)]

        self.assertEqual(levels, sorted(levels))
        self.assertEqual(levels[0], 0)
        self.assertEqual(levels[-1], 12)

    def test_n_max_validated(self):
        with self.assertRaises(ValueError):
            membership_check(self.coin, delta_generator(), 0, -1, 1)


class TestDecay(unittest.TestCase):

    def test_quadratic_measures_are_polynomial(self):
        for coin in (coins.hadamard(), coins.h_sigma(0.5), coins.h_sigma(2.0)):
            for k in (1, 2, 3, 4):
                for A, B in ((0.0, 1.0), (0.5, 1.0), (0.3j, 0.8)):
                    measure = closed_form_measure(coin, eigen_lambdas(coin)[k - 1], A, B).sample(-50, 50)
                    decay = decay_classify(measure)

                    self.assertEqual(decay.kind, DecayKind.POLYNOMIAL, f"k={k} A={A} B={B}")
                    self.assertGreater(decay.estimate, 1.5)
                    self.assertLess(decay.estimate, 2.5)

    def test_hadamard_degree_close_to_two(self):
        coin = coins.hadamard()
        measure = closed_form_measure(coin, eigen_lambdas(coin)[0], 0, 1).sample(-50, 50)

        self.assertAlmostEqual(decay_classify(measure).estimate, 2.0, delta=0.1)

    def test_b_zero_is_uniform(self):
        for coin in (coins.hadamard(), coins.u_theta(0.4)):
            measure = closed_form_measure(coin, eigen_lambdas(coin)[2], 1.0, 0.0).sample(-50, 50)
            self.assertEqual(decay_classify(measure).kind, DecayKind.UNIFORM)

    def test_exponential(self):
        x = np.arange(-20, 21)
        decay = decay_classify(Measure(-20, 20, np.power(2.0, np.abs(x))))

        self.assertEqual(decay.kind, DecayKind.EXPONENTIAL)
        self.assertAlmostEqual(decay.estimate, math.log(2.0), places=10)
        self.assertTrue(decay.tag.startswith("Exponential("))

    def test_preconditions(self):
        with self.assertRaises(WindowTooSmall):
            decay_classify(Measure(-3, 3, np.ones(7) + np.arange(7)))
        with self.assertRaises(InvalidSpec):
            decay_classify(Measure(-5, 6, np.arange(12, dtype=float) + 1))

        values = np.abs(np.arange(-6, 7, dtype=float))
        values[-1] = 0.0
        with self.assertRaises(NonPositive):
            decay_classify(Measure(-6, 6, values))

    def test_custom_tail_start(self):
        x = np.arange(-30, 31)
        measure = Measure(-30, 30, 1.0 + x.astype(float) ** 4)
        decay = DecayClassifier(tail_start=10).classify(measure)

        self.assertEqual(decay.kind, DecayKind.POLYNOMIAL)
        self.assertAlmostEqual(decay.estimate, 4.0, delta=0.05)


if __name__ == '__main__':
    unittest.main(verbosity=2)
