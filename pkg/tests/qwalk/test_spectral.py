"""
Tests for the abcd != 0 stationary family: eigenvalues, gamma, the
eigenvector generator and the quadratic measure
"""
import unittest
import cmath
import math
import sys
import os

import numpy as np
from numpy.testing import assert_allclose

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..','..')))

from core.event_broker import EventBroker
from qwalk import coin as coins
from qwalk.config import Tolerances
from qwalk.errors import NotEigenvalue, WrongCase, ZeroParameters
from qwalk.events import WalkEvents
from qwalk.lattice import evolve, evolve_fields, sample_window, to_measure
from qwalk.stationary.spectral import (
    FullSupportStateGenerator, QuadraticMeasureGenerator, build_stationary_full, closed_form_measure,
    eigen_lambdas, gamma_of, hadamard_real_measure, match_eigenvalue, solve, u_theta_state,
)
from qwalk.types import EigenSolution
from qwalk.verify import eigen_residual, membership_check


class TestEigenvalues(unittest.TestCase):

    def test_hadamard_lambdas(self):
        lam1, lam2, lam3, lam4 = eigen_lambdas(coins.hadamard())

        self.assertAlmostEqual(lam1, cmath.exp(3j * math.pi / 4), places=14)
        self.assertAlmostEqual(lam2, cmath.exp(1j * math.pi / 4), places=14)
        self.assertEqual(lam3, -lam1)
        self.assertEqual(lam4, -lam2)

    def test_u_theta_gamma(self):
        # gamma(lambda_1) = gamma(lambda_2) = i, gamma(lambda_3) = gamma(lambda_4) = -i
        for theta in np.linspace(0, math.pi / 2, 52)[1:-1]:
            coin = coins.u_theta(theta)
            gammas = [gamma_of(coin, lam) for lam in eigen_lambdas(coin)]
            for gamma, expected in zip(gammas, (1j, 1j, -1j, -1j)):
                self.assertLess(abs(gamma - expected), 1e-12, f"theta={theta}")

    def test_gamma_rejects_non_eigenvalue(self):
        with self.assertRaises(NotEigenvalue):
            gamma_of(coins.hadamard(), 1.0)

    def test_match_eigenvalue_snaps(self):
        coin = coins.h_sigma(0.4)
        lam = eigen_lambdas(coin)[2]

        k, exact = match_eigenvalue(coin, lam + 1e-11)
        self.assertEqual(k, 3)
        self.assertEqual(exact, lam)

        with self.assertRaises(NotEigenvalue):
            match_eigenvalue(coin, lam + 1e-6)

    def test_wrong_case(self):
        with self.assertRaises(WrongCase):
            eigen_lambdas(coins.azero_coin(0.2, 1))
        with self.assertRaises(WrongCase):
            build_stationary_full(coins.identity(), 1.0, 1, 0)

    def test_solve_validates_inputs(self):
        coin = coins.hadamard()
        with self.assertRaises(ValueError):
            solve(coin, 5, 1, 0)
        with self.assertRaises(ZeroParameters):
            solve(coin, 1, 0, 0)


class TestFullSupportGenerator(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(20240611)

    def test_eigen_equation_random_coins(self):
        for _ in range(20):
            coin = coins.random_full_support_coin(self.rng, min_modulus=0.1)
            A = complex(*self.rng.uniform(-1, 1, 2))
            B = complex(*self.rng.uniform(-1, 1, 2))
            for k in (1, 2, 3, 4):
                solution = solve(coin, k, A, B)
                field = sample_window(FullSupportStateGenerator(solution), -16, 16)
                report = eigen_residual(coin, solution.lam, field)
                self.assertTrue(report.passed, f"k={k}: residual {report.max_eigen_residual:.3e}")

    def test_evolution_multiplies_amplitudes_by_lambda_power(self):
        for _ in range(5):
            coin = coins.random_full_support_coin(self.rng, min_modulus=0.1)
            A = complex(*self.rng.uniform(-1, 1, 2))
            B = complex(*self.rng.uniform(-1, 1, 2))
            for k in (1, 2, 3, 4):
                solution = solve(coin, k, A, B)
                generator = FullSupportStateGenerator(solution)
                initial = sample_window(generator, -8, 8).values
                for n in (1, 5, 10):
                    assert_allclose(evolve(coin, generator, n, -8, 8).values, solution.lam ** n * initial,
                                    rtol=1e-12, atol=1e-12, err_msg=f"k={k}, n={n}")

    def test_hadamard_acceptance_window(self):
        # A = 0, B = 1: mu = 2{(x - 1/2)^2 + 3/4} at every time up to 64
        coin = coins.hadamard()
        generator = build_stationary_full(coin, eigen_lambdas(coin)[0], 0, 1)
        x = np.arange(-32, 33)
        expected = 2.0 * ((x - 0.5) ** 2 + 0.75)

        for n, field in evolve_fields(coin, generator, 64, -32, 32):
            assert_allclose(to_measure(field).values, expected, rtol=1e-13, atol=1e-10,
                            err_msg=f"n={n}")

        measure = to_measure(sample_window(generator, 0, 2))
        assert_allclose(measure.values, [2.0, 2.0, 6.0], atol=1e-12)

    def test_b_zero_parameter_gives_uniform(self):
        coin = coins.hadamard()
        generator = build_stationary_full(coin, eigen_lambdas(coin)[1], 1, 0)
        for n, field in evolve_fields(coin, generator, 128, -64, 64):
            self.assertLess(float(np.max(np.abs(to_measure(field).values - 2.0))), 1e-12, f"n={n}")

    def test_u_theta_forms_agree(self):
        theta = 0.6
        coin = coins.u_theta(theta)
        A, B = 0.3 - 0.2j, 0.8 + 0.1j
        for k in (1, 2, 3, 4):
            explicit = sample_window(u_theta_state(theta, k, A, B), -10, 10).values
            general = sample_window(FullSupportStateGenerator(solve(coin, k, A, B)), -10, 10).values
            assert_allclose(explicit, general, rtol=1e-12, atol=1e-12, err_msg=f"k={k}")

    def test_u_theta_range(self):
        with self.assertRaises(WrongCase):
            u_theta_state(0.0, 1, 1, 0)
        with self.assertRaises(ZeroParameters):
            u_theta_state(0.5, 1, 0, 0)

    def test_membership_random(self):
        coin = coins.random_full_support_coin(self.rng, min_modulus=0.1)
        generator = FullSupportStateGenerator(solve(coin, 2, 0.4j, 0.9))

        self.assertEqual(membership_check(coin, generator, 24, -12, 12), 24)


class TestQuadraticMeasure(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(99)
        self.broker = EventBroker.get_default()
        self.findings = []
        self.subscription = self.broker.subscribe(WalkEvents.CLOSED_FORM_MISMATCH, self.findings.append)

    def tearDown(self):
        self.broker.unsubscribe(WalkEvents.CLOSED_FORM_MISMATCH, self.subscription)

    def test_hadamard_real_parameters(self):
        coin = coins.hadamard()
        for lam in eigen_lambdas(coin):
            generator = closed_form_measure(coin, lam, 0.5, 1.0)
            assert_allclose(generator.sample(-15, 15).values,
                            hadamard_real_measure(0.5, 1.0, -15, 15).values, rtol=1e-12)
        self.assertAlmostEqual(closed_form_measure(coin, eigen_lambdas(coin)[0], 0, 1).value(2), 6.0, places=10)

    def test_printed_matches_direct(self):
        for _ in range(100):
            coin = coins.random_full_support_coin(self.rng, min_modulus=0.1)
            k = int(self.rng.integers(1, 5))
            A = complex(*self.rng.uniform(-1, 1, 2))
            B = complex(*self.rng.uniform(-1, 1, 2))
            generator = QuadraticMeasureGenerator(solve(coin, k, A, B))
            printed, direct = generator.printed(-30, 30), generator.direct(-30, 30)
            gap = float(np.max(np.abs(printed - direct)))

            self.assertLessEqual(gap, 1e-10 * max(1.0, float(np.max(direct))))
        self.assertEqual(self.findings, [])

    def test_measure_is_quadratic(self):
        coin = coins.h_sigma(1.2)
        generator = closed_form_measure(coin, eigen_lambdas(coin)[3], 0.2 + 0.1j, -0.7j)
        values = generator.sample(-10, 10).values

        third_differences = np.diff(values, 3)
        assert_allclose(third_differences, 0.0, atol=1e-9)

    def test_growth_rate_is_twice_b_squared(self):
        coin = coins.h_sigma(1.2)
        B = -0.7j
        generator = closed_form_measure(coin, eigen_lambdas(coin)[3], 0.2 + 0.1j, B)
        expected = 2.0 * abs(B) ** 2

        x = np.arange(-50, 51)
        leading = np.polyfit(x, generator.sample(-50, 50).values, 2)[0]
        self.assertAlmostEqual(leading, expected, places=9)

        gaps = [abs(generator.value(s) / s ** 2 - expected) for s in (200, 400, 800)]
        self.assertTrue(gaps[0] > gaps[1] > gaps[2], gaps)
        self.assertLess(gaps[2], 1e-2)

    def test_mismatch_is_published(self):
        coin = coins.hadamard()
        solution = solve(coin, 1, 0.0, 1.0)
        # a gamma off the unit circle breaks the printed formula
        broken = EigenSolution(solution.lam, 1.1 * solution.gamma, solution.A, solution.B, coin, 1)
        generator = QuadraticMeasureGenerator(broken, Tolerances())
        measure = generator.sample(-5, 5)

        self.assertEqual(len(self.findings), 1)
        finding = self.findings[0]
        self.assertEqual(finding['lambda_index'], 1)
        self.assertAlmostEqual(measure.at(finding['site']), finding['direct'])


if __name__ == '__main__':
    unittest.main(verbosity=2)
