"""
Unit tests for coin construction, validation and case classification
"""
import unittest
import math
import sys
import os

import numpy as np
from numpy.testing import assert_allclose

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..','..')))

from qwalk import coin as coins
from qwalk.coin import classify, coin_angles, decompose, make_coin, nearest_unitary, unitarity_residuals
from qwalk.errors import AmbiguousCase, NotUnitary, WrongCase
from qwalk.types import CoinCase, UnitaryCoin


class TestMakeCoin(unittest.TestCase):

    def test_hadamard_is_valid(self):
        coin = coins.hadamard()

        self.assertAlmostEqual(coin.det, -1.0 + 0j, places=14)
        assert_allclose(coin.matrix @ coin.matrix.conj().T, np.eye(2), atol=1e-15)

    def test_non_unitary_rejected(self):
        with self.assertRaises(NotUnitary):
            make_coin(1, 1, 0, 1)

    def test_non_finite_rejected(self):
        with self.assertRaises(NotUnitary):
            make_coin(float('nan'), 0, 0, 1)

    def test_strict_tolerance(self):
        # a row norm off by ~2e-11 passes 1e-9 but not 1e-12
        c = math.cos(0.4) * (1 + 1e-11)
        s = math.sin(0.4)
        make_coin(c, s, s, -c)
        with self.assertRaises(NotUnitary):
            make_coin(c, s, s, -c, strict=True)

    def test_repair_projects_onto_unitary(self):
        s = 1.0 / math.sqrt(2.0)
        coin = make_coin(s + 1e-4, s, s, -s - 2e-4, repair=True)
        residuals = unitarity_residuals(*coin.entries())

        self.assertLess(max(residuals.values()), 1e-12)

    def test_nearest_unitary_keeps_unitary(self):
        u = coins.h_sigma(0.7).matrix
        assert_allclose(nearest_unitary(u), u, atol=1e-14)

    def test_nearest_unitary_rejects_singular(self):
        with self.assertRaises(NotUnitary):
            nearest_unitary(np.zeros((2, 2)))


class TestClassify(unittest.TestCase):

    def test_cases(self):
        self.assertEqual(classify(coins.hadamard()), CoinCase.FULL_SUPPORT)
        self.assertEqual(classify(coins.azero_coin(0.3, 1j)), CoinCase.A_ZERO)
        self.assertEqual(classify(coins.bzero_coin(0.3, -1)), CoinCase.B_ZERO)
        self.assertEqual(classify(coins.identity()), CoinCase.B_ZERO)

    def test_ambiguous_band(self):
        coin = UnitaryCoin(1e-12, 1, -1, 1e-7, 1)
        with self.assertRaises(AmbiguousCase):
            classify(coin)

    def test_angles(self):
        angles = coin_angles(coins.hadamard())

        self.assertAlmostEqual(angles.phi, math.pi / 4, places=12)
        self.assertAlmostEqual(angles.xi, math.pi, places=12)

    def test_angles_need_full_support(self):
        with self.assertRaises(WrongCase):
            coin_angles(coins.azero_coin(0.0, 1))

    def test_xi_is_in_principal_range(self):
        coin = make_coin(0.6, 0.8j, 0.8j, 0.6)   # det = 0.36 + 0.64 = 1
        self.assertAlmostEqual(coin_angles(coin).xi, 0.0, places=12)

        coin = coins.h_sigma(1.1)
        xi = coin_angles(coin).xi
        self.assertGreaterEqual(xi, 0.0)
        self.assertLess(xi, 2 * math.pi)


class TestDecomposeAndPresets(unittest.TestCase):

    def test_halves_sum_to_coin(self):
        coin = coins.h_sigma(0.9)
        halves = decompose(coin)

        assert_allclose(halves.P + halves.Q, coin.matrix)
        self.assertTrue(np.all(halves.P[1] == 0))
        self.assertTrue(np.all(halves.Q[0] == 0))

    def test_u_theta_quarter_pi_is_hadamard(self):
        assert_allclose(coins.u_theta(math.pi / 4).matrix, coins.hadamard().matrix, atol=1e-15)

    def test_azero_and_bzero_determinant(self):
        delta = complex(math.cos(1.3), math.sin(1.3))
        self.assertAlmostEqual(coins.azero_coin(0.5, delta).det, delta, places=14)
        self.assertAlmostEqual(coins.bzero_coin(0.5, delta).det, delta, places=14)

    def test_random_full_support_is_seeded(self):
        first = coins.random_full_support_coin(np.random.default_rng(7), min_modulus=0.1)
        second = coins.random_full_support_coin(np.random.default_rng(7), min_modulus=0.1)

        assert_allclose(first.matrix, second.matrix)
        self.assertGreaterEqual(min(abs(v) for v in first.entries()), 0.1)


if __name__ == '__main__':
    unittest.main(verbosity=2)
