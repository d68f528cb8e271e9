"""
Tests for the anti-diagonal (a = 0) stationary family
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
from qwalk.coin import classify
from qwalk.errors import InvalidSpec, MissingSequenceValue, ZeroProduct
from qwalk.events import WalkEvents
from qwalk.lattice import sample_window, to_measure
from qwalk.stationary.azero import (
    AZeroSpec, azero_lambda, azero_measure, build_stationary_azero, growing_spec,
)
from qwalk.types import CoinCase
from qwalk.verify import decay_classify, eigen_residual, membership_check


def random_spec(rng, lo=-120, hi=120):
    """Random even-site sequences with moduli in [0.1, 10] and uniform phases"""
    def draw():
        return {site: float(rng.uniform(0.1, 10.0)) * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi)))
                for site in range(lo, hi + 1, 2)}

    return AZeroSpec(
        eta=float(rng.uniform(0, 2 * math.pi)),
        delta=cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))),
        sign=int(rng.choice([1, -1])),
        alpha=draw(),
        beta=draw(),
        default=None,
    )


class TestAZeroSpec(unittest.TestCase):

    def test_bad_sign(self):
        with self.assertRaises(InvalidSpec):
            AZeroSpec(eta=0.0, sign=2)

    def test_odd_site_rejected(self):
        with self.assertRaises(InvalidSpec):
            AZeroSpec(eta=0.0, alpha={1: 1.0})

    def test_delta_must_be_unimodular(self):
        with self.assertRaises(InvalidSpec):
            AZeroSpec(eta=0.0, delta=0.5)

    def test_missing_value_without_default(self):
        spec = AZeroSpec(eta=0.0, alpha={0: 1.0}, beta={0: 1.0}, default=None)
        generator = build_stationary_azero(spec)

        assert_allclose(generator.amplitude(0), [1.0, 1.0])
        with self.assertRaises(MissingSequenceValue):
            generator.amplitude(2)
        with self.assertRaises(MissingSequenceValue):
            generator.amplitude(1)

    def test_zero_product_rejected(self):
        with self.assertRaises(ZeroProduct):
            build_stationary_azero(AZeroSpec(eta=0.0, alpha={4: 0.0}))
        with self.assertRaises(ZeroProduct):
            azero_measure(AZeroSpec(eta=0.0, default=0.0))

    def test_coin_is_anti_diagonal(self):
        spec = AZeroSpec(eta=0.4, delta=1j)
        coin = spec.coin()

        self.assertEqual(classify(coin), CoinCase.A_ZERO)
        self.assertAlmostEqual(coin.det, 1j, places=14)

    def test_lambda_squares_to_minus_delta(self):
        for xi in (0.0, 1.0, math.pi, 5.5):
            for sign in (1, -1):
                spec = AZeroSpec(eta=0.0, delta=cmath.exp(1j * xi), sign=sign)
                lam = azero_lambda(spec)
                self.assertAlmostEqual(lam * lam, -spec.delta, places=14)


class TestAZeroStationarity(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(4242)

    def test_random_sequences(self):
        for trial in range(100):
            spec = random_spec(self.rng)
            coin = spec.coin()
            generator = build_stationary_azero(spec)

            residual = eigen_residual(coin, generator.lam, sample_window(generator, -19, 19))
            self.assertLess(residual.max_eigen_residual, 1e-12, f"trial {trial}")
            self.assertEqual(membership_check(coin, generator, 100, -10, 10, 1e-10), 100, f"trial {trial}")

            sampled = to_measure(sample_window(generator, -19, 19)).values
            analytic = azero_measure(spec).sample(-19, 19).values
            assert_allclose(sampled, analytic, rtol=1e-14)

    def test_measure_formula(self):
        spec = AZeroSpec(eta=1.0, delta=-1, alpha={0: 2.0, 2: 3j}, beta={0: 1.0, 2: 0.5, 4: 2.0}, default=None)
        measure = azero_measure(spec)

        self.assertAlmostEqual(measure.value(0), 5.0)
        self.assertAlmostEqual(measure.value(1), 4.0 + 0.25)
        self.assertAlmostEqual(measure.value(2), 9.0 + 0.25)
        self.assertAlmostEqual(measure.value(3), 9.0 + 4.0)

    def test_growing_spec_is_neither_uniform_nor_exponential(self):
        spec = growing_spec(eta=0.3, lo=-80, hi=80)
        generator = build_stationary_azero(spec)
        measure = azero_measure(spec).sample(-40, 40)

        self.assertEqual(membership_check(spec.coin(), generator, 30, -10, 10), 30)
        self.assertEqual(measure.at(0), 2.0)
        self.assertGreater(measure.at(40), measure.at(20))
        self.assertNotEqual(decay_classify(measure).kind.value, "Exponential")
        self.assertNotEqual(decay_classify(measure).kind.value, "Uniform")


class TestAZeroEvents(unittest.TestCase):

    def setUp(self):
        self.broker = EventBroker.get_default()
        self.values = []
        self.subscription = self.broker.subscribe(WalkEvents.LARGE_SEQUENCE_VALUE, self.values.append)

    def tearDown(self):
        self.broker.unsubscribe(WalkEvents.LARGE_SEQUENCE_VALUE, self.subscription)

    def test_large_values_are_reported(self):
        build_stationary_azero(AZeroSpec(eta=0.0, alpha={0: 1e7}))

        self.assertEqual(len(self.values), 1)
        self.assertAlmostEqual(self.values[0], 1e7)

    def test_moderate_values_are_silent(self):
        build_stationary_azero(AZeroSpec(eta=0.0, alpha={0: 10.0}))

        self.assertEqual(self.values, [])


if __name__ == '__main__':
    unittest.main(verbosity=2)
