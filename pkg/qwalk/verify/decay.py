"""
Heuristic tail classification of a symmetric measure window: uniform,
polynomial (log mu linear in log|x|) or exponential (log mu linear in |x|).
"""
from typing import Tuple

import numpy as np

from core.logger import log_aware
from ..errors import InvalidSpec, NonPositive, WindowTooSmall
from ..types import DecayClass, DecayKind, Measure


def _fit_residual(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """Slope and RMS residual of a least-squares line"""
    coefficients = np.polyfit(x, y, 1)
    residual = y - np.polyval(coefficients, x)
    return float(coefficients[0]), float(np.sqrt(np.mean(residual ** 2)))


@log_aware("Decay")
class DecayClassifier:
    """
    Uniform when max - min <= uniform_rel * max(1, mean). Otherwise each tail
    |x| >= tail_start is fitted twice and one model wins when its summed RMS
    residual is at most `dominance` times the other's. x = 0 never enters a fit.
    """

    def __init__(self, uniform_rel: float = 1e-9, tail_start: int = 3,
                 dominance: float = 0.5, min_degree: float = 0.5):
        self.uniform_rel = uniform_rel
        self.tail_start = tail_start
        self.dominance = dominance
        self.min_degree = min_degree

    def classify(self, measure: Measure) -> DecayClass:
        if measure.hi - measure.lo + 1 < 9:
            raise WindowTooSmall(f"Decay classification needs at least 9 sites, got [{measure.lo}, {measure.hi}]")
        if measure.lo != -measure.hi:
            raise InvalidSpec(f"Window must be symmetric about 0, got [{measure.lo}, {measure.hi}]")

        values = measure.values
        spread = float(np.max(values) - np.min(values))
        if spread <= self.uniform_rel * max(1.0, float(np.mean(values))):
            return DecayClass(DecayKind.UNIFORM)

        sites = measure.sites
        degrees, rates = [], []
        loglog_residual = linear_residual = 0.0
        for tail in (sites >= self.tail_start, sites <= -self.tail_start):
            distance = np.abs(sites[tail]).astype(np.float64)
            weights = values[tail]
            if np.any(weights <= 0):
                bad = int(sites[tail][np.argmin(weights)])
                raise NonPositive(f"mu({bad}) = {measure.at(bad)!r} cannot enter a logarithmic fit")
            log_weights = np.log(weights)

            degree, residual = _fit_residual(np.log(distance), log_weights)
            degrees.append(degree)
            loglog_residual += residual

            rate, residual = _fit_residual(distance, log_weights)
            rates.append(rate)
            linear_residual += residual

        degree, rate = float(np.mean(degrees)), float(np.mean(rates))
        self.debug(f"log-log residual {loglog_residual:.3e} (degree {degree:.4g}), "
                   f"log-linear residual {linear_residual:.3e} (rate {rate:.4g})")

        if loglog_residual <= self.dominance * linear_residual and degree >= self.min_degree:
            return DecayClass(DecayKind.POLYNOMIAL, degree)
        if linear_residual <= self.dominance * loglog_residual and rate > 0:
            return DecayClass(DecayKind.EXPONENTIAL, rate)
        return DecayClass(DecayKind.OTHER)


def decay_classify(measure: Measure) -> DecayClass:
    return DecayClassifier().classify(measure)
