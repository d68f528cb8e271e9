"""
Classical random walk counterpart used for contrast.

A walker at x jumps to x-1 with probability p and to x+1 with q = 1-p, so
mu'(x) = p mu(x+1) + q mu(x-1). For this Markov chain mu_0 = mu_1 already
forces mu_0 = mu_n for every n, which fails for the quantum walk with b = 0.
"""
from typing import Callable

import numpy as np

from core.logger import logger
from .errors import InvalidSpec, WindowTooSmall
from .types import Measure

_COMPONENT = "Classical"


def _check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise InvalidSpec(f"Jump probability must lie in (0, 1), got {p}")
    return p


def classical_step(p: float, measure: Measure) -> Measure:
    """One transition; the window shrinks by one site per side"""
    p = _check_probability(p)
    if measure.hi - measure.lo < 2:
        raise WindowTooSmall(f"Window [{measure.lo}, {measure.hi}] is too small for a step")
    values = measure.values
    return Measure(measure.lo + 1, measure.hi - 1, p * values[2:] + (1.0 - p) * values[:-2])


def geometric_measure(p: float, lo: int, hi: int) -> Measure:
    """(q/p)^x, the non-uniform stationary measure of the biased walk"""
    p = _check_probability(p)
    x = np.arange(lo, hi + 1, dtype=np.float64)
    return Measure(lo, hi, np.power((1.0 - p) / p, x))


def classical_membership_level(p: float, rule: Callable[[int], float], n_max: int,
                               lo: int, hi: int, tol: float = 1e-10) -> int:
    """Largest n <= n_max with mu_k = mu_0 on [lo, hi] for every k <= n"""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    padded_lo, padded_hi = lo - n_max, hi + n_max
    current = Measure(padded_lo, padded_hi, [rule(x) for x in range(padded_lo, padded_hi + 1)])
    reference = current.restrict(lo, hi).values

    for n in range(1, n_max + 1):
        current = classical_step(p, current)
        deviation = float(np.max(np.abs(current.restrict(lo, hi).values - reference)))
        if deviation > tol:
            logger.debug(f"p={p:g}: level {n} deviates by {deviation:.3e}", _COMPONENT)
            return n - 1
    return n_max
