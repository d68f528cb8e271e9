import numpy as np

from core.logger import logger
from ..config import DEFAULT_TOLERANCES
from ..interfaces import IStateGenerator
from ..lattice import evolve_fields, to_measure
from ..types import UnitaryCoin

_COMPONENT = "Membership"


def membership_check(coin: UnitaryCoin, gen: IStateGenerator, n_max: int, lo: int, hi: int,
                     tol: float = DEFAULT_TOLERANCES.membership) -> int:
    """
    Largest n <= n_max such that the measure of Psi_k equals the measure of Psi_0
    on [lo, hi] for every k <= n (0 when already k = 1 differs).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")

    reference = None
    for n, field in evolve_fields(coin, gen, n_max, lo, hi):
        measure = to_measure(field).values
        if reference is None:
            reference = measure
            continue
        deviation = float(np.max(np.abs(measure - reference)))
        if deviation > tol:
            site = lo + int(np.argmax(np.abs(measure - reference)))
            logger.debug(f"mu_{n} leaves mu_0 at x={site} by {deviation:.3e}", _COMPONENT)
            return n - 1
    return n_max
