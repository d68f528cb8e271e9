"""
N-state walks: row-wise split of an N x N coin into jump components and the
uniform-measure stationarity check.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import qr

from core.logger import log_aware, logged, LogLevel
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NotUnitary, WindowTooSmall, ZeroState
from .lattice import UniformStateGenerator, sample_window
from .types import AmplitudeField


def jump_offsets(n: int) -> Tuple[int, ...]:
    """
    Jump of each component. N = 2M+1: -M..M including a self-loop at 0.
    N = 2M: -M..-1, 1..M (no self-loop).
    """
    if n < 2:
        raise ValueError(f"N-state walks need N >= 2, got {n}")
    m = n // 2
    if n % 2:
        return tuple(range(-m, m + 1))
    return tuple(list(range(-m, 0)) + list(range(1, m + 1)))


@dataclass(frozen=True, eq=False)
class NStateCoin:
    entries: np.ndarray
    offsets: Tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def reach(self) -> int:
        return max(abs(o) for o in self.offsets)


def random_unitary(n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Haar-random n x n unitary: QR of a complex Ginibre matrix with the phases
    of diag(R) moved into Q.
    """
    rng = rng or np.random.default_rng()
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def make_nstate_coin(entries: Sequence[Sequence[complex]],
                     tolerances: Tolerances = DEFAULT_TOLERANCES, strict: bool = False) -> NStateCoin:
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise NotUnitary(f"Coin must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NotUnitary("Coin entries must be finite")

    n = matrix.shape[0]
    deviation = float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(n))))
    limit = tolerances.validation(strict)
    if deviation > limit:
        raise NotUnitary(f"Coin deviates from unitarity by {deviation:.3e} (limit {limit:g})")

    matrix.setflags(write=False)
    return NStateCoin(matrix, jump_offsets(n))


def split_nstate(coin: NStateCoin) -> List[np.ndarray]:
    """U_k keeps row k of U and zeros elsewhere"""
    parts = []
    for k in range(coin.n):
        part = np.zeros_like(coin.entries)
        part[k, :] = coin.entries[k, :]
        parts.append(part)
    return parts


def nstate_step(coin: NStateCoin, field: AmplitudeField) -> AmplitudeField:
    """Psi'(x) = sum_k U_k Psi(x - offset_k); window shrinks by the max jump per side"""
    reach = coin.reach
    if field.components != coin.n:
        raise ValueError(f"Field has {field.components} components, coin has {coin.n}")
    if field.hi - field.lo < 2 * reach:
        raise WindowTooSmall(f"Window [{field.lo}, {field.hi}] cannot shrink by {reach} per side")

    psi = field.values
    width = field.width - 2 * reach
    out = np.empty((width, coin.n), dtype=np.complex128)
    for k, offset in enumerate(coin.offsets):
        start = reach - offset
        source = psi[start:start + width]
        acc = coin.entries[k, 0] * source[:, 0]
        for j in range(1, coin.n):
            acc = acc + coin.entries[k, j] * source[:, j]
        out[:, k] = acc
    return AmplitudeField(field.lo + reach, field.hi - reach, out)


def constant_field(phi: Sequence[complex], lo: int, hi: int) -> AmplitudeField:
    return sample_window(UniformStateGenerator(phi), lo, hi)


@dataclass(frozen=True)
class UniformCheckReport:
    norm_squared: float
    max_deviation: float            # max over n, x of |mu_n(x) - ||phi||^2|
    max_power_deviation: float      # max over n, x of |Psi_n(x) - U^n phi|
    steps: int
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.threshold and self.max_power_deviation < self.threshold


@log_aware("NState")
class UniformStationarityChecker:
    """Evolves a constant field and compares every measure with ||phi||^2"""

    def __init__(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.tolerances = tolerances

    @logged(LogLevel.DEBUG)
    def check(self, coin: NStateCoin, phi: Sequence[complex], n_max: int,
              lo: int = -40, hi: int = 40) -> UniformCheckReport:
        phi = np.array(phi, dtype=np.complex128)
        norm_squared = float(np.sum(np.abs(phi) ** 2))
        if norm_squared == 0.0:
            raise ZeroState("The constant state must have nonzero norm")

        reach = coin.reach
        field = constant_field(phi, lo - reach * n_max, hi + reach * n_max)
        power = phi.copy()
        max_deviation = 0.0
        max_power_deviation = 0.0

        for n in range(1, n_max + 1):
            field = nstate_step(coin, field)
            power = coin.entries @ power
            window = field.restrict(lo, hi).values
            measure = np.sum(window.real ** 2 + window.imag ** 2, axis=1)
            max_deviation = max(max_deviation, float(np.max(np.abs(measure - norm_squared))))
            max_power_deviation = max(max_power_deviation, float(np.max(np.abs(window - power))))

        report = UniformCheckReport(norm_squared, max_deviation, max_power_deviation,
                                    n_max, self.tolerances.uniform_check)
        self.debug(f"N={coin.n} steps={n_max} deviation={max_deviation:.3e} passed={report.passed}")
        return report


def uniform_stationary_check(coin: NStateCoin, phi: Sequence[complex], n_max: int,
                             lo: int = -40, hi: int = 40,
                             tolerances: Tolerances = DEFAULT_TOLERANCES) -> UniformCheckReport:
    return UniformStationarityChecker(tolerances).check(coin, phi, n_max, lo, hi)
