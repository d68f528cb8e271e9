"""
2x2 coins: construction, validation, case classification and the P/Q split
"""
import cmath
import math
from typing import Dict, Optional

import numpy as np

from core.logger import logger, logged, LogLevel
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import AmbiguousCase, NotUnitary, WrongCase
from .types import CoinAngles, CoinCase, CoinHalves, UnitaryCoin

_COMPONENT = "Coin"


def unitarity_residuals(a: complex, b: complex, c: complex, d: complex) -> Dict[str, float]:
    """Deviation of each unitarity invariant"""
    det = a * d - b * c
    return {
        'row_top': abs(abs(a) ** 2 + abs(b) ** 2 - 1.0),
        'row_bottom': abs(abs(c) ** 2 + abs(d) ** 2 - 1.0),
        'orthogonality': abs(a * np.conj(c) + b * np.conj(d)),
        'det_modulus': abs(abs(det) - 1.0),
    }


def nearest_unitary(matrix: np.ndarray) -> np.ndarray:
    """
    Unitary polar factor of an invertible 2x2 matrix, in closed form:
    (M + e^{i arg det M} adj(M)^H) / sqrt(||M||_F^2 + 2|det M|)
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (2, 2):
        raise ValueError(f"Expected a 2x2 matrix, got shape {m.shape}")

    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) == 0.0:
        raise NotUnitary("Cannot repair a singular matrix")

    adjugate = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    phase = det / abs(det)
    scale = math.sqrt(float(np.sum(np.abs(m) ** 2)) + 2.0 * abs(det))
    return (m + phase * adjugate.conj().T) / scale


@logged(LogLevel.DEBUG, log_args=True)
def make_coin(a: complex, b: complex, c: complex, d: complex,
              strict: bool = False, repair: bool = False,
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> UnitaryCoin:
    """Validated coin [[a, b], [c, d]]; raises NotUnitary"""
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)

    if repair:
        fixed = nearest_unitary(np.array([[a, b], [c, d]]))
        a, b, c, d = (complex(v) for v in fixed.ravel())
        logger.info("Coin re-orthonormalized by polar projection", _COMPONENT)

    entries = (a, b, c, d)
    if not all(cmath.isfinite(v) for v in entries):
        raise NotUnitary("Coin entries must be finite")

    limit = tolerances.validation(strict)
    residuals = unitarity_residuals(a, b, c, d)
    failing = {name: value for name, value in residuals.items() if value > limit}
    if failing:
        details = ', '.join(f'{name}={value:.3e}' for name, value in failing.items())
        raise NotUnitary(f"Coin is not unitary within {limit:g}: {details}")

    return UnitaryCoin(a, b, c, d, a * d - b * c)


def classify(coin: UnitaryCoin, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CoinCase:
    """FullSupport, AZero or BZero; raises AmbiguousCase for borderline coins"""
    eps = tolerances.case_zero
    band = tolerances.ambiguous_band
    moduli = {name: abs(value) for name, value in zip('abcd', coin.entries())}
    zeros = {name for name, modulus in moduli.items() if modulus < eps}

    # unitarity pairs |a| with |d| and |b| with |c|
    partners = {'a': 'd', 'd': 'a', 'b': 'c', 'c': 'b'}
    for name in zeros:
        partner = partners[name]
        if partner not in zeros and moduli[partner] < band:
            raise AmbiguousCase(
                f"|{name}| = {moduli[name]:.3e} is zero but |{partner}| = {moduli[partner]:.3e} "
                f"is not; perturb the coin away from the band ({eps:g}, {band:g})")

    if not zeros:
        return CoinCase.FULL_SUPPORT
    if zeros == {'a', 'd'}:
        return CoinCase.A_ZERO
    if zeros == {'b', 'c'}:
        return CoinCase.B_ZERO
    raise AmbiguousCase(f"Zero pattern {sorted(zeros)} matches no case")


def decompose(coin: UnitaryCoin) -> CoinHalves:
    """P keeps the top row (left move), Q the bottom row (right move)"""
    P = np.array([[coin.a, coin.b], [0, 0]], dtype=np.complex128)
    Q = np.array([[0, 0], [coin.c, coin.d]], dtype=np.complex128)
    return CoinHalves(P, Q)


def principal_xi(det: complex) -> float:
    """arg(det) in [0, 2pi)"""
    xi = cmath.phase(det)
    if xi < 0:
        xi += 2.0 * math.pi
    return xi


def coin_angles(coin: UnitaryCoin, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CoinAngles:
    case = classify(coin, tolerances)
    if case is not CoinCase.FULL_SUPPORT:
        raise WrongCase(f"Angles are defined for FullSupport coins, got {case.value}")
    phi = math.acos(min(1.0, abs(coin.a)))
    return CoinAngles(phi=phi, xi=principal_xi(coin.det))


def hadamard() -> UnitaryCoin:
    s = 1.0 / math.sqrt(2.0)
    return make_coin(s, s, s, -s)


def identity() -> UnitaryCoin:
    return make_coin(1, 0, 0, 1)


def u_theta(theta: float) -> UnitaryCoin:
    """[[cos t, sin t], [sin t, -cos t]]; t = pi/4 is the Hadamard coin"""
    c, s = math.cos(theta), math.sin(theta)
    return make_coin(c, s, s, -c)


def h_sigma(sigma: float) -> UnitaryCoin:
    """(1/sqrt 2) [[1, e^{i s}], [e^{-i s}, -1]]"""
    r = 1.0 / math.sqrt(2.0)
    return make_coin(r, r * cmath.exp(1j * sigma), r * cmath.exp(-1j * sigma), -r)


def azero_coin(eta: float, delta: complex) -> UnitaryCoin:
    """[[0, e^{i eta}], [-delta e^{-i eta}, 0]] with det = delta"""
    return make_coin(0, cmath.exp(1j * eta), -delta * cmath.exp(-1j * eta), 0)


def bzero_coin(eta: float, delta: complex) -> UnitaryCoin:
    """diag(e^{i eta}, delta e^{-i eta}) with det = delta"""
    return make_coin(cmath.exp(1j * eta), 0, 0, delta * cmath.exp(-1j * eta))


def random_coin(rng: Optional[np.random.Generator] = None) -> UnitaryCoin:
    """Haar-random 2x2 coin"""
    from .nstate import random_unitary

    u = random_unitary(2, rng)
    return make_coin(u[0, 0], u[0, 1], u[1, 0], u[1, 1])


def random_full_support_coin(rng: Optional[np.random.Generator] = None,
                             min_modulus: float = 1e-3) -> UnitaryCoin:
    """Haar-random coin resampled until every entry has modulus >= min_modulus"""
    rng = rng or np.random.default_rng()
    while True:
        coin = random_coin(rng)
        if min(abs(v) for v in coin.entries()) >= min_modulus:
            return coin
