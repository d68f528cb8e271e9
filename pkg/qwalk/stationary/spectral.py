"""
Stationary family for coins with abcd != 0.

For each of the four eigenvalues lambda_k the recurrence satisfied by both
components has the double root gamma = (lambda + det conj(lambda)) / (2a),
and Psi^L(x) = (A + xB) gamma^x extends to an eigenvector of the walk whose
measure is quadratic in x.
"""
import cmath
import math
from typing import Tuple

import numpy as np

from core.event_broker import event_aware
from core.logger import log_aware, logged, LogLevel
from ..coin import classify, coin_angles
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import NotEigenvalue, WrongCase, ZeroParameters
from ..events import WalkEvents
from ..interfaces import IMeasureGenerator, IStateGenerator
from ..lattice import sample_window, to_measure
from ..types import CoinCase, EigenSolution, GeneratorFamily, Measure, UnitaryCoin


def require_full_support(coin: UnitaryCoin, tolerances: Tolerances) -> None:
    case = classify(coin, tolerances)
    if case is not CoinCase.FULL_SUPPORT:
        raise WrongCase(f"The quadratic family needs abcd != 0, coin is {case.value}")


def eigen_lambdas(coin: UnitaryCoin,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[complex, complex, complex, complex]:
    """(lambda_1, lambda_2, lambda_3, lambda_4) = (e^{i(phi+xi/2)}, e^{i(-phi+xi/2)}, -lambda_1, -lambda_2)"""
    angles = coin_angles(coin, tolerances)
    lam1 = cmath.exp(1j * (angles.phi + angles.xi / 2.0))
    lam2 = cmath.exp(1j * (-angles.phi + angles.xi / 2.0))
    return lam1, lam2, -lam1, -lam2


def gamma_raw(coin: UnitaryCoin, lam: complex) -> complex:
    """(lambda + det conj(lambda)) / (2a) without any eigenvalue check"""
    return (lam + coin.det * lam.conjugate()) / (2.0 * coin.a)


def gamma_of(coin: UnitaryCoin, lam: complex, tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex:
    require_full_support(coin, tolerances)
    gamma = gamma_raw(coin, complex(lam))
    if abs(abs(gamma) - 1.0) > tolerances.not_eigenvalue_gamma:
        raise NotEigenvalue(f"lambda = {lam} gives |gamma| = {abs(gamma):.12g}, not a double-root eigenvalue")
    return gamma


def match_eigenvalue(coin: UnitaryCoin, lam: complex,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[int, complex]:
    """Index k (1-based) and exact lambda_k closest to lam; raises NotEigenvalue beyond tolerance"""
    lambdas = eigen_lambdas(coin, tolerances)
    distances = [abs(complex(lam) - candidate) for candidate in lambdas]
    k = int(np.argmin(distances))
    if distances[k] > tolerances.eigen_membership:
        raise NotEigenvalue(f"lambda = {lam} is {distances[k]:.3e} away from the nearest eigenvalue")
    return k + 1, lambdas[k]


def solve(coin: UnitaryCoin, k: int, A: complex, B: complex,
          tolerances: Tolerances = DEFAULT_TOLERANCES) -> EigenSolution:
    """Bundle lambda_k, its gamma and the free parameters"""
    if k not in (1, 2, 3, 4):
        raise ValueError(f"Eigenvalue index must be 1..4, got {k}")
    lam = eigen_lambdas(coin, tolerances)[k - 1]
    return _solution(coin, lam, A, B, tolerances, index=k)


def _solution(coin: UnitaryCoin, lam: complex, A: complex, B: complex,
              tolerances: Tolerances, index: int = None) -> EigenSolution:
    A, B = complex(A), complex(B)
    if A == 0 and B == 0:
        raise ZeroParameters("At least one of A, B must be nonzero")
    if index is None:
        index, lam = match_eigenvalue(coin, lam, tolerances)
    gamma = gamma_of(coin, lam, tolerances)
    return EigenSolution(lam=lam, gamma=gamma, A=A, B=B, coin=coin, index=index)


class FullSupportStateGenerator(IStateGenerator):
    """
    Psi^L(x) = (A + xB) gamma^x
    Psi^R(x) = {(A + xB)(lambda - det conj(lambda))/2 - lambda B} gamma^{x-1} / b
    """

    def __init__(self, solution: EigenSolution):
        self.solution = solution
        coin = solution.coin
        self._half_diff = (solution.lam - coin.det * solution.lam.conjugate()) / 2.0

    @property
    def family(self) -> GeneratorFamily:
        return GeneratorFamily.FULL_SUPPORT

    def amplitude(self, x: int) -> np.ndarray:
        return self.sample_values(x, x)[0]

    def sample_values(self, lo: int, hi: int) -> np.ndarray:
        s = self.solution
        x = np.arange(lo, hi + 1)
        linear = s.A + x * s.B
        powers = np.power(np.complex128(s.gamma), x - 1)
        left = linear * (powers * s.gamma)
        right = (linear * self._half_diff - s.lam * s.B) * powers / s.coin.b
        return np.column_stack((left, right))


@logged(LogLevel.DEBUG, log_args=True)
def build_stationary_full(coin: UnitaryCoin, lam: complex, A: complex, B: complex,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> FullSupportStateGenerator:
    """Eigenvector generator for lambda (snapped to the exact lambda_k it matches)"""
    require_full_support(coin, tolerances)
    return FullSupportStateGenerator(_solution(coin, lam, A, B, tolerances))


@event_aware()
@log_aware("Spectral")
class QuadraticMeasureGenerator(IMeasureGenerator):
    """
    mu(x) = 2|A + xB|^2 - 2x|B|^2 + (|B|^2 - Re(A conj(B)(1 - det conj(lambda)^2))) / |b|^2

    The printed formula is evaluated alongside the direct |Psi|^2 of the
    eigenvector; the direct value is returned and a disagreement is published
    as WalkEvents.CLOSED_FORM_MISMATCH.
    """

    def __init__(self, solution: EigenSolution, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.solution = solution
        self.tolerances = tolerances
        self._state = FullSupportStateGenerator(solution)

    def printed(self, lo: int, hi: int) -> np.ndarray:
        s = self.solution
        coin = s.coin
        x = np.arange(lo, hi + 1)
        linear = s.A + x * s.B
        b_sq = abs(s.B) ** 2
        twist = 1.0 - coin.det * s.lam.conjugate() ** 2
        constant = (b_sq - (s.A * s.B.conjugate() * twist).real) / abs(coin.b) ** 2
        return 2.0 * np.abs(linear) ** 2 - 2.0 * x * b_sq + constant

    def direct(self, lo: int, hi: int) -> np.ndarray:
        return to_measure(sample_window(self._state, lo, hi)).values

    def value(self, x: int) -> float:
        return float(self.sample(x, x).values[0])

    def sample(self, lo: int, hi: int) -> Measure:
        direct = self.direct(lo, hi)
        printed = self.printed(lo, hi)
        gap = np.abs(printed - direct)
        allowed = self.tolerances.closed_form * np.maximum(1.0, np.abs(direct))
        if np.any(gap > allowed):
            worst = int(np.argmax(gap / allowed))
            finding = {
                'site': lo + worst,
                'printed': float(printed[worst]),
                'direct': float(direct[worst]),
                'lambda_index': self.solution.index,
                'max_gap': float(np.max(gap)),
            }
            self.warning(f"Closed form disagrees with |Psi|^2 at x={finding['site']}: "
                         f"{finding['printed']!r} vs {finding['direct']!r}")
            self.emit(WalkEvents.CLOSED_FORM_MISMATCH, finding)
        return Measure(lo, hi, direct)


def closed_form_measure(coin: UnitaryCoin, lam: complex, A: complex, B: complex,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> QuadraticMeasureGenerator:
    require_full_support(coin, tolerances)
    return QuadraticMeasureGenerator(_solution(coin, lam, A, B, tolerances), tolerances)


class UThetaStateGenerator(IStateGenerator):
    """
    Explicit eigenvectors for U(theta) = [[cos t, sin t], [sin t, -cos t]], 0 < t < pi/2,
    where gamma_1 = gamma_2 = i and gamma_3 = gamma_4 = -i.
    """

    # (base of the power, sign of (A - B) + xB, sign of the i cot(t) B term)
    _FORMS = {
        1: (1j, -1.0, -1.0),
        2: (1j, 1.0, -1.0),
        3: (-1j, 1.0, 1.0),
        4: (-1j, -1.0, 1.0),
    }

    def __init__(self, theta: float, k: int, A: complex, B: complex):
        if not 0.0 < theta < math.pi / 2.0:
            raise WrongCase(f"theta must lie in (0, pi/2), got {theta}")
        if k not in self._FORMS:
            raise ValueError(f"Eigenvalue index must be 1..4, got {k}")
        A, B = complex(A), complex(B)
        if A == 0 and B == 0:
            raise ZeroParameters("At least one of A, B must be nonzero")
        self.theta, self.k, self.A, self.B = theta, k, A, B

    @property
    def family(self) -> GeneratorFamily:
        return GeneratorFamily.FULL_SUPPORT

    def amplitude(self, x: int) -> np.ndarray:
        return self.sample_values(x, x)[0]

    def sample_values(self, lo: int, hi: int) -> np.ndarray:
        base, linear_sign, cot_sign = self._FORMS[self.k]
        x = np.arange(lo, hi + 1)
        cot = math.cos(self.theta) / math.sin(self.theta)
        powers = np.power(np.complex128(base), x - 1)
        left = (self.A + x * self.B) * (powers * base)
        brace = linear_sign * ((self.A - self.B) + x * self.B) + cot_sign * 1j * cot * self.B
        return np.column_stack((left, brace * powers))


def u_theta_state(theta: float, k: int, A: complex, B: complex) -> UThetaStateGenerator:
    return UThetaStateGenerator(theta, k, A, B)


def hadamard_real_measure(A: float, B: float, lo: int, hi: int) -> Measure:
    """Hadamard walk with real A, B: 2{B^2 x^2 + B(2A - B)x + A^2 - AB + B^2}"""
    x = np.arange(lo, hi + 1, dtype=np.float64)
    values = 2.0 * (B * B * x * x + B * (2.0 * A - B) * x + A * A - A * B + B * B)
    return Measure(lo, hi, values)
