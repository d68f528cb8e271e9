"""
Diagonal coins (b = 0). The walk only shifts: Psi^L_n(x) = e^{i eta n} Psi^L_0(x+n) and
Psi^R_n(x) = det^n e^{-i eta n} Psi^R_0(x-n), so mu_n(x) = a_{x+n} + b_{x-n} with
a_x = |Psi^L_0(x)|^2 and b_x = |Psi^R_0(x)|^2.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from core.event_broker import event_aware
from core.logger import log_aware, logged, LogLevel
from ..coin import bzero_coin
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import InvalidSpec, WindowTooSmall
from ..events import WalkEvents
from ..lattice import FunctionStateGenerator
from ..types import Certificate, Measure, UnitaryCoin, Verdict

SequenceRule = Callable[[int], float]


@dataclass(frozen=True, eq=False)
class DiagonalWalkState:
    """Squared moduli a_x, b_x of an initial state on [lo, hi]"""
    eta: float
    delta: complex
    lo: int
    hi: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.hi < self.lo:
            raise InvalidSpec(f"Empty window [{self.lo}, {self.hi}]")
        if abs(abs(complex(self.delta)) - 1.0) > DEFAULT_TOLERANCES.unitarity:
            raise InvalidSpec(f"|delta| must be 1, got {abs(complex(self.delta))}")
        width = self.hi - self.lo + 1
        for name in ('a', 'b'):
            values = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if values.shape != (width,):
                raise InvalidSpec(f"Sequence {name} needs {width} values, got shape {values.shape}")
            if not np.all(np.isfinite(values)) or np.any(values < 0):
                raise InvalidSpec(f"Sequence {name} must be finite and nonnegative")
            values.setflags(write=False)
            object.__setattr__(self, name, values)
        object.__setattr__(self, 'delta', complex(self.delta))

    @classmethod
    def from_maps(cls, eta: float, delta: complex,
                  a: Mapping[int, float], b: Mapping[int, float]) -> 'DiagonalWalkState':
        """Both maps must cover the same contiguous window"""
        a = {int(k): float(v) for k, v in a.items()}
        b = {int(k): float(v) for k, v in b.items()}
        if not a or set(a) != set(b):
            raise InvalidSpec("Sequences a and b must be defined on the same non-empty set of sites")
        lo, hi = min(a), max(a)
        if len(a) != hi - lo + 1:
            raise InvalidSpec(f"Sites must form a contiguous window, [{lo}, {hi}] has gaps")
        sites = range(lo, hi + 1)
        return cls(eta, delta, lo, hi, [a[x] for x in sites], [b[x] for x in sites])

    @classmethod
    def from_rules(cls, a_rule: SequenceRule, b_rule: SequenceRule, lo: int, hi: int,
                   eta: float = 0.0, delta: complex = 1.0) -> 'DiagonalWalkState':
        sites = range(lo, hi + 1)
        return cls(eta, delta, lo, hi, [a_rule(x) for x in sites], [b_rule(x) for x in sites])

    def a_at(self, x: int) -> float:
        return float(self.a[self._index(x)])

    def b_at(self, x: int) -> float:
        return float(self.b[self._index(x)])

    def _index(self, x: int) -> int:
        if not self.lo <= x <= self.hi:
            raise IndexError(f"Site {x} outside [{self.lo}, {self.hi}]")
        return x - self.lo

    def initial_measure(self) -> Measure:
        return Measure(self.lo, self.hi, self.a + self.b)

    def coin(self) -> UnitaryCoin:
        return diagonal_coin(self.eta, self.delta)


def diagonal_coin(eta: float = 0.0, delta: complex = 1.0) -> UnitaryCoin:
    return bzero_coin(eta, delta)


def diag_evolve_measure(state: DiagonalWalkState, n: int) -> Measure:
    """mu_n(x) = a_{x+n} + b_{x-n} on [lo+n, hi-n]; the phases never enter"""
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}")
    if state.hi - state.lo < 2 * n:
        raise WindowTooSmall(f"Window [{state.lo}, {state.hi}] has no sites after {n} shifts")
    width = state.hi - state.lo + 1 - 2 * n
    return Measure(state.lo + n, state.hi - n, state.a[2 * n:2 * n + width] + state.b[:width])


def _first_negative_site(origin: int, base: float, slope: float) -> int:
    """Site nearest origin where base + slope*k (k counts pairs of sites) drops below zero"""
    direction = -1 if slope > 0 else 1
    pairs = math.floor(max(base, 0.0) / abs(slope)) + 1
    return origin + 2 * direction * pairs


@event_aware()
@log_aware("Certificate")
class UniformityCertifier:
    """
    Replays the b = 0 uniformity argument on a finite window.

    Every level n <= max_n is compared on its own interior [lo+n, hi-n]. When
    all hold, the derivation is re-run on W = [lo+max_n, hi-max_n]:
    a_{x+2} - a_x = b_{x+1} - b_{x-1}, the parity offsets c1/c2, the period-2
    first differences, the linear forms in A + B, the forced A + B = 0, the
    period-2 sequences and finally mu_0(o) = mu_0(o+1).
    """

    def __init__(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.tolerances = tolerances

    @logged(LogLevel.DEBUG)
    def certify(self, state: DiagonalWalkState, max_n: int) -> Certificate:
        if max_n < 2:
            raise ValueError(f"max_n must be at least 2, got {max_n}")
        width = state.hi - state.lo + 1
        if width < 2 * max_n + 5:
            raise WindowTooSmall(f"Window of {width} sites is too small for max_n={max_n} "
                                 f"(needs {2 * max_n + 5})")

        window = (state.lo + max_n, state.hi - max_n)
        mu0 = state.a + state.b
        limit = self.tolerances.certificate * max(1.0, float(np.max(mu0)))

        for n in range(1, max_n + 1):
            evolved = diag_evolve_measure(state, n)
            reference = mu0[n:width - n]
            deviation = np.abs(evolved.values - reference)
            if np.any(deviation > limit):
                # argmax returns the first maximum, i.e. the smallest site
                witness = evolved.lo + int(np.argmax(deviation))
                certificate = Certificate(Verdict.NON_STATIONARY, window, level=n, witness=witness,
                                          reason=f"mu_{n}({witness}) differs from mu_0 by "
                                                 f"{float(np.max(deviation)):.6g}")
                return self._issue(certificate)

        return self._issue(self._replay_chain(state, window, limit))

    def _replay_chain(self, state: DiagonalWalkState, window: Tuple[int, int], limit: float) -> Certificate:
        w_lo, w_hi = window
        a, b = state.a_at, state.b_at
        origin = self._origin(w_lo, w_hi)

        c1 = a(origin) - b(origin - 1)
        c2 = a(origin + 1) - b(origin)
        A = a(origin + 1) - a(origin)
        B = a(origin + 2) - a(origin + 1)
        drift = A + B
        even = lambda x: (x - origin) % 2 == 0

        identities: Dict[str, float] = {}
        identities['difference'] = max(
            abs(a(x + 2) - a(x) - (b(x + 1) - b(x - 1))) for x in range(w_lo + 1, w_hi - 1))
        identities['parity_offsets'] = max(
            abs(a(x) - b(x - 1) - (c1 if even(x) else c2)) for x in range(w_lo + 1, w_hi + 1))
        identities['period_differences'] = max(
            abs((a(x + 3) - a(x + 2)) - (a(x + 1) - a(x))) for x in range(w_lo, w_hi - 2))
        identities['linear'] = max(
            abs(a(x) - (drift * ((x - origin) // 2) + a(origin) + (0.0 if even(x) else A)))
            for x in range(w_lo, w_hi + 1))
        identities['drift'] = abs(drift)

        certificate = Certificate(Verdict.UNIFORM, window, origin=origin,
                                  c1=c1, c2=c2, A=A, B=B, identities=identities)

        if abs(drift) > limit:
            # a stays nonnegative only on a finite stretch; the window cannot see the violation
            site = min((_first_negative_site(origin, a(origin), drift),
                        _first_negative_site(origin + 1, a(origin + 1), drift)),
                       key=lambda s: (abs(s - origin), s))
            certificate.verdict = Verdict.INCONCLUSIVE
            certificate.reason = (f"A + B = {drift:.6g} satisfies every window constraint; "
                                  f"the linear extension makes a negative at x = {site}")
            return certificate

        identities['period_a'] = max(
            abs(a(x) - (a(origin) if even(x) else a(origin + 1))) for x in range(w_lo, w_hi + 1))
        identities['period_b'] = max(
            abs(b(x) - (b(origin) if even(x) else b(origin + 1))) for x in range(w_lo, w_hi + 1))
        identities['collapse'] = abs((a(origin) + b(origin)) - (a(origin + 1) + b(origin + 1)))

        failing = {name: value for name, value in identities.items() if value > limit}
        if failing:
            name = max(failing, key=failing.get)
            certificate.verdict = Verdict.INCONCLUSIVE
            certificate.reason = f"identity '{name}' off by {failing[name]:.6g} after all levels passed"
        return certificate

    @staticmethod
    def _origin(w_lo: int, w_hi: int) -> int:
        """0 when o-1 and o+2 fit in the window, else the first even site that does"""
        if w_lo <= -1 and 2 <= w_hi:
            return 0
        origin = w_lo + 1 if (w_lo + 1) % 2 == 0 else w_lo + 2
        if origin + 2 > w_hi:
            raise WindowTooSmall(f"No origin fits in [{w_lo}, {w_hi}]")
        return origin

    def _issue(self, certificate: Certificate) -> Certificate:
        if certificate.verdict is Verdict.UNIFORM:
            self.info(f"Uniform on [{certificate.window[0]}, {certificate.window[1]}]")
        else:
            self.info(f"{certificate.verdict.value}: {certificate.reason}")
        self.emit(WalkEvents.CERTIFICATE_ISSUED, certificate)
        return certificate


def uniformity_certificate(state: DiagonalWalkState, max_n: int,
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> Certificate:
    return UniformityCertifier(tolerances).certify(state, max_n)


def unbounded_a(x: int) -> float:
    if x >= 1:
        return 2.0 * x
    if x == 0:
        return 1.0
    return -2.0 * x + 1.0


def unbounded_b(x: int) -> float:
    if x >= 1:
        return 2.0 * x + 3.0
    if x == 0:
        return 3.0
    return -2.0 * x


def bounded_a(x: int) -> float:
    # a_{2k} = a_{2k+1} = 1/2 + ... + 1/2^{k+1} for k >= 0; the negative side mirrors with minus signs
    if x >= 0:
        return 1.0 - math.ldexp(1.0, -(x // 2 + 1))
    return math.ldexp(1.0, -((-x + 1) // 2 + 1))


def bounded_b(x: int) -> float:
    if x >= -1:
        return 1.0 - math.ldexp(1.0, -((x - 1) // 2 + 2))
    return math.ldexp(1.0, -((-x) // 2 + 1))


COUNTEREXAMPLES: Dict[str, Tuple[SequenceRule, SequenceRule]] = {
    'unbounded': (unbounded_a, unbounded_b),
    'bounded': (bounded_a, bounded_b),
}


def counterexample_unbounded(lo: int, hi: int, eta: float = 0.0, delta: complex = 1.0) -> DiagonalWalkState:
    """mu_0 = mu_1 = 4x+3 (x >= 1), 4 (x = 0), -4x+1 (x <= -1), but mu_2(0) = 8"""
    return DiagonalWalkState.from_rules(unbounded_a, unbounded_b, lo, hi, eta, delta)


def counterexample_bounded(lo: int, hi: int, eta: float = 0.0, delta: complex = 1.0) -> DiagonalWalkState:
    """Strictly increasing mu_0 between 0 and 2 with mu_0 = mu_1 != mu_2; dyadic values, exact for |x| < 100"""
    return DiagonalWalkState.from_rules(bounded_a, bounded_b, lo, hi, eta, delta)


def lift_to_generator(a_rule: SequenceRule, b_rule: SequenceRule,
                      phase: Optional[Callable[[int], Tuple[complex, complex]]] = None) -> FunctionStateGenerator:
    """Amplitudes (sqrt a_x, sqrt b_x), optionally with per-site phases, for full walk evolution"""
    def rule(x: int) -> Tuple[complex, complex]:
        left, right = math.sqrt(a_rule(x)), math.sqrt(b_rule(x))
        if phase is None:
            return complex(left), complex(right)
        phase_left, phase_right = phase(x)
        return left * cmath.exp(1j * phase_left), right * cmath.exp(1j * phase_right)

    return FunctionStateGenerator(rule)
