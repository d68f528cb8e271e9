# qwalk/types.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class UnitaryCoin:
    """2x2 coin [[a, b], [c, d]] with cached determinant; build it with coin.make_coin"""
    a: complex
    b: complex
    c: complex
    d: complex
    det: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    def entries(self) -> Tuple[complex, complex, complex, complex]:
        return self.a, self.b, self.c, self.d


class CoinCase(Enum):
    FULL_SUPPORT = "FullSupport"   # abcd != 0
    A_ZERO = "AZero"               # a = 0 (anti-diagonal)
    B_ZERO = "BZero"               # b = 0 (diagonal)


@dataclass(frozen=True)
class CoinAngles:
    phi: float   # cos(phi) = |a|
    xi: float    # e^{i xi} = det, xi in [0, 2pi)


@dataclass(frozen=True, eq=False)
class CoinHalves:
    P: np.ndarray   # top row of U, moves left
    Q: np.ndarray   # bottom row of U, moves right


class GeneratorFamily(Enum):
    FULL_SUPPORT = "FullSupport"
    A_ZERO = "AZero"
    UNIFORM = "Uniform"
    CUSTOM = "Custom"


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """
    Amplitudes on the inclusive window [lo, hi]; values has one row per site
    and one column per chirality (2 for the two-state walk, N for N-state).
    """
    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"Empty window [{self.lo}, {self.hi}]")
        values = _frozen_array(self.values, np.complex128)
        if values.ndim != 2 or values.shape[0] != self.hi - self.lo + 1:
            raise ValueError(f"Expected {self.hi - self.lo + 1} site rows, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Amplitude field contains NaN or Inf")
        object.__setattr__(self, 'values', values)

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def components(self) -> int:
        return self.values.shape[1]

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    @property
    def psiL(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def psiR(self) -> np.ndarray:
        return self.values[:, 1]

    def at(self, x: int) -> np.ndarray:
        if not self.lo <= x <= self.hi:
            raise IndexError(f"Site {x} outside [{self.lo}, {self.hi}]")
        return self.values[x - self.lo]

    def restrict(self, lo: int, hi: int) -> 'AmplitudeField':
        if lo < self.lo or hi > self.hi:
            raise IndexError(f"[{lo}, {hi}] is not inside [{self.lo}, {self.hi}]")
        return AmplitudeField(lo, hi, self.values[lo - self.lo:hi - self.lo + 1])


@dataclass(frozen=True, eq=False)
class Measure:
    """Nonnegative, unnormalized per-site weights on [lo, hi]"""
    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"Empty window [{self.lo}, {self.hi}]")
        values = _frozen_array(self.values, np.float64)
        if values.shape != (self.hi - self.lo + 1,):
            raise ValueError(f"Expected {self.hi - self.lo + 1} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("Measure values must be finite and nonnegative")
        object.__setattr__(self, 'values', values)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def at(self, x: int) -> float:
        if not self.lo <= x <= self.hi:
            raise IndexError(f"Site {x} outside [{self.lo}, {self.hi}]")
        return float(self.values[x - self.lo])

    def restrict(self, lo: int, hi: int) -> 'Measure':
        if lo < self.lo or hi > self.hi:
            raise IndexError(f"[{lo}, {hi}] is not inside [{self.lo}, {self.hi}]")
        return Measure(lo, hi, self.values[lo - self.lo:hi - self.lo + 1])


@dataclass(frozen=True)
class EigenSolution:
    lam: complex
    gamma: complex
    A: complex
    B: complex
    coin: UnitaryCoin
    index: Optional[int] = None   # k in 1..4 when known


@dataclass
class ResidualReport:
    """Residuals of eigen-equations and algebraic identities with their pass thresholds"""
    max_eigen_residual: float = 0.0
    per_site: Dict[int, float] = field(default_factory=dict)
    identities: Dict[str, float] = field(default_factory=dict)
    thresholds: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if 'eigen_residual' in self.thresholds and self.max_eigen_residual >= self.thresholds['eigen_residual']:
            return False
        limit = self.thresholds.get('identity')
        if limit is None:
            return True
        return all(value < limit for value in self.identities.values())

    def merge(self, other: 'ResidualReport') -> 'ResidualReport':
        return ResidualReport(
            max_eigen_residual=max(self.max_eigen_residual, other.max_eigen_residual),
            per_site={**self.per_site, **other.per_site},
            identities={**self.identities, **other.identities},
            thresholds={**self.thresholds, **other.thresholds},
        )


class DecayKind(Enum):
    UNIFORM = "Uniform"
    POLYNOMIAL = "Polynomial"
    EXPONENTIAL = "Exponential"
    OTHER = "Other"


@dataclass(frozen=True)
class DecayClass:
    kind: DecayKind
    estimate: Optional[float] = None   # degree for Polynomial, rate for Exponential

    @property
    def tag(self) -> str:
        if self.estimate is None:
            return self.kind.value
        return f"{self.kind.value}({self.estimate:.4g})"


class Verdict(Enum):
    UNIFORM = "Uniform"
    NON_STATIONARY = "NonStationary"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Certificate:
    """Outcome of the b = 0 uniformity argument replayed on a window"""
    verdict: Verdict
    window: Tuple[int, int]
    level: Optional[int] = None
    witness: Optional[int] = None
    reason: Optional[str] = None
    origin: Optional[int] = None
    c1: Optional[float] = None
    c2: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    identities: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict.value,
            'window': list(self.window),
            'level': self.level,
            'witness': self.witness,
            'reason': self.reason,
            'origin': self.origin,
            'constants': {'c1': self.c1, 'c2': self.c2, 'A': self.A, 'B': self.B},
            'identities': dict(self.identities),
        }
