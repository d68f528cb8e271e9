"""
Amplitude fields on integer windows and light-cone exact evolution.

One step maps Psi(x) to P Psi(x+1) + Q Psi(x-1). A site of the output only
reads its two neighbours, so a step on [lo, hi] yields exact values on
[lo+1, hi-1] and nothing outside is ever guessed.
"""
from typing import Callable, Sequence

import numpy as np

from core.logger import logged, LogLevel
from .errors import WindowTooSmall
from .interfaces import IStateGenerator
from .types import AmplitudeField, GeneratorFamily, Measure, UnitaryCoin


class UniformStateGenerator(IStateGenerator):
    """The same vector phi at every site"""

    def __init__(self, phi: Sequence[complex]):
        self.phi = np.array(phi, dtype=np.complex128)
        self.phi.setflags(write=False)

    @property
    def family(self) -> GeneratorFamily:
        return GeneratorFamily.UNIFORM

    @property
    def components(self) -> int:
        return self.phi.shape[0]

    def amplitude(self, x: int) -> np.ndarray:
        return self.phi.copy()

    def sample_values(self, lo: int, hi: int) -> np.ndarray:
        return np.tile(self.phi, (hi - lo + 1, 1))


class FunctionStateGenerator(IStateGenerator):
    """Wraps any deterministic rule site -> amplitudes"""

    def __init__(self, rule: Callable[[int], Sequence[complex]],
                 family: GeneratorFamily = GeneratorFamily.CUSTOM, components: int = 2):
        self._rule = rule
        self._family = family
        self._components = components

    @property
    def family(self) -> GeneratorFamily:
        return self._family

    @property
    def components(self) -> int:
        return self._components

    def amplitude(self, x: int) -> np.ndarray:
        return np.array(self._rule(x), dtype=np.complex128)


def delta_generator(site: int = 0, psi: Sequence[complex] = (1, 0)) -> FunctionStateGenerator:
    """psi at one site, zero elsewhere"""
    psi = tuple(complex(v) for v in psi)
    zero = tuple(0j for _ in psi)
    return FunctionStateGenerator(lambda x: psi if x == site else zero, components=len(psi))


def sample_window(gen: IStateGenerator, lo: int, hi: int) -> AmplitudeField:
    if hi < lo:
        raise ValueError(f"Empty window [{lo}, {hi}]")
    return AmplitudeField(lo, hi, gen.sample_values(lo, hi))


def step(coin: UnitaryCoin, field: AmplitudeField) -> AmplitudeField:
    """One application of the walk; the window shrinks by one site per side"""
    if field.hi - field.lo < 2:
        raise WindowTooSmall(f"Window [{field.lo}, {field.hi}] is too small for a step")

    psi = field.values
    # Psi^L(x) reads x+1, Psi^R(x) reads x-1
    left = coin.a * psi[2:, 0] + coin.b * psi[2:, 1]
    right = coin.c * psi[:-2, 0] + coin.d * psi[:-2, 1]
    return AmplitudeField(field.lo + 1, field.hi - 1, np.column_stack((left, right)))


@logged(LogLevel.DEBUG, log_args=True)
def evolve(coin: UnitaryCoin, gen: IStateGenerator, n: int, lo: int, hi: int) -> AmplitudeField:
    """Exact Psi_n on [lo, hi]: sample [lo-n, hi+n], then step n times"""
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}")
    field = sample_window(gen, lo - n, hi + n)
    for _ in range(n):
        field = step(coin, field)
    return field


def evolve_fields(coin: UnitaryCoin, gen: IStateGenerator, n_max: int, lo: int, hi: int):
    """Yield (n, exact field on [lo, hi]) for n = 0..n_max from a single padded sample"""
    field = sample_window(gen, lo - n_max, hi + n_max)
    for n in range(n_max + 1):
        if n > 0:
            field = step(coin, field)
        yield n, field.restrict(lo, hi)


def to_measure(field: AmplitudeField) -> Measure:
    """phi(Psi)(x) = sum over chiralities of |Psi^j(x)|^2"""
    values = field.values
    weights = np.sum(values.real ** 2 + values.imag ** 2, axis=1)
    return Measure(field.lo, field.hi, weights)
