"""
Stationary family for anti-diagonal coins U = [[0, e^{i eta}], [-det e^{-i eta}, 0]].

Even sites carry free values (alpha_{2x}, beta_{2x}); odd sites are fixed by
Psi^L(2x-1) = (e^{i eta}/lambda) beta_{2x} and Psi^R(2x+1) = lambda e^{-i eta} alpha_{2x}.
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np

from core.event_broker import event_aware
from core.logger import log_aware
from ..coin import azero_coin, principal_xi
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import InvalidSpec, MissingSequenceValue, ZeroProduct
from ..events import WalkEvents
from ..interfaces import IMeasureGenerator, IStateGenerator
from ..types import GeneratorFamily, Measure, UnitaryCoin


@dataclass(frozen=True)
class AZeroSpec:
    """
    Parameters of an a = 0 stationary state. alpha/beta map even sites to
    values; sites absent from a map take `default` (None makes them required).
    """
    eta: float
    delta: complex = 1.0
    sign: int = 1
    alpha: Mapping[int, complex] = field(default_factory=dict)
    beta: Mapping[int, complex] = field(default_factory=dict)
    default: Optional[complex] = 1.0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidSpec(f"sign must be +1 or -1, got {self.sign}")
        if abs(abs(complex(self.delta)) - 1.0) > DEFAULT_TOLERANCES.unitarity:
            raise InvalidSpec(f"|delta| must be 1, got {abs(complex(self.delta))}")
        for name in ('alpha', 'beta'):
            values: Dict[int, complex] = {}
            for site, value in getattr(self, name).items():
                site = int(site)
                if site % 2:
                    raise InvalidSpec(f"{name} is defined on even sites only, got site {site}")
                values[site] = complex(value)
            object.__setattr__(self, name, values)
        object.__setattr__(self, 'delta', complex(self.delta))
        if self.default is not None:
            object.__setattr__(self, 'default', complex(self.default))

    def coin(self) -> UnitaryCoin:
        return azero_coin(self.eta, self.delta)

    def alpha_at(self, site: int) -> complex:
        return self._lookup(self.alpha, 'alpha', site)

    def beta_at(self, site: int) -> complex:
        return self._lookup(self.beta, 'beta', site)

    def _lookup(self, values: Mapping[int, complex], name: str, site: int) -> complex:
        if site in values:
            return values[site]
        if self.default is None:
            raise MissingSequenceValue(f"{name}_{site} is required but not given")
        return self.default

    def max_modulus(self) -> float:
        moduli = [abs(v) for v in list(self.alpha.values()) + list(self.beta.values())]
        if self.default is not None:
            moduli.append(abs(self.default))
        return max(moduli) if moduli else 0.0


def azero_lambda(spec: AZeroSpec) -> complex:
    """lambda_pm = pm i sqrt(det), principal root with arg(det) in [0, 2pi)"""
    xi = principal_xi(spec.delta)
    return spec.sign * 1j * cmath.exp(0.5j * xi)


def _check_products(spec: AZeroSpec, floor: float) -> None:
    sites = set(spec.alpha) | set(spec.beta)
    for site in sorted(sites):
        try:
            product = spec.alpha_at(site) * spec.beta_at(site)
        except MissingSequenceValue:
            continue
        if abs(product) < floor:
            raise ZeroProduct(f"alpha_{site} * beta_{site} = 0")
    if spec.default is not None and abs(spec.default) ** 2 < floor:
        raise ZeroProduct("default value makes alpha * beta vanish")


class AZeroStateGenerator(IStateGenerator):

    def __init__(self, spec: AZeroSpec, floor: float = DEFAULT_TOLERANCES.amplitude_positivity):
        self.spec = spec
        self.lam = azero_lambda(spec)
        self._floor = floor
        self._left_factor = cmath.exp(1j * spec.eta) / self.lam
        self._right_factor = self.lam * cmath.exp(-1j * spec.eta)

    @property
    def family(self) -> GeneratorFamily:
        return GeneratorFamily.A_ZERO

    def amplitude(self, x: int) -> np.ndarray:
        spec = self.spec
        if x % 2 == 0:
            alpha, beta = spec.alpha_at(x), spec.beta_at(x)
            if abs(alpha * beta) < self._floor:
                raise ZeroProduct(f"alpha_{x} * beta_{x} = 0")
            return np.array([alpha, beta], dtype=np.complex128)
        # odd site x = 2k + 1 reads beta_{2k+2} and alpha_{2k}
        return np.array([self._left_factor * spec.beta_at(x + 1),
                         self._right_factor * spec.alpha_at(x - 1)], dtype=np.complex128)


@event_aware()
@log_aware("AZero")
class AZeroStationaryBuilder:
    """Validates a spec and produces its eigenvector generator"""

    def __init__(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.tolerances = tolerances

    def build(self, spec: AZeroSpec) -> AZeroStateGenerator:
        _check_products(spec, self.tolerances.amplitude_positivity)
        largest = spec.max_modulus()
        if largest > self.tolerances.large_sequence:
            self.warning(f"Sequence modulus {largest:.3e} exceeds {self.tolerances.large_sequence:g}; "
                         "squared moduli lose precision")
            self.emit(WalkEvents.LARGE_SEQUENCE_VALUE, largest)
        generator = AZeroStateGenerator(spec, self.tolerances.amplitude_positivity)
        self.debug(f"lambda = {generator.lam:.6g}, {len(spec.alpha)} alpha / {len(spec.beta)} beta entries")
        return generator


def build_stationary_azero(spec: AZeroSpec,
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> AZeroStateGenerator:
    return AZeroStationaryBuilder(tolerances).build(spec)


class AZeroMeasureGenerator(IMeasureGenerator):
    """mu(2x) = |alpha_2x|^2 + |beta_2x|^2, mu(2x+1) = |alpha_2x|^2 + |beta_2x+2|^2"""

    def __init__(self, spec: AZeroSpec):
        self.spec = spec

    def value(self, x: int) -> float:
        spec = self.spec
        if x % 2 == 0:
            return abs(spec.alpha_at(x)) ** 2 + abs(spec.beta_at(x)) ** 2
        return abs(spec.alpha_at(x - 1)) ** 2 + abs(spec.beta_at(x + 1)) ** 2

    def sample(self, lo: int, hi: int) -> Measure:
        return Measure(lo, hi, [self.value(x) for x in range(lo, hi + 1)])


def azero_measure(spec: AZeroSpec, tolerances: Tolerances = DEFAULT_TOLERANCES) -> AZeroMeasureGenerator:
    _check_products(spec, tolerances.amplitude_positivity)
    return AZeroMeasureGenerator(spec)


def growing_spec(eta: float = 0.0, delta: complex = 1.0, sign: int = 1,
                 lo: int = -64, hi: int = 64) -> AZeroSpec:
    """alpha_{2x} = 1 + |x|, beta = 1: a non-uniform, non-exponential example"""
    alpha = {2 * k: 1.0 + abs(k) for k in range(math.ceil(lo / 2), hi // 2 + 1)}
    return AZeroSpec(eta=eta, delta=delta, sign=sign, alpha=alpha, beta={}, default=1.0)
