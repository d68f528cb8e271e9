# qwalk/interfaces.py
from abc import ABC, abstractmethod

import numpy as np

from .types import GeneratorFamily, Measure


class IStateGenerator(ABC):
    """Analytic amplitude rule on the whole integer line"""

    @property
    @abstractmethod
    def family(self) -> GeneratorFamily: pass

    @property
    def components(self) -> int:
        return 2

    @abstractmethod
    def amplitude(self, x: int) -> np.ndarray: pass

    def sample_values(self, lo: int, hi: int) -> np.ndarray:
        """Rows of amplitudes for [lo, hi]; override with a vectorized rule when available"""
        return np.array([self.amplitude(x) for x in range(lo, hi + 1)], dtype=np.complex128)


class IMeasureGenerator(ABC):
    """Analytic nonnegative per-site weight on the whole integer line"""

    @abstractmethod
    def value(self, x: int) -> float: pass

    @abstractmethod
    def sample(self, lo: int, hi: int) -> Measure: pass
