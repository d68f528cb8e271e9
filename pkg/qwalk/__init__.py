# qwalk/__init__.py
# Stationary measures of discrete-time quantum walks on the integer line
from .types import (
    UnitaryCoin, CoinCase, CoinAngles, CoinHalves, AmplitudeField, Measure,
    GeneratorFamily, EigenSolution, ResidualReport, DecayClass, DecayKind,
    Certificate, Verdict,
)
from .errors import (
    WalkError, NotUnitary, AmbiguousCase, WrongCase, NotEigenvalue, ZeroParameters,
    WindowTooSmall, MissingSequenceValue, ZeroProduct, ZeroState, NonPositive, InvalidSpec,
)
from .config import Tolerances, TolerancesParser, get_tolerances
from .events import WalkEvents
from .coin import make_coin, classify, decompose, coin_angles
from .lattice import step, evolve, to_measure, sample_window

__all__ = [
    'UnitaryCoin', 'CoinCase', 'CoinAngles', 'CoinHalves', 'AmplitudeField', 'Measure',
    'GeneratorFamily', 'EigenSolution', 'ResidualReport', 'DecayClass', 'DecayKind',
    'Certificate', 'Verdict',
    'WalkError', 'NotUnitary', 'AmbiguousCase', 'WrongCase', 'NotEigenvalue', 'ZeroParameters',
    'WindowTooSmall', 'MissingSequenceValue', 'ZeroProduct', 'ZeroState', 'NonPositive', 'InvalidSpec',
    'Tolerances', 'TolerancesParser', 'get_tolerances', 'WalkEvents',
    'make_coin', 'classify', 'decompose', 'coin_angles',
    'step', 'evolve', 'to_measure', 'sample_window',
]
