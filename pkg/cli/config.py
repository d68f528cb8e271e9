"""
Run configuration for the command-line front end
"""
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.logger import LogLevel


@dataclass
class RunConfig:
    """Everything a command needs, gathered from argparse and the environment"""

    command: str = "stationary"

    # Coin source: preset name, JSON file or inline JSON
    coin: Optional[str] = None
    strict: bool = False
    repair: bool = False

    # Family parameters
    k: int = 2
    A: complex = 0j
    B: complex = 1 + 0j
    spec: Optional[str] = None          # a = 0 spec JSON
    state: Optional[str] = None         # b = 0 state JSON
    nstate: Optional[str] = None        # N-state coin JSON
    phi: Optional[List[complex]] = None
    localized: bool = False             # phi at x = 0 only

    # Window and time
    window: Tuple[int, int] = (-32, 32)
    steps: List[int] = field(default_factory=lambda: [0, 1, 2])
    n_max: int = 32
    max_n: int = 2
    which: str = "unbounded"

    # Tolerances
    tolerance_overrides: Dict[str, float] = field(default_factory=dict)

    # Output
    output: Optional[str] = None
    format: str = "csv"
    rescale: bool = False

    # Sweeps
    family: str = "u-theta"
    thetas: Optional[List[float]] = None
    ks: List[int] = field(default_factory=lambda: [1, 2, 3, 4])
    As: List[complex] = field(default_factory=lambda: [1 + 0j])
    Bs: List[complex] = field(default_factory=lambda: [0j, 1 + 0j])
    count: int = 20
    workers: int = 4
    seed: int = 0

    log_level: str = LogLevel.WARNING


def apply_environment(config: RunConfig) -> RunConfig:
    """QW_SEED and QW_LOG_LEVEL override the parsed values"""
    seed = os.getenv("QW_SEED")
    if seed is not None and seed.strip():
        config.seed = int(seed)
    level = os.getenv("QW_LOG_LEVEL")
    if level is not None and level.strip():
        config.log_level = LogLevel.normalize(level)
    return config
