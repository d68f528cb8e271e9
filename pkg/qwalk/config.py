"""
Numeric thresholds shared by the library and the CLI
"""
import os
from dataclasses import dataclass, fields, replace
from typing import Dict, Mapping


@dataclass(frozen=True)
class Tolerances:
    """Every tolerance used by constructors and checks"""

    # Coin validation
    unitarity: float = 1e-9
    strict_unitarity: float = 1e-12

    # Case classification: below case_zero an entry is zero, entries in
    # (case_zero, ambiguous_band) next to a zero entry are ambiguous
    case_zero: float = 1e-9
    ambiguous_band: float = 1e-6

    # Eigenvalue acceptance
    eigen_membership: float = 1e-9
    not_eigenvalue_gamma: float = 1e-8

    # Checks
    identity: float = 1e-10
    eigen_residual: float = 1e-12
    membership: float = 1e-10
    closed_form: float = 1e-10
    uniform_check: float = 1e-12
    certificate: float = 1e-10
    amplitude_positivity: float = 1e-12

    # a = 0 sequences above this modulus lose precision in squared moduli
    large_sequence: float = 1e6

    def validation(self, strict: bool = False) -> float:
        return self.strict_unitarity if strict else self.unitarity


DEFAULT_TOLERANCES = Tolerances()


class TolerancesParser:
    """Reads tolerance overrides from a mapping (e.g. a JSON object)"""

    ALIASES = {
        "tol": "membership",
        "validation": "unitarity",
        "strict": "strict_unitarity",
        "residual": "eigen_residual",
    }

    def parse_overrides(self, overrides: Mapping[str, object], base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
        """Unknown keys are ignored; values must be positive numbers"""
        known = {f.name for f in fields(Tolerances)}
        changes: Dict[str, float] = {}

        for key, value in overrides.items():
            name = self.ALIASES.get(key, key)
            if name not in known:
                continue
            number = float(value)
            if not number > 0:
                raise ValueError(f"Tolerance '{key}' must be positive, got {value}")
            changes[name] = number

        return replace(base, **changes)


def get_tolerances() -> Tolerances:
    """Default tolerances with environment overrides applied"""
    tolerances = DEFAULT_TOLERANCES
    if os.getenv("QW_STRICT", "0").lower() in ("1", "true", "yes"):
        tolerances = replace(tolerances, unitarity=tolerances.strict_unitarity)
    return tolerances
