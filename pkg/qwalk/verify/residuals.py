"""
Eigen-equation residuals on sampled windows and the algebraic identities
behind the double-root family.
"""
from typing import Dict, Iterable, Optional

import numpy as np

from core.logger import logger
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import WindowTooSmall
from ..stationary.spectral import require_full_support, eigen_lambdas, gamma_raw
from ..types import AmplitudeField, ResidualReport, UnitaryCoin

_COMPONENT = "Residuals"

IDENTITY_NAMES = (
    'unit_gamma',             # | |gamma| - 1 |
    'gamma_squared',          # | gamma^2 - d/a |
    'double_root_h',          # discriminant of z^2 - (1/d)(lambda + det/lambda) z + a/d
    'double_root_charpoly',   # discriminant of z^2 - (1/a)(lambda + det/lambda) z + d/a
    'half_difference',        # | |lambda - det conj(lambda)|^2 / (4|b|^2) - 1 |
    'cos_two_phi',            # | Re(det conj(lambda)^2) - (2|a|^2 - 1) |
)


def eigen_residual(coin: UnitaryCoin, lam: complex, field: AmplitudeField,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResidualReport:
    """
    Per interior site, the larger of
    |lambda Psi^L(x) - a Psi^L(x+1) - b Psi^R(x+1)| and |lambda Psi^R(x) - c Psi^L(x-1) - d Psi^R(x-1)|
    """
    if field.width < 3:
        raise WindowTooSmall(f"Window [{field.lo}, {field.hi}] has no interior site")

    lam = complex(lam)
    left, right = field.psiL, field.psiR
    left_residual = np.abs(lam * left[1:-1] - coin.a * left[2:] - coin.b * right[2:])
    right_residual = np.abs(lam * right[1:-1] - coin.c * left[:-2] - coin.d * right[:-2])
    per_site_values = np.maximum(left_residual, right_residual)

    sites = range(field.lo + 1, field.hi)
    per_site = {x: float(r) for x, r in zip(sites, per_site_values)}
    return ResidualReport(
        max_eigen_residual=float(np.max(per_site_values)),
        per_site=per_site,
        thresholds={'eigen_residual': tolerances.eigen_residual},
    )


def recurrence_residual(coin: UnitaryCoin, lam: complex, field: AmplitudeField) -> float:
    """Max over both components of |f(x+2) - (1/a)(lambda + det/lambda) f(x+1) + (d/a) f(x)|"""
    if field.width < 3:
        raise WindowTooSmall(f"Window [{field.lo}, {field.hi}] is too small for a three-term recurrence")
    lam = complex(lam)
    middle = (lam + coin.det / lam) / coin.a
    last = coin.d / coin.a
    values = field.values
    residual = values[2:] - middle * values[1:-1] + last * values[:-2]
    return float(np.max(np.abs(residual)))


def _discriminant(linear: complex, constant: complex) -> float:
    """|s^2 - 4p| for z^2 - s z + p"""
    return abs(linear * linear - 4.0 * constant)


def identity_residuals(coin: UnitaryCoin, lam: complex) -> Dict[str, float]:
    lam = complex(lam)
    a, b, d, det = coin.a, coin.b, coin.d, coin.det
    gamma = gamma_raw(coin, lam)
    trace = lam + det / lam
    return {
        'unit_gamma': abs(abs(gamma) - 1.0),
        'gamma_squared': abs(gamma * gamma - d / a),
        'double_root_h': _discriminant(trace / d, a / d),
        'double_root_charpoly': _discriminant(trace / a, d / a),
        'half_difference': abs(abs(lam - det * lam.conjugate()) ** 2 / (4.0 * abs(b) ** 2) - 1.0),
        'cos_two_phi': abs((det * lam.conjugate() ** 2).real - (2.0 * abs(a) ** 2 - 1.0)),
    }


def algebraic_checks(coin: UnitaryCoin, lambdas: Optional[Iterable[complex]] = None,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResidualReport:
    """Each identity is the maximum over the given lambdas (default: the four eigenvalues)"""
    require_full_support(coin, tolerances)
    if lambdas is None:
        lambdas = eigen_lambdas(coin, tolerances)

    identities = {name: 0.0 for name in IDENTITY_NAMES}
    for lam in lambdas:
        for name, value in identity_residuals(coin, lam).items():
            identities[name] = max(identities[name], value)

    report = ResidualReport(identities=identities, thresholds={'identity': tolerances.identity})
    if not report.passed:
        worst = max(identities, key=identities.get)
        logger.warning(f"Identity '{worst}' residual {identities[worst]:.3e} exceeds {tolerances.identity:g}",
                       _COMPONENT)
    return report
