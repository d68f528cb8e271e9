"""
Parameter sweeps over the double-root family. Points are independent and run
on a thread pool; results are collected by grid index so the summary order
never depends on completion order.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.event_broker import event_aware
from core.logger import log_aware
from qwalk import coin as coins
from qwalk.config import DEFAULT_TOLERANCES, Tolerances
from qwalk.errors import WalkError
from qwalk.events import WalkEvents
from qwalk.lattice import sample_window
from qwalk.stationary.spectral import FullSupportStateGenerator, QuadraticMeasureGenerator, solve
from qwalk.types import UnitaryCoin
from qwalk.verify import algebraic_checks, decay_classify, eigen_residual, membership_check

SUMMARY_COLUMNS = [
    'index', 'family', 'param', 'k', 'A_re', 'A_im', 'B_re', 'B_im',
    'max_eigen_residual', 'max_identity', 'closed_form_gap', 'membership_level',
    'decay', 'passed', 'first_failure', 'error',
]


@dataclass(frozen=True)
class SweepPoint:
    index: int
    family: str
    param: float
    k: int
    A: complex
    B: complex
    coin: UnitaryCoin


@dataclass
class SweepResult:
    point: SweepPoint
    passed: bool = False
    error: Optional[str] = None
    metrics: Dict[str, Any] = field(default_factory=dict)

    def row(self) -> Dict[str, Any]:
        p = self.point
        row = {
            'index': p.index, 'family': p.family, 'param': float(p.param), 'k': p.k,
            'A_re': p.A.real, 'A_im': p.A.imag, 'B_re': p.B.real, 'B_im': p.B.imag,
            'max_eigen_residual': '', 'max_identity': '', 'closed_form_gap': '',
            'membership_level': '', 'decay': '',
            'passed': 'true' if self.passed else 'false', 'first_failure': 'false',
            'error': self.error or '',
        }
        row.update(self.metrics)
        return row


def build_grid(family: str, params: List[float], ks: List[int], As: List[complex], Bs: List[complex],
               count: int = 20, seed: int = 0) -> List[SweepPoint]:
    """
    u-theta / h-sigma: one coin per parameter value. random: `count` seeded
    Haar coins with every entry of modulus >= 0.1, indexed by draw number.
    """
    if family == 'u-theta':
        coin_list = [(theta, coins.u_theta(theta)) for theta in params]
    elif family == 'h-sigma':
        coin_list = [(sigma, coins.h_sigma(sigma)) for sigma in params]
    elif family == 'random':
        rng = np.random.default_rng(seed)
        coin_list = [(float(i), coins.random_full_support_coin(rng, min_modulus=0.1)) for i in range(count)]
    else:
        raise ValueError(f"Unknown sweep family '{family}'")

    points = []
    for param, coin in coin_list:
        for k in ks:
            for A in As:
                for B in Bs:
                    points.append(SweepPoint(len(points), family, param, k, complex(A), complex(B), coin))
    return points


@event_aware()
@log_aware("Sweep")
class SweepRunner:

    def __init__(self, window: Tuple[int, int] = (-32, 32), n_max: int = 32,
                 tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 4):
        self.window = window
        self.n_max = n_max
        self.tolerances = tolerances
        self.workers = max(1, workers)

    def evaluate(self, point: SweepPoint) -> SweepResult:
        tol = self.tolerances
        lo, hi = self.window
        result = SweepResult(point)
        try:
            solution = solve(point.coin, point.k, point.A, point.B, tol)
            generator = FullSupportStateGenerator(solution)
            residual = eigen_residual(point.coin, solution.lam, sample_window(generator, lo, hi), tol)
            identities = algebraic_checks(point.coin, tolerances=tol)

            measure_generator = QuadraticMeasureGenerator(solution, tol)
            printed, direct = measure_generator.printed(lo, hi), measure_generator.direct(lo, hi)
            gap = float(np.max(np.abs(printed - direct)))
            gap_limit = tol.closed_form * max(1.0, float(np.max(np.abs(direct))))
            measure = measure_generator.sample(lo, hi)

            level = membership_check(point.coin, generator, self.n_max, lo, hi, tol.membership)
            decay = decay_classify(measure).tag if lo == -hi and hi - lo >= 8 else ''
        except WalkError as e:
            result.error = f"{type(e).__name__}: {e}"
            return result

        result.metrics = {
            'max_eigen_residual': residual.max_eigen_residual,
            'max_identity': max(identities.identities.values()),
            'closed_form_gap': gap,
            'membership_level': level,
            'decay': decay,
        }
        result.passed = (residual.passed and identities.passed
                         and gap <= gap_limit and level == self.n_max)
        return result

    def run(self, points: List[SweepPoint]) -> List[SweepResult]:
        results: List[Optional[SweepResult]] = [None] * len(points)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = {pool.submit(self.evaluate, point): point.index for point in points}
            for future, index in futures.items():
                result = future.result()
                results[index] = result
                if result.passed:
                    self.emit(WalkEvents.SWEEP_POINT_DONE, result)
                else:
                    self.emit(WalkEvents.SWEEP_POINT_FAILED, result)

        failed = [r for r in results if not r.passed]
        self.info(f"{len(points) - len(failed)}/{len(points)} points passed")
        if failed:
            first = failed[0].point
            self.error(f"First failing point #{first.index}: family={first.family} param={first.param!r} "
                       f"k={first.k} A={first.A} B={first.B} ({failed[0].error or 'threshold exceeded'})")
        return results


def first_failure(results: List[SweepResult]) -> Optional[SweepResult]:
    return next((r for r in results if not r.passed), None)


def summary_rows(results: List[SweepResult]) -> List[Dict[str, Any]]:
    """One row per point; the first failing point carries first_failure = true"""
    failure = first_failure(results)
    rows = []
    for result in results:
        row = result.row()
        if result is failure:
            row['first_failure'] = 'true'
        rows.append(row)
    return rows
