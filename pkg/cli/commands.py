"""
One runner per CLI command. Each returns the process exit status:
0 success, 1 verification failure. Parse errors (2) and library
precondition errors (3) propagate to __main__.
"""
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from core.event_broker import event_aware
from core.logger import log_aware
from qwalk.coin import classify
from qwalk.config import Tolerances, TolerancesParser, get_tolerances
from qwalk.errors import NonPositive
from qwalk.events import WalkEvents
from qwalk.interfaces import IStateGenerator
from qwalk.lattice import UniformStateGenerator, delta_generator, evolve_fields, sample_window, to_measure
from qwalk.nstate import constant_field, uniform_stationary_check
from qwalk.stationary.azero import AZeroMeasureGenerator, build_stationary_azero
from qwalk.stationary.bzero import COUNTEREXAMPLES, DiagonalWalkState, diag_evolve_measure, uniformity_certificate
from qwalk.stationary.spectral import QuadraticMeasureGenerator, build_stationary_full, eigen_lambdas
from qwalk.types import AmplitudeField, CoinCase, Measure, UnitaryCoin, Verdict
from qwalk.verify import algebraic_checks, decay_classify, eigen_residual, membership_check

from . import parsers, writers
from .config import RunConfig
from .parsers import ConfigError
from .sweep import SUMMARY_COLUMNS, SweepRunner, build_grid, first_failure, summary_rows

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3


@dataclass
class Family:
    """A two-state initial state with its coin, eigenvalue and analytic measure"""
    name: str
    coin: UnitaryCoin
    generator: IStateGenerator
    lam: Optional[complex] = None
    measure: Any = None     # IMeasureGenerator, when the family has one


@event_aware()
@log_aware("CLI")
class CommandRunner:

    def __init__(self, config: RunConfig):
        self.config = config
        self.tolerances = self._tolerances()
        self.findings: List[Dict[str, Any]] = []

    def _tolerances(self) -> Tolerances:
        try:
            return TolerancesParser().parse_overrides(self.config.tolerance_overrides, get_tolerances())
        except ValueError as e:
            raise ConfigError(str(e))

    def run(self) -> int:
        handler = getattr(self, f"run_{self.config.command}", None)
        if handler is None:
            raise ConfigError(f"Unknown command '{self.config.command}'")
        self.listen(WalkEvents.CLOSED_FORM_MISMATCH, self.findings.append)
        try:
            return handler()
        finally:
            self.stop_listening()

    def _coin(self) -> UnitaryCoin:
        cfg = self.config
        return parsers.parse_coin(cfg.coin, strict=cfg.strict, repair=cfg.repair, tolerances=self.tolerances)

    def _family(self) -> Family:
        cfg = self.config
        if cfg.spec:
            spec = parsers.parse_azero_spec(cfg.spec)
            generator = build_stationary_azero(spec, self.tolerances)
            return Family('azero', spec.coin(), generator, generator.lam, AZeroMeasureGenerator(spec))

        coin = self._coin()
        if cfg.phi is not None:
            if len(cfg.phi) != 2:
                raise ConfigError(f"--phi needs two components for a 2x2 coin, got {len(cfg.phi)}")
            if cfg.localized:
                return Family('localized', coin, delta_generator(0, cfg.phi))
            return Family('uniform', coin, UniformStateGenerator(cfg.phi))

        if classify(coin, self.tolerances) is not CoinCase.FULL_SUPPORT:
            raise ConfigError("This coin has no double-root family; give --spec (a = 0) or --phi")
        if cfg.k not in (1, 2, 3, 4):
            raise ConfigError(f"--k must be 1..4, got {cfg.k}")
        lam = eigen_lambdas(coin, self.tolerances)[cfg.k - 1]
        generator = build_stationary_full(coin, lam, cfg.A, cfg.B, self.tolerances)
        measure = QuadraticMeasureGenerator(generator.solution, self.tolerances)
        return Family('spectral', coin, generator, generator.solution.lam, measure)

    def _measure(self, family: Family, lo: int, hi: int) -> Measure:
        if family.measure is not None:
            return family.measure.sample(lo, hi)
        return to_measure(sample_window(family.generator, lo, hi))

    def _report(self, family: Family, measure: Measure) -> Dict[str, Any]:
        cfg, tol = self.config, self.tolerances
        lo, hi = cfg.window
        report: Dict[str, Any] = {'family': family.name}
        passed = True

        if family.lam is not None:
            residual = eigen_residual(family.coin, family.lam, sample_window(family.generator, lo - 1, hi + 1), tol)
            report['max_eigen_residual'] = residual.max_eigen_residual
            passed &= residual.passed
        if family.name == 'spectral':
            identities = algebraic_checks(family.coin, tolerances=tol)
            report['identities'] = identities.identities
            passed &= identities.passed

        level = membership_check(family.coin, family.generator, cfg.n_max, lo, hi, tol.membership)
        report['membership_level'] = level
        passed &= level == cfg.n_max

        report['decay'] = self._decay_tag(measure)
        if self.findings:
            report['closed_form_findings'] = list(self.findings)
        report['passed'] = bool(passed)
        return report

    def _decay_tag(self, measure: Measure) -> Optional[str]:
        if measure.lo != -measure.hi or measure.hi - measure.lo < 8:
            return None
        try:
            return decay_classify(measure).tag
        except NonPositive as e:
            self.warning(f"Decay not classified: {e}")
            return None

    def _emit_report(self, report: Dict[str, Any], path: Optional[str]) -> int:
        with writers.open_output(path) as stream:
            writers.write_json(stream, report)
        return EXIT_OK if report.get('passed', True) else EXIT_VERIFICATION_FAILED

    def run_evolve(self) -> int:
        cfg = self.config
        family = self._family()
        lo, hi = cfg.window
        steps = sorted(set(cfg.steps))
        if not steps or steps[0] < 0:
            raise ConfigError("--steps must be nonnegative integers")

        wanted = set(steps)
        measures = [(n, to_measure(field)) for n, field in evolve_fields(family.coin, family.generator, steps[-1], lo, hi)
                    if n in wanted]

        if cfg.output and len(measures) > 1:
            for n, measure in measures:
                with writers.open_output(f"{cfg.output}_n{n}.csv") as stream:
                    writers.write_measure_csv(stream, measure)
        else:
            with writers.open_output(cfg.output) as stream:
                if len(measures) == 1:
                    writers.write_measure_csv(stream, measures[0][1])
                else:
                    writers.write_measures_csv(stream, measures)
        self.info(f"Evolved {family.name} state to n={steps[-1]} on [{lo}, {hi}]")
        return EXIT_OK

    def run_stationary(self) -> int:
        cfg = self.config
        lo, hi = cfg.window
        if cfg.nstate:
            return self._run_nstate_uniform()

        family = self._family()
        field = sample_window(family.generator, lo, hi)
        measure = self._measure(family, lo, hi)
        if cfg.rescale:
            field, measure = self._rescaled(field, measure)
        report = self._report(family, measure)
        self._emit_stationary(field, measure, report)

        if not report['passed']:
            self.error(f"Stationary {family.name} state failed verification: {report}")
            return EXIT_VERIFICATION_FAILED
        return EXIT_OK

    def _rescaled(self, field: AmplitudeField, measure: Measure):
        """Scale so that mu(0) = 1"""
        if not measure.lo <= 0 <= measure.hi:
            raise ConfigError("--rescale needs x = 0 inside the window")
        origin = measure.at(0)
        if origin <= 0:
            raise ConfigError("--rescale needs mu(0) > 0")
        return (AmplitudeField(field.lo, field.hi, field.values / math.sqrt(origin)),
                Measure(measure.lo, measure.hi, measure.values / origin))

    def _run_nstate_uniform(self) -> int:
        cfg = self.config
        lo, hi = cfg.window
        coin = parsers.parse_nstate_coin(cfg.nstate, strict=cfg.strict, tolerances=self.tolerances)
        phi = cfg.phi if cfg.phi is not None else [1.0] + [0.0] * (coin.n - 1)
        if len(phi) != coin.n:
            raise ConfigError(f"--phi needs {coin.n} components, got {len(phi)}")

        check = uniform_stationary_check(coin, phi, cfg.n_max, lo, hi, self.tolerances)
        field = constant_field(phi, lo, hi)
        measure = to_measure(field)
        report = {
            'family': 'nstate-uniform',
            'n': coin.n,
            'offsets': list(coin.offsets),
            'norm_squared': check.norm_squared,
            'max_deviation': check.max_deviation,
            'max_power_deviation': check.max_power_deviation,
            'steps': check.steps,
            'passed': check.passed,
        }
        self._emit_stationary(field, measure, report)
        return EXIT_OK if check.passed else EXIT_VERIFICATION_FAILED

    def _emit_stationary(self, field: AmplitudeField, measure: Measure, report: Dict[str, Any]) -> None:
        """
        With --output: <prefix>_amplitudes.csv, <prefix>_measure.csv and <prefix>_report.json.
        Without it the measure CSV goes to stdout and the report JSON to stderr; amplitudes need --output.
        """
        prefix = self.config.output
        if prefix:
            with writers.open_output(f"{prefix}_amplitudes.csv") as stream:
                writers.write_field_csv(stream, field)
            with writers.open_output(f"{prefix}_measure.csv") as stream:
                writers.write_measure_csv(stream, measure)
            with writers.open_output(f"{prefix}_report.json") as stream:
                writers.write_json(stream, report)
            return
        with writers.open_output(None) as stream:
            writers.write_measure_csv(stream, measure)
        writers.write_json(sys.stderr, report)

    def run_verify(self) -> int:
        cfg = self.config
        family = self._family()
        lo, hi = cfg.window
        report = self._report(family, self._measure(family, lo, hi))
        if not report['passed']:
            self.error(f"Verification failed for {family.name} state")
        return self._emit_report(report, cfg.output)

    def _diagonal_state(self, margin: int) -> DiagonalWalkState:
        cfg = self.config
        if cfg.state:
            return parsers.parse_diagonal_state(cfg.state)
        if cfg.which not in COUNTEREXAMPLES:
            raise ConfigError(f"--which must be one of {sorted(COUNTEREXAMPLES)}, got '{cfg.which}'")
        a_rule, b_rule = COUNTEREXAMPLES[cfg.which]
        lo, hi = cfg.window
        return DiagonalWalkState.from_rules(a_rule, b_rule, lo - margin, hi + margin)

    def run_certificate(self) -> int:
        cfg = self.config
        state = self._diagonal_state(margin=0)
        certificate = uniformity_certificate(state, cfg.max_n, self.tolerances)
        document = certificate.to_dict()
        if certificate.verdict is Verdict.UNIFORM:
            w_lo, w_hi = certificate.window
            document['label'] = f"uniform on [{w_lo}, {w_hi}]"
        return self._emit_report(document, cfg.output)

    def run_counterexample(self) -> int:
        cfg = self.config
        lo, hi = cfg.window
        state = self._diagonal_state(margin=2)
        with writers.open_output(cfg.output) as stream:
            if cfg.format == 'json':
                writers.write_json(stream, self._counterexample_document(state, lo, hi))
            else:
                writers.write_counterexample_csv(stream, state, lo, hi)
        return EXIT_OK

    @staticmethod
    def _counterexample_document(state: DiagonalWalkState, lo: int, hi: int) -> Dict[str, Any]:
        sites = range(lo, hi + 1)
        mu1, mu2 = diag_evolve_measure(state, 1), diag_evolve_measure(state, 2)
        return {
            'x': list(sites),
            'a': [state.a_at(x) for x in sites],
            'b': [state.b_at(x) for x in sites],
            'mu0': [state.a_at(x) + state.b_at(x) for x in sites],
            'mu1': [mu1.at(x) for x in sites],
            'mu2': [mu2.at(x) for x in sites],
        }

    def run_sweep(self) -> int:
        cfg = self.config
        params = cfg.thetas if cfg.thetas is not None else parsers.default_theta_grid()
        try:
            points = build_grid(cfg.family, params, cfg.ks, cfg.As, cfg.Bs, cfg.count, cfg.seed)
        except ValueError as e:
            raise ConfigError(str(e))

        runner = SweepRunner(cfg.window, cfg.n_max, self.tolerances, cfg.workers)
        results = runner.run(points)
        failure = first_failure(results)

        with writers.open_output(cfg.output) as stream:
            if cfg.format == 'json':
                writers.write_json(stream, {
                    'points': summary_rows(results),
                    'failed': sum(1 for r in results if not r.passed),
                    'first_failure': failure.row() if failure else None,
                })
            else:
                writers.write_summary_csv(stream, SUMMARY_COLUMNS, summary_rows(results))
        return EXIT_VERIFICATION_FAILED if failure else EXIT_OK
