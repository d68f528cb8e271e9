"""
python -m cli <command> [options]

Exit status: 0 success, 1 verification failure, 2 configuration error,
3 precondition violated by the inputs.
"""
import argparse
import sys
from typing import List, Optional

from core.logger import logger, LogLevel
from qwalk.errors import WalkError

from . import parsers
from .commands import CommandRunner, EXIT_CONFIG, EXIT_PRECONDITION
from .config import RunConfig, apply_environment
from .parsers import ConfigError


def _add_coin_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('coin')
    group.add_argument('--coin', help="Preset (hadamard, identity, u-theta:<t>, h-sigma:<s>, "
                                      "azero:<eta>:<xi>, bzero:<eta>:<xi>) or coin JSON")
    group.add_argument('--strict', action='store_true', help="Unitarity tolerance 1e-12 instead of 1e-9")
    group.add_argument('--repair', action='store_true', help="Project an almost-unitary coin onto U(2)")


def _add_family_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('initial state')
    group.add_argument('--k', type=int, default=2, help="Eigenvalue index 1..4 (double-root family)")
    group.add_argument('--A', default='0,0', help="Free parameter A as 're,im'")
    group.add_argument('--B', default='1,0', help="Free parameter B as 're,im'")
    group.add_argument('--spec', help="a = 0 spec JSON (file or inline)")
    group.add_argument('--phi', help="Constant state, components separated by ';' (e.g. '1,0;0,1')")
    group.add_argument('--localized', action='store_true', help="Place --phi at x = 0 only")


def _add_common_options(parser: argparse.ArgumentParser, window: str = '-32:32') -> None:
    parser.add_argument('--window', default=window, help="Site window 'lo:hi'")
    parser.add_argument('--tol', action='append', default=[], metavar='NAME=VALUE',
                        help="Tolerance override (repeatable) or a JSON object of overrides")
    parser.add_argument('--output', help="Output file (or prefix for multi-file commands); stdout by default")
    parser.add_argument('--format', choices=('csv', 'json'), default='csv')
    parser.add_argument('--log-level', default=None, help="DEBUG, INFO, WARNING or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='python -m cli',
                                     description="Stationary measures of one-dimensional quantum walks")
    sub = parser.add_subparsers(dest='command', required=True)

    evolve = sub.add_parser('evolve', help="Evolve an initial state and emit mu_n")
    _add_coin_options(evolve)
    _add_family_options(evolve)
    _add_common_options(evolve)
    evolve.add_argument('--steps', default='0,1,2', help="Comma-separated step counts")

    stationary = sub.add_parser('stationary', help="Build a stationary state; without --output the measure goes "
                                "to stdout and the report to stderr")
    _add_coin_options(stationary)
    _add_family_options(stationary)
    _add_common_options(stationary)
    stationary.add_argument('--nstate', help="N-state coin JSON; emits the uniform stationary measure")
    stationary.add_argument('--n-max', type=int, default=32)
    stationary.add_argument('--rescale', action='store_true', help="Scale so that mu(0) = 1")

    verify = sub.add_parser('verify', help="Residuals, identities, membership level and decay class")
    _add_coin_options(verify)
    _add_family_options(verify)
    _add_common_options(verify)
    verify.add_argument('--n-max', type=int, default=32)

    certificate = sub.add_parser('certificate', help="Uniformity certificate for a diagonal-coin state")
    _add_common_options(certificate, window='-12:12')
    certificate.add_argument('--state', help="Diagonal state JSON; default is a built-in counterexample")
    certificate.add_argument('--which', default='unbounded', choices=('unbounded', 'bounded'))
    certificate.add_argument('--max-n', type=int, default=2)

    counterexample = sub.add_parser('counterexample', help="Tables of a, b, mu_0, mu_1, mu_2")
    _add_common_options(counterexample, window='-10:10')
    counterexample.add_argument('--which', default='unbounded', choices=('unbounded', 'bounded'))

    sweep = sub.add_parser('sweep', help="Verify the double-root family over a parameter grid")
    _add_common_options(sweep)
    sweep.add_argument('--family', default='u-theta', choices=('u-theta', 'h-sigma', 'random'))
    sweep.add_argument('--params', help="Coin parameter grid: 'v1,v2,...', 'linspace:a:b:n' or 'open:a:b:n'")
    sweep.add_argument('--ks', default='1,2,3,4')
    sweep.add_argument('--As', default='1,0', help="';'-separated complex values")
    sweep.add_argument('--Bs', default='0,0;1,0', help="';'-separated complex values")
    sweep.add_argument('--count', type=int, default=20, help="Number of random coins")
    sweep.add_argument('--workers', type=int, default=4)
    sweep.add_argument('--seed', type=int, default=0)
    sweep.add_argument('--n-max', type=int, default=32)

    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    """argparse namespace -> RunConfig; raises ConfigError"""
    config = RunConfig(command=args.command)
    get = lambda name, default=None: getattr(args, name, default)

    config.coin = get('coin')
    config.strict = bool(get('strict', False))
    config.repair = bool(get('repair', False))
    config.k = get('k', config.k)
    if get('A') is not None:
        config.A = parsers.parse_complex(args.A)
    if get('B') is not None:
        config.B = parsers.parse_complex(args.B)
    config.spec = get('spec')
    config.state = get('state')
    config.nstate = get('nstate')
    if get('phi') is not None:
        config.phi = parsers.parse_complex_list(args.phi)
    config.localized = bool(get('localized', False))

    config.window = parsers.parse_window(args.window)
    if get('steps') is not None:
        config.steps = parsers.parse_int_list(args.steps)
    config.n_max = get('n_max', config.n_max)
    config.max_n = get('max_n', config.max_n)
    config.which = get('which', config.which)

    config.tolerance_overrides = parsers.parse_overrides_map(args.tol)
    config.output = args.output
    config.format = args.format
    config.rescale = bool(get('rescale', False))

    if args.command == 'sweep':
        config.family = args.family
        config.thetas = parsers.parse_grid(args.params) if args.params else None
        config.ks = parsers.parse_int_list(args.ks)
        config.As = parsers.parse_complex_list(args.As)
        config.Bs = parsers.parse_complex_list(args.Bs)
        config.count = args.count
        config.workers = args.workers
        config.seed = args.seed

    if args.log_level:
        config.log_level = LogLevel.normalize(args.log_level)
    if config.n_max < 1:
        raise ConfigError(f"--n-max must be at least 1, got {config.n_max}")
    return apply_environment(config)


# options whose values may start with '-' (negative numbers, windows like -32:32)
VALUE_OPTIONS = ('--window', '--A', '--B', '--phi', '--params', '--As', '--Bs')


def join_values(argv: List[str]) -> List[str]:
    """['--window', '-32:32'] -> ['--window=-32:32']"""
    joined, i = [], 0
    while i < len(argv):
        token = argv[i]
        if token in VALUE_OPTIONS and i + 1 < len(argv):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def main(argv: Optional[List[str]] = None) -> int:
    argv = join_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else 0

    try:
        config = to_config(args)
        logger.set_level(config.log_level)
        return CommandRunner(config).run()
    except ConfigError as e:
        logger.error(f"Configuration error: {e}", "CLI")
        return EXIT_CONFIG
    except WalkError as e:
        logger.error(f"{type(e).__name__}: {e}", "CLI")
        return EXIT_PRECONDITION
    except ValueError as e:
        logger.error(f"Invalid value: {e}", "CLI")
        return EXIT_CONFIG
    except OSError as e:
        logger.error(f"I/O error: {e}", "CLI")
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
