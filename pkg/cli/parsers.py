"""
Parsing of command-line values and JSON inputs: coin presets, "re,im"
complex numbers, windows, grids and the family spec files.
"""
import json
import math
import os
from typing import Any, Dict, List, Tuple

import numpy as np

from qwalk import coin as coins
from qwalk.config import DEFAULT_TOLERANCES, Tolerances, TolerancesParser
from qwalk.nstate import NStateCoin, make_nstate_coin
from qwalk.stationary.azero import AZeroSpec
from qwalk.stationary.bzero import DiagonalWalkState
from qwalk.types import UnitaryCoin


class ConfigError(Exception):
    """Unparseable argument, preset or JSON document"""


def parse_complex(text: str) -> complex:
    """'re,im' or a single real number"""
    parts = [p.strip() for p in str(text).split(',')]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"Expected 're,im', got '{text}'")


def parse_complex_list(text: str) -> List[complex]:
    """Complex values separated by ';', e.g. '1,0;0,1'"""
    return [parse_complex(item) for item in str(text).split(';') if item.strip()]


def json_complex(value: Any) -> complex:
    """[re, im] pair or a bare real"""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise ConfigError(f"Expected [re, im], got {value!r}")


def parse_window(text: str) -> Tuple[int, int]:
    """'lo:hi' with lo <= hi"""
    parts = str(text).split(':')
    if len(parts) != 2:
        raise ConfigError(f"Window must be 'lo:hi', got '{text}'")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"Window bounds must be integers, got '{text}'")
    if hi < lo:
        raise ConfigError(f"Window [{lo}, {hi}] is empty")
    return lo, hi


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in str(text).split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"Expected comma-separated integers, got '{text}'")


def parse_grid(text: str) -> List[float]:
    """
    Comma-separated values or 'linspace:start:stop:count'; 'open:start:stop:count'
    takes count midpoints of equal cells so both endpoints are avoided.
    """
    text = str(text).strip()
    try:
        if text.startswith(('linspace:', 'open:')):
            kind, start, stop, count = text.split(':')
            start, stop, count = float(start), float(stop), int(count)
            if count < 1:
                raise ConfigError(f"Grid needs at least one point, got '{text}'")
            if kind == 'linspace':
                return [float(v) for v in np.linspace(start, stop, count)]
            width = (stop - start) / count
            return [start + (i + 0.5) * width for i in range(count)]
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"Cannot parse grid '{text}'")


def default_theta_grid(count: int = 50) -> List[float]:
    """Midpoints of (0, pi/2); the endpoints leave the full-support case"""
    return parse_grid(f"open:0:{math.pi / 2}:{count}")


def load_json(source: str) -> Any:
    """Inline JSON (starting with '{' or '[') or a path to a JSON file"""
    source = str(source).strip()
    try:
        if source.startswith(('{', '[')):
            return json.loads(source)
        if not os.path.exists(source):
            raise ConfigError(f"File not found: {source}")
        with open(source, 'r', encoding='utf-8') as handle:
            return json.load(handle)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {source[:40]!r}: {e}")


def _preset_args(name: str, args: List[str], expected: int) -> List[float]:
    if len(args) != expected:
        raise ConfigError(f"Preset '{name}' takes {expected} parameter(s), got {len(args)}")
    try:
        return [float(a) for a in args]
    except ValueError:
        raise ConfigError(f"Preset '{name}' parameters must be numbers, got {args}")


def parse_preset(text: str) -> UnitaryCoin:
    """hadamard, identity, u-theta:<t>, h-sigma:<s>, azero:<eta>:<xi>, bzero:<eta>:<xi>"""
    name, *args = str(text).strip().split(':')
    name = name.lower()
    if name == 'hadamard':
        _preset_args(name, args, 0)
        return coins.hadamard()
    if name == 'identity':
        _preset_args(name, args, 0)
        return coins.identity()
    if name == 'u-theta':
        return coins.u_theta(*_preset_args(name, args, 1))
    if name == 'h-sigma':
        return coins.h_sigma(*_preset_args(name, args, 1))
    if name in ('azero', 'bzero'):
        eta, xi = _preset_args(name, args, 2)
        delta = complex(math.cos(xi), math.sin(xi))
        return coins.azero_coin(eta, delta) if name == 'azero' else coins.bzero_coin(eta, delta)
    raise ConfigError(f"Unknown coin preset '{text}'")


def parse_coin(source: str, strict: bool = False, repair: bool = False,
               tolerances: Tolerances = DEFAULT_TOLERANCES) -> UnitaryCoin:
    """Preset name, or {"a": [re, im], "b": ..., "c": ..., "d": ...} inline or from a file"""
    if source is None:
        raise ConfigError("A coin is required (--coin)")
    text = str(source).strip()
    if not (text.startswith('{') or text.endswith('.json')):
        return parse_preset(text)

    document = load_json(text)
    if not isinstance(document, dict) or not all(key in document for key in 'abcd'):
        raise ConfigError("Coin JSON must have keys a, b, c, d")
    entries = [json_complex(document[key]) for key in 'abcd']
    return coins.make_coin(*entries, strict=strict, repair=repair, tolerances=tolerances)


def parse_nstate_coin(source: str, strict: bool = False,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> NStateCoin:
    """{"n": N, "entries": [[[re, im], ...], ...]}"""
    document = load_json(source)
    if not isinstance(document, dict) or 'entries' not in document:
        raise ConfigError("N-state coin JSON needs an 'entries' matrix")
    rows = document['entries']
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ConfigError("'entries' must be a list of rows")
    matrix = [[json_complex(value) for value in row] for row in rows]
    n = document.get('n', len(matrix))
    if n != len(matrix) or any(len(row) != n for row in matrix):
        raise ConfigError(f"'entries' must be an {n} x {n} matrix")
    return make_nstate_coin(matrix, tolerances=tolerances, strict=strict)


def _site_map(document: Dict[str, Any], key: str, convert) -> Dict[int, Any]:
    raw = document.get(key, {})
    if not isinstance(raw, dict):
        raise ConfigError(f"'{key}' must map sites to values")
    try:
        return {int(site): convert(value) for site, value in raw.items()}
    except ValueError:
        raise ConfigError(f"'{key}' has a non-integer site key")


def parse_azero_spec(source: str) -> AZeroSpec:
    """{"eta": r, "delta": [re, im], "sign": "+"|"-", "alpha": {...}, "beta": {...}, "default": [re, im]}"""
    document = load_json(source)
    if not isinstance(document, dict):
        raise ConfigError("a = 0 spec must be a JSON object")

    sign_text = str(document.get('sign', '+')).strip()
    signs = {'+': 1, '+1': 1, '1': 1, '-': -1, '−': -1, '-1': -1}
    if sign_text not in signs:
        raise ConfigError(f"sign must be '+' or '-', got '{sign_text}'")

    default = document.get('default', [1.0, 0.0])
    return AZeroSpec(
        eta=float(document.get('eta', 0.0)),
        delta=json_complex(document.get('delta', [1.0, 0.0])),
        sign=signs[sign_text],
        alpha=_site_map(document, 'alpha', json_complex),
        beta=_site_map(document, 'beta', json_complex),
        default=None if default is None else json_complex(default),
    )


def parse_diagonal_state(source: str) -> DiagonalWalkState:
    """{"eta": r, "delta": [re, im], "a": {"<site>": r, ...}, "b": {...}}"""
    document = load_json(source)
    if not isinstance(document, dict):
        raise ConfigError("Diagonal state must be a JSON object")
    return DiagonalWalkState.from_maps(
        eta=float(document.get('eta', 0.0)),
        delta=json_complex(document.get('delta', [1.0, 0.0])),
        a=_site_map(document, 'a', float),
        b=_site_map(document, 'b', float),
    )


def parse_overrides_map(pairs: List[str]) -> Dict[str, Any]:
    """'name=value' items and JSON objects merged into one mapping"""
    overrides: Dict[str, Any] = {}
    for item in pairs or []:
        item = item.strip()
        if item.startswith('{') or item.endswith('.json'):
            document = load_json(item)
            if not isinstance(document, dict):
                raise ConfigError("Tolerance JSON must be an object")
            overrides.update(document)
            continue
        if '=' not in item:
            raise ConfigError(f"Tolerance override must be 'name=value', got '{item}'")
        name, value = item.split('=', 1)
        overrides[name.strip()] = value.strip()
    return overrides


def parse_tolerances(pairs: List[str], base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
    try:
        return TolerancesParser().parse_overrides(parse_overrides_map(pairs), base)
    except ValueError as e:
        raise ConfigError(str(e))
