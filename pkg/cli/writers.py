"""
CSV and JSON emission. Every float is written with 17 significant digits and
rows are ordered by ascending site, so identical runs give identical bytes.
"""
import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from qwalk.stationary.bzero import DiagonalWalkState, diag_evolve_measure
from qwalk.types import AmplitudeField, Measure


def fmt(value: float) -> str:
    return format(float(value), '.17g')


@contextmanager
def open_output(path: Optional[str]):
    """File at path, or stdout when path is None or '-'"""
    if path is None or path == '-':
        yield sys.stdout
        return
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        yield handle


def _writer(stream: TextIO):
    return csv.writer(stream, lineterminator='\n')


def write_measure_csv(stream: TextIO, measure: Measure) -> None:
    writer = _writer(stream)
    writer.writerow(['x', 'mu'])
    for x, mu in zip(measure.sites, measure.values):
        writer.writerow([int(x), fmt(mu)])


def write_measures_csv(stream: TextIO, measures: Sequence[tuple]) -> None:
    """Long format 'n,x,mu' for several (n, measure) pairs"""
    writer = _writer(stream)
    writer.writerow(['n', 'x', 'mu'])
    for n, measure in measures:
        for x, mu in zip(measure.sites, measure.values):
            writer.writerow([n, int(x), fmt(mu)])


def write_field_csv(stream: TextIO, field: AmplitudeField) -> None:
    writer = _writer(stream)
    header = ['x']
    if field.components == 2:
        header += ['psiL_re', 'psiL_im', 'psiR_re', 'psiR_im']
    else:
        for j in range(field.components):
            header += [f'psi{j}_re', f'psi{j}_im']
    writer.writerow(header)
    for x, row in zip(field.sites, field.values):
        cells = [int(x)]
        for value in row:
            cells += [fmt(value.real), fmt(value.imag)]
        writer.writerow(cells)


def write_counterexample_csv(stream: TextIO, state: DiagonalWalkState, lo: int, hi: int) -> None:
    """Table x,a,b,mu0,mu1,mu2 on [lo, hi]; the state must extend two sites further on each side"""
    mu1 = diag_evolve_measure(state, 1)
    mu2 = diag_evolve_measure(state, 2)
    writer = _writer(stream)
    writer.writerow(['x', 'a', 'b', 'mu0', 'mu1', 'mu2'])
    for x in range(lo, hi + 1):
        a, b = state.a_at(x), state.b_at(x)
        writer.writerow([x, fmt(a), fmt(b), fmt(a + b), fmt(mu1.at(x)), fmt(mu2.at(x))])


def _plain(value: Any) -> Any:
    """Turn numpy scalars, complex numbers and int-keyed maps into JSON values"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def write_json(stream: TextIO, document: Dict[str, Any]) -> None:
    json.dump(_plain(document), stream, indent=2, sort_keys=True)
    stream.write('\n')


def write_summary_csv(stream: TextIO, columns: List[str], rows: Iterable[Dict[str, Any]]) -> None:
    writer = _writer(stream)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) if isinstance(row[c], float) else row[c] for c in columns])


def render(writer_fn, *args) -> str:
    """Output of a writer as a string"""
    buffer = io.StringIO()
    writer_fn(buffer, *args)
    return buffer.getvalue()
