"""
CSV emission of cost curves: the classical operation series and the
quantum estimator series over a range of bit-strengths.
"""

import pandas as pd

from src.analysis.classical_cost import cost_point, REFERENCE_RATE
from src.analysis.datasets import DatasetCatalog
from src.analysis.quantum_cost import estimate_resources, CodeParams

CLASSICAL_COLUMNS = ['b', 'classical_ops', 'wall_seconds']
ESTIMATOR_COLUMNS = ['b', 'N_phys', 't']


def _sci(value):
    return f"{value:.6e}"


def classical_frame(b_values, variant='figure', rate=REFERENCE_RATE):
    rows = []
    for b in b_values:
        point = cost_point(b, variant, rate)
        rows.append({'b': str(b), 'classical_ops': _sci(point.ops),
                     'wall_seconds': _sci(point.wall_seconds)})
    return pd.DataFrame(rows, columns=CLASSICAL_COLUMNS)


def estimator_frame(b_values, params=None, schedule='low-t', code='surface', catalog=None):
    params = params or CodeParams()
    catalog = catalog or DatasetCatalog()
    rows = []
    for b in b_values:
        estimate = estimate_resources(catalog.logical_resources(schedule, b), params, code)
        rows.append({'b': str(b), 'N_phys': str(estimate.N_phys), 't': _sci(estimate.t_seconds)})
    return pd.DataFrame(rows, columns=ESTIMATOR_COLUMNS)


def emit_curves(b_values, sink, series='classical', params=None, schedule='low-t', code='surface',
                variant='figure', catalog=None):
    """
    Write a cost curve as CSV.

    Rows follow the order of b_values and numbers are formatted with six
    significant decimals, so repeated emission is byte-identical.

    Args:
        b_values (iterable): Bit-strengths
        sink (str or file): Output path or writable text stream
        series (str): 'classical' (b, classical_ops, wall_seconds) or
            'estimator' (b, N_phys, t)
        params (CodeParams): Estimator assumptions
        schedule (str): Logical schedule for the estimator series
        code (str): 'surface' or 'repcat'
        variant (str): Classical model variant
        catalog (DatasetCatalog): Source of logical resources

    Returns:
        pandas.DataFrame: The emitted rows
    """
    b_values = list(b_values)
    if series == 'classical':
        frame = classical_frame(b_values, variant)
    elif series == 'estimator':
        frame = estimator_frame(b_values, params, schedule, code, catalog)
    else:
        raise ValueError(f"unknown series {series!r}")
    if isinstance(sink, str):
        with open(sink, 'w', newline='') as file:
            frame.to_csv(file, index=False, lineterminator="\n")
    else:
        frame.to_csv(sink, index=False, lineterminator="\n")
    return frame
