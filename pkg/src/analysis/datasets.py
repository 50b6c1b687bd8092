"""
Bundled reference datasets.

Each table is a CSV file listed in manifest.yaml. Tables are read with
every column as text so that values come back verbatim and re-serialising
a table reproduces the file byte for byte.
"""

import io
import os
import re

import pandas as pd
import yaml

from src.analysis.quantum_cost import LogicalResources
from src.utils.config import resolve_dataset_dir
from src.utils.errors import DatasetLookupError
from src.utils.logger import setup_logger

logger = setup_logger()

MANIFEST_FILE = 'manifest.yaml'

SCHEDULE_TABLES = {
    'low-width': 'msre_logical_low_width',
    'low-t': 'msre_logical_low_t',
    'low-depth': 'msre_logical_low_depth',
}

_DURATION_UNITS = {'ms': 1e-3, 's': 1.0, 'min': 60.0, 'h': 3600.0, 'd': 86400.0}
_DURATION_RE = re.compile(r'^\s*([0-9.]+)\s*(ms|s|min|h|d)\s*$')


def parse_duration(text):
    """
    Seconds from a duration string such as '513 ms', '3 min' or '7 h'.

    Args:
        text (str): Number and unit

    Returns:
        float: Duration in seconds
    """
    match = _DURATION_RE.match(text)
    if not match:
        raise ValueError(f"unrecognised duration {text!r}")
    return float(match.group(1)) * _DURATION_UNITS[match.group(2)]


def coerce(text):
    """Verbatim text as int, else float, else unchanged."""
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            continue
    return text


class DatasetCatalog:
    """Read-only access to the bundled tables."""

    def __init__(self, data_dir=None):
        """
        Args:
            data_dir (str): Directory with manifest.yaml; defaults to
                ECDLP_LADDER_DATA or the bundled data
        """
        self.data_dir = data_dir or resolve_dataset_dir()
        manifest_path = os.path.join(self.data_dir, MANIFEST_FILE)
        if not os.path.exists(manifest_path):
            logger.error(f"Dataset manifest not found: {manifest_path}")
            raise FileNotFoundError(f"Dataset manifest not found: {manifest_path}")
        with open(manifest_path, 'r') as file:
            self.manifest = yaml.safe_load(file)['tables']
        self._frames = {}

    def tables(self):
        """Table ids in manifest order."""
        return list(self.manifest)

    def entry(self, table):
        if table not in self.manifest:
            raise DatasetLookupError(f"unknown table {table!r}")
        return self.manifest[table]

    def path(self, table):
        return os.path.join(self.data_dir, self.entry(table)['file'])

    def load(self, table):
        """
        Table as a DataFrame of strings.

        Args:
            table (str): Table id

        Returns:
            pandas.DataFrame: Verbatim contents
        """
        if table not in self._frames:
            frame = pd.read_csv(self.path(table), dtype=str, keep_default_na=False)
            expected = list(self.entry(table)['columns'])
            if list(frame.columns) != expected:
                raise DatasetLookupError(
                    f"{table}: columns {list(frame.columns)} differ from manifest {expected}")
            self._frames[table] = frame
        return self._frames[table].copy()

    def row(self, table, key):
        """Row whose key column equals key (compared as text)."""
        frame = self.load(table)
        key_column = self.entry(table).get('key', 'b')
        matches = frame[frame[key_column] == str(key)]
        if matches.empty:
            raise DatasetLookupError(f"{table}: no row with {key_column}={key}")
        return matches.iloc[0]

    def query(self, table, b, column):
        """
        Published value for (table, row key, column).

        Returns:
            int, float or str: Value parsed from its verbatim text
        """
        row = self.row(table, b)
        if column not in row.index:
            raise DatasetLookupError(f"{table}: unknown column {column!r}")
        return coerce(row[column])

    def serialize(self, table):
        """CSV text of a loaded table, byte-identical to the bundled file."""
        buffer = io.StringIO()
        self.load(table).to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    def write(self, table, out_dir):
        """Re-serialise a table into out_dir under its bundled file name."""
        target = os.path.join(out_dir, self.entry(table)['file'])
        with open(target, 'w', newline='') as file:
            file.write(self.serialize(table))
        return target

    def bit_values(self, table='fig2_classical_ops'):
        """Ladder bit-strengths in table order."""
        return [int(b) for b in self.load(table)['b']]

    def logical_resources(self, schedule, b):
        """
        Logical workload of one schedule at bit-strength b.

        Args:
            schedule (str): 'low-width', 'low-t' or 'low-depth'
            b (int): Bit-strength on the ladder

        Returns:
            LogicalResources: Width, T count and T depth
        """
        if schedule not in SCHEDULE_TABLES:
            raise DatasetLookupError(f"unknown schedule {schedule!r}")
        row = self.row(SCHEDULE_TABLES[schedule], b)
        return LogicalResources(b=int(b), N_log=int(row['width']), T_count=int(row['t_count']),
                                T_depth=int(row['t_depth']), schedule=schedule)


def dataset_query(table, b, column, catalog=None):
    """Published value for (table, b, column) from the default catalog."""
    return (catalog or DatasetCatalog()).query(table, b, column)
