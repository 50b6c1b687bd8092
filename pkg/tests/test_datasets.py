"""
Tests for the datasets module.
"""

import pytest

from src.analysis.datasets import DatasetCatalog, dataset_query, parse_duration, coerce
from src.utils.config import DATA_ENV_VAR
from src.utils.errors import DatasetLookupError


class TestDatasetCatalog:
    """Test suite for the bundled tables."""

    def setup_method(self):
        """Set up the bundled catalog."""
        self.catalog = DatasetCatalog()

    def test_manifest(self):
        """Test that the manifest lists every table with its file."""
        tables = self.catalog.tables()
        assert len(tables) == 24
        assert 'repcat' in tables and 'fig1_classical_records' in tables
        assert self.catalog.entry('fig1_classical_records')['key'] == 'year'

    def test_round_trip(self):
        """Test that every table re-serialises byte for byte."""
        for table in self.catalog.tables():
            with open(self.catalog.path(table), 'r', newline='') as file:
                original = file.read()
            assert self.catalog.serialize(table) == original, table

    def test_published_values(self):
        """Test lookups against the published tables."""
        assert dataset_query('repcat', 256, 'N_phys') == 126260
        assert dataset_query('ldpccat', 256, 'N_phys') == 38581
        assert dataset_query('surface_lowdepth_aggressive', 6, 'time_s') == 2.73
        assert self.catalog.query('repcat', 6, 't') == '513 ms'
        assert self.catalog.query('fig1_classical_records', '1997.1', 'label') == 'ECCp-79'

    def test_lookup_errors(self):
        """Test unknown tables, rows and columns."""
        with pytest.raises(DatasetLookupError):
            self.catalog.query('toffoli_table', 6, 'N_phys')
        with pytest.raises(DatasetLookupError):
            self.catalog.query('repcat', 7, 'N_phys')
        with pytest.raises(DatasetLookupError):
            self.catalog.query('repcat', 6, 'qubits')

    def test_logical_resources(self):
        """Test the schedule rows used by the estimator."""
        logical = self.catalog.logical_resources('low-t', 6)
        assert (logical.N_log, logical.T_count, logical.T_depth) == (83, 213920, 88617)
        with pytest.raises(DatasetLookupError):
            self.catalog.logical_resources('low-space', 6)

    def test_bit_values(self):
        """Test the ladder rungs."""
        bits = self.catalog.bit_values()
        assert bits[0] == 6 and bits[-1] == 256
        assert len(bits) == 20

    def test_write(self, tmp_path):
        """Test writing one table into a directory."""
        target = self.catalog.write('repcat', str(tmp_path))
        with open(target, 'r', newline='') as file:
            assert file.read() == self.catalog.serialize('repcat')

    def test_data_dir_override(self, tmp_path, monkeypatch):
        """Test the environment override pointing at a directory without a manifest."""
        monkeypatch.setenv(DATA_ENV_VAR, str(tmp_path))
        with pytest.raises(FileNotFoundError):
            DatasetCatalog()


class TestParsing:
    """Test suite for verbatim value parsing."""

    def test_parse_duration(self):
        """Test the units of the cat tables."""
        assert parse_duration('513 ms') == pytest.approx(0.513)
        assert parse_duration('2 s') == 2.0
        assert parse_duration('3 min') == 180.0
        assert parse_duration('7 h') == 25200.0
        assert parse_duration('1 d') == 86400.0
        with pytest.raises(ValueError):
            parse_duration('soon')

    def test_cat_table_durations(self):
        """Test that every duration cell of the cat tables parses and hours are written h."""
        catalog = DatasetCatalog()
        for table in ('repcat', 'ldpccat'):
            frame = catalog.load(table)
            for column in ('t', 't_exp'):
                for text in frame[column]:
                    assert parse_duration(text) > 0, (table, column, text)
                    assert 'hour' not in text
            assert 'normalised to h' in catalog.entry(table)['notes']
        assert catalog.query('ldpccat', 256, 't') == '17 h'

    def test_coerce(self):
        """Test number parsing from verbatim text."""
        assert coerce('126260') == 126260
        assert coerce('2.73') == 2.73
        assert coerce('1.6e1') == 16.0
        assert coerce('7 h') == '7 h'
