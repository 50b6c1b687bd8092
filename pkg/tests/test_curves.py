"""
Tests for the curves module.
"""

import io

from src.analysis.curves import emit_curves, CLASSICAL_COLUMNS
from src.analysis.datasets import DatasetCatalog


class TestEmitCurves:
    """Test suite for CSV curve emission."""

    def setup_method(self):
        """Set up the bundled catalog."""
        self.catalog = DatasetCatalog()

    def test_classical_matches_published_series(self):
        """Test the classical series against the published points to four significant figures."""
        buffer = io.StringIO()
        frame = emit_curves(self.catalog.bit_values(), buffer)
        published = self.catalog.load('fig2_classical_ops')
        for ours, theirs in zip(frame['classical_ops'], published['ops']):
            assert float(f"{float(ours):.3e}") == float(f"{float(theirs):.3e}")
        assert buffer.getvalue().startswith(",".join(CLASSICAL_COLUMNS) + "\n")

    def test_empty_range(self):
        """Test that no bit values give a header-only file."""
        buffer = io.StringIO()
        emit_curves([], buffer)
        assert buffer.getvalue() == "b,classical_ops,wall_seconds\n"

    def test_deterministic(self, tmp_path):
        """Test that repeated emission is byte-identical."""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_curves([6, 64, 256], str(first))
        emit_curves([6, 64, 256], str(second))
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text().splitlines()[1] == "6,8.000000e+00,8.000000e-08"

    def test_estimator_series(self):
        """Test the estimator columns."""
        buffer = io.StringIO()
        frame = emit_curves([6, 8], buffer, series='estimator', catalog=self.catalog)
        assert list(frame.columns) == ['b', 'N_phys', 't']
        assert len(frame) == 2
        assert int(frame['N_phys'][1]) > int(frame['N_phys'][0])
