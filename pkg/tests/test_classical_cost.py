"""
Tests for the classical_cost module.
"""

import math

import pytest

from src.analysis.classical_cost import (
    classical_ops, classical_walltime, cost_point, describe_seconds, SECONDS_PER_YEAR,
)


class TestClassicalCost:
    """Test suite for the rho operation model."""

    def test_figure_values(self):
        """Test published curve points."""
        assert classical_ops(6) == 8
        assert float(f"{classical_ops(112):.3e}") == 7.206e16
        assert float(f"{classical_ops(256):.3e}") == 3.403e38

    def test_variants(self):
        """Test the expected-work constants."""
        assert math.isclose(classical_ops(32, 'rho'), math.sqrt(math.pi / 2) * 2 ** 16)
        assert math.isclose(classical_ops(32, 'rho_negation'), math.sqrt(math.pi / 4) * 2 ** 16)
        with pytest.raises(ValueError):
            classical_ops(32, 'kangaroo')
        with pytest.raises(ValueError):
            classical_ops(0)

    def test_walltime(self):
        """Test conversion at the reference rate."""
        assert classical_walltime(1e8) == 1.0
        assert math.isclose(classical_walltime(3.15576e15), SECONDS_PER_YEAR)
        years = classical_walltime(classical_ops(112)) / SECONDS_PER_YEAR
        assert 22 < years < 23.5
        with pytest.raises(ValueError):
            classical_walltime(0)

    def test_cost_point(self):
        """Test the combined record."""
        point = cost_point(64)
        assert point.ops == 2.0 ** 32
        assert point.wall_seconds == 2.0 ** 32 / 1e8

    def test_describe_seconds(self):
        """Test tick labels."""
        assert describe_seconds(0.5) == '< 1 s'
        assert describe_seconds(1.0) == '1 s'
        assert describe_seconds(SECONDS_PER_YEAR * 30) == '1 yr'
        assert describe_seconds(7.2e8) == '1 yr'
