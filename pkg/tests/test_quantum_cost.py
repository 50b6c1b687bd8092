"""
Tests for the quantum_cost module.
"""

import math
from types import SimpleNamespace

import pytest

from src.analysis.quantum_cost import (
    CodeParams, LogicalResources, logical_error, min_distance, physical_footprint, runtime,
    repcat_logical_z, repcat_min_distance, estimate_resources, hardware_params, t_ops,
)
from src.utils.errors import ParameterError


class TestSurfaceCode:
    """Test suite for the surface-code estimator."""

    def setup_method(self):
        """Set up default assumptions."""
        self.params = CodeParams()

    def test_logical_error(self):
        """Test the suppression formula."""
        assert math.isclose(logical_error(9, self.params), 1e-6)
        assert math.isclose(logical_error(3, self.params), 1e-3)
        with pytest.raises(ParameterError):
            logical_error(4, self.params)

    def test_threshold_boundary(self):
        """Test that p = p_th leaves only the prefactor."""
        boundary = SimpleNamespace(C=0.1, p=1e-2, p_th=1e-2)
        for d in (3, 9, 25):
            assert logical_error(d, boundary) == 0.1

    def test_min_distance(self):
        """Test the smallest distance meeting the failure budget."""
        assert min_distance(1e6, self.params) == 13
        assert min_distance(1, self.params) == 3
        with pytest.raises(ParameterError):
            min_distance(0, self.params)

    def test_min_distance_is_tight(self):
        """Test that d meets the budget and d - 2 does not."""
        for operations in (1e3, 1e6, 3.3e9, 1e12):
            d = min_distance(operations, self.params)
            assert operations * logical_error(d, self.params) <= self.params.eps_target * (1 + 1e-12)
            if d > 3:
                assert operations * logical_error(d - 2, self.params) > self.params.eps_target

    def test_logical_error_log_linear(self):
        """Test that log logical_error falls by log(p / p_th) per step of two in d."""
        slope = math.log(self.params.p / self.params.p_th)
        for d in range(3, 41, 2):
            drop = math.log(logical_error(d + 2, self.params)) - math.log(logical_error(d, self.params))
            assert drop == pytest.approx(slope, rel=1e-12)

    def test_footprint(self):
        """Test data and factory qubits."""
        assert physical_footprint(83, 6, 9, 9, self.params) == 13932
        assert physical_footprint(83, 0, 9, 9, self.params) == 2 * 81 * 83

    def test_runtime(self):
        """Test the depth and supply terms."""
        seconds, limiting = runtime(1e6, 1e5, 6, 9, self.params)
        assert math.isclose(seconds, 9.0)
        assert limiting == 'depth'
        seconds, limiting = runtime(1e3, 1e8, 6, 9, self.params)
        assert limiting == 'supply'
        assert math.isclose(seconds, 1e8 * 1e-6 / 0.06)
        assert runtime(1e6, 1e12, 0, 9, self.params) == (9.0 * 1e6 * 1e-6, 'depth')

    def test_equal_terms(self):
        """Test that equal terms give an unambiguous time."""
        seconds, limiting = runtime(1e6, 9 * 0.06 * 1e6, 6, 9, self.params)
        assert math.isclose(seconds, 9.0)
        assert limiting in ('depth', 'supply')

    def test_parameter_validation(self):
        """Test rejected assumptions."""
        with pytest.raises(ParameterError):
            CodeParams(p=2e-2)
        with pytest.raises(ParameterError):
            CodeParams(p=1e-2)
        with pytest.raises(ParameterError):
            CodeParams(tau=0)
        with pytest.raises(ParameterError):
            CodeParams(t_ops_mode='toffoli')

    def test_presets(self):
        """Test hardware presets and overrides."""
        assert hardware_params('aggressive').p == 1e-4
        assert hardware_params('conservative', tau=None).tau == 1e-6
        assert hardware_params('conservative', factories=2).factories == 2
        with pytest.raises(ParameterError):
            hardware_params('optimistic')

    def test_estimate(self):
        """Test the chained surface estimate."""
        logical = LogicalResources(b=6, N_log=83, T_count=213920, T_depth=88617, schedule='low-t')
        estimate = estimate_resources(logical, self.params)
        assert estimate.d_data == min_distance(213920, self.params)
        assert estimate.N_phys == physical_footprint(83, 6, estimate.d_data, estimate.d_data, self.params)
        assert estimate.to_dict()['code'] == 'surface'

    def test_t_ops_mode(self):
        """Test counting T depth against the budget."""
        logical = LogicalResources(b=6, N_log=83, T_count=100, T_depth=50, schedule='low-t')
        assert t_ops(logical, self.params) == 100
        assert t_ops(logical, CodeParams(t_ops_mode='t_count+t_depth')) == 150


class TestRepetitionCat:
    """Test suite for the repetition-cat estimator."""

    def test_logical_z(self):
        """Test the majority-vote failure probability."""
        assert repcat_logical_z(0.1, 1) == 0.1
        assert repcat_logical_z(0.0, 5) == 0
        assert math.isclose(repcat_logical_z(0.1, 3), 0.028)
        with pytest.raises(ParameterError):
            repcat_logical_z(0.1, 2)

    def test_distance_and_footprint(self):
        """Test that the repetition-cat footprint is linear in d."""
        params = CodeParams()
        logical = LogicalResources(b=6, N_log=67, T_count=213920, T_depth=88617, schedule='low-t')
        estimate = estimate_resources(logical, params, code='repcat')
        d = repcat_min_distance(213920, params)
        assert estimate.d_data == d
        assert estimate.N_phys == math.ceil(2 * d * 67 + d * 6)
        with pytest.raises(ParameterError):
            estimate_resources(logical, params, code='ldpc')

    def test_complement(self):
        """Test repcat(1 - p, d) = 1 - repcat(p, d) for odd d."""
        for d in (1, 3, 5, 7, 9):
            for p_z in (0.0, 0.01, 0.1, 0.3, 0.5):
                assert repcat_logical_z(1 - p_z, d) == pytest.approx(1 - repcat_logical_z(p_z, d), abs=1e-12)

    def test_monotone(self):
        """Test growth in p_Z on [0, 1/2] and decay in d for p_Z < 1/2."""
        grid = [i / 100 for i in range(51)]
        for d in (3, 5, 7):
            values = [repcat_logical_z(p_z, d) for p_z in grid]
            assert all(low < high for low, high in zip(values, values[1:]))
        for p_z in (0.01, 0.1, 0.3, 0.49):
            values = [repcat_logical_z(p_z, d) for d in range(1, 21, 2)]
            assert all(high > low for high, low in zip(values, values[1:]))
