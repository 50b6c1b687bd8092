"""
Tests for the counting module.
"""

import pytest

from src.ec_core.curve import mul_xy, on_curve_xy
from src.ladder.counting import (
    CountingMethod, select_method, count_points, count_points_exhaustive, count_points_bsgs,
    point_multiples_in_interval, random_point,
)
from src.ladder.primes import is_prime
from src.utils.errors import CountingInfeasibleError
from src.utils.rng import make_rng


def prime_order_fields(lo, hi):
    for p in range(lo | 1, hi, 2):
        if p > 3 and is_prime(p) and is_prime(count_points_exhaustive(p)):
            yield p


class TestCounting:
    """Test suite for point counting."""

    def test_published_orders(self):
        """Test exhaustive counts for the small published cards."""
        assert count_points(43) == 31
        assert count_points(163) == 139
        assert count_points(2089) == 2143
        assert count_points(32803) == 32497

    def test_method_selection(self):
        """Test the bit-length thresholds."""
        assert select_method(6) is CountingMethod.EXHAUSTIVE
        assert select_method(20) is CountingMethod.EXHAUSTIVE
        assert select_method(24) is CountingMethod.BSGS_HASSE
        assert select_method(80) is CountingMethod.BSGS_HASSE
        assert select_method(96) is CountingMethod.VERIFY_ONLY
        assert select_method(64, cap=48) is CountingMethod.VERIFY_ONLY

    def test_verify_only_raises(self):
        """Test that counting beyond the cap is refused."""
        with pytest.raises(CountingInfeasibleError):
            count_points(0xFFFFFFFFFFFFFFFFFFFFE3B3)

    def test_bsgs_matches_exhaustive(self):
        """Test BSGS against exhaustive counting for prime-order fields below 2^12."""
        for p in prime_order_fields(32, 1 << 12):
            assert count_points_bsgs(p) == count_points_exhaustive(p)

    @pytest.mark.slow
    def test_bsgs_matches_exhaustive_to_16_bits(self):
        """Test BSGS against exhaustive counting for every prime-order field up to 2^16."""
        for p in prime_order_fields(1 << 12, 1 << 16):
            assert count_points_bsgs(p) == count_points_exhaustive(p)

    def test_bsgs_24_bit_card(self):
        """Test BSGS on the 24-bit published field."""
        assert count_points(16777213) == 16770451

    def test_point_multiples(self):
        """Test that the found multiples annihilate the point."""
        p = 2089
        rng = make_rng(7)
        P = random_point(p, rng)
        assert on_curve_xy(p, P)
        multiples = point_multiples_in_interval(p, P, 1990, 2190)
        assert 2143 in multiples
        for M in multiples:
            assert mul_xy(p, M, P) is None
