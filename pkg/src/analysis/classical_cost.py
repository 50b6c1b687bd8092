"""
Classical cost model: expected rho group operations per bit-strength and
their wall-clock equivalent at a reference rate.
"""

import math
from dataclasses import dataclass

REFERENCE_RATE = 1e8          # group operations per second
SECONDS_PER_YEAR = 3.15576e7  # Julian year

VARIANTS = ('figure', 'rho', 'rho_negation')

# Wall-clock reference lines, as operation counts at REFERENCE_RATE.
TIME_TICKS = (
    ('1 s', 1e8),
    ('1 min', 6e9),
    ('1 h', 3.6e11),
    ('1 d', 8.64e12),
    ('1 mo', 2.592e14),
    ('1 yr', 3.15576e15),
    ('1 kyr', 3.15576e18),
    ('1 Myr', 3.15576e21),
    ('1 Gyr', 3.15576e24),
)


@dataclass(frozen=True)
class ClassicalCostPoint:
    """
    One point of the classical cost curve.

    Attributes:
        b (int): Bit-strength
        ops (float): Expected group operations
        wall_seconds (float): ops / rate
    """
    b: int
    ops: float
    wall_seconds: float


def classical_ops(b, variant='figure'):
    """
    Expected group operations against a b-bit group (n = 2^b).

    Args:
        b (int): Bit-strength, b >= 1
        variant (str): 'figure' for 2^(b/2), 'rho' for sqrt(pi n / 2),
            'rho_negation' for sqrt(pi n / 4)

    Returns:
        float: Operation count
    """
    if b < 1:
        raise ValueError(f"bit-strength must be positive, got {b}")
    if variant == 'figure':
        return 2.0 ** (b / 2)
    if variant == 'rho':
        return math.sqrt(math.pi / 2) * 2.0 ** (b / 2)
    if variant == 'rho_negation':
        return math.sqrt(math.pi / 4) * 2.0 ** (b / 2)
    raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")


def classical_walltime(ops, rate=REFERENCE_RATE):
    """Seconds needed for ops group operations at rate operations per second."""
    if ops <= 0 or rate <= 0:
        raise ValueError("operations and rate must be positive")
    return ops / rate


def cost_point(b, variant='figure', rate=REFERENCE_RATE):
    ops = classical_ops(b, variant)
    return ClassicalCostPoint(b=b, ops=ops, wall_seconds=classical_walltime(ops, rate))


def describe_seconds(seconds):
    """Largest tick label not exceeding the duration ('< 1 s' below the first)."""
    label = '< 1 s'
    for tick_label, tick_ops in TIME_TICKS:
        if seconds * REFERENCE_RATE >= tick_ops:
            label = tick_label
    return label
