"""
Point counting for y^2 = x^3 + 7 over F_p.

Exhaustive counting covers small fields; baby-step giant-step over the
Hasse interval covers fields up to a configurable bit cap. Beyond the cap
the order can only be checked, not computed.
"""

from enum import Enum
from math import gcd

from src.ec_core.curve import add_xy, mul_xy, hasse_interval, CURVE_B
from src.ec_core.field import legendre_int, sqrt_mod_int, to_hex
from src.utils.errors import CountingInfeasibleError, PointCountingError
from src.utils.logger import setup_logger
from src.utils.rng import make_rng, random_below, MASK64, STREAM_COUNTING

logger = setup_logger()

EXHAUSTIVE_MAX_BITS = 20
DEFAULT_COUNTING_CAP = 80
DEFAULT_BSGS_RETRIES = 16


class CountingMethod(Enum):
    """How the group order is obtained at a given bit-length."""
    EXHAUSTIVE = 'exhaustive'
    BSGS_HASSE = 'bsgs-hasse'
    VERIFY_ONLY = 'verify-only'


def select_method(k, cap=DEFAULT_COUNTING_CAP):
    """
    Counting method for k-bit primes.

    Args:
        k (int): Bit-length of p
        cap (int): Largest k for which BSGS counting is attempted

    Returns:
        CountingMethod: Selected method
    """
    if k <= EXHAUSTIVE_MAX_BITS:
        return CountingMethod.EXHAUSTIVE
    if k <= cap:
        return CountingMethod.BSGS_HASSE
    return CountingMethod.VERIFY_ONLY


def count_points_exhaustive(p):
    """n = 1 + sum over x of (1 + legendre(x^3 + 7)), via a table of squares."""
    residues = bytearray(p)
    for y in range(1, (p + 1) // 2):
        residues[y * y % p] = 1
    n = 1
    for x in range(p):
        f = (x * x * x + CURVE_B) % p
        if f == 0:
            n += 1
        elif residues[f]:
            n += 2
    return n


def _fourth_root_ceil(value):
    r = int(round(value ** 0.25))
    while r ** 4 < value:
        r += 1
    while r > 1 and (r - 1) ** 4 >= value:
        r -= 1
    return r


def random_point(p, rng):
    """Uniformly drawn finite point (x, y) on the curve."""
    while True:
        x = random_below(rng, p)
        f = (x * x * x + CURVE_B) % p
        if legendre_int(f, p) == -1:
            continue
        y = sqrt_mod_int(f, p)
        if y and random_below(rng, 2):
            y = p - y
        return (x, y)


def _parity_key(P):
    return (P[0], P[1] & 1)


def point_multiples_in_interval(p, P, lo, hi, baby=None):
    """
    Every M in [lo, hi] with [M]P = infinity, by baby-step giant-step.

    Baby steps are keyed by x-coordinate plus y-parity. When P has order
    smaller than the baby-step count the order falls out of the table build.

    Args:
        p (int): Field prime
        P (tuple): Finite point
        lo (int): Interval start
        hi (int): Interval end (inclusive)
        baby (int): Baby-step count, default ceil((4p)^(1/4))

    Returns:
        list: Sorted multiples of ord(P) inside the interval
    """
    s = baby or _fourth_root_ceil(4 * p)
    table = {}
    R = None
    for j in range(s):
        if j > 0:
            R = add_xy(p, R, P)
            if R is None:
                return _multiples_of(j, lo, hi)
            key = _parity_key(R)
            if key in table:
                return _multiples_of(j - table[key], lo, hi)
            table[key] = j

    giant = mul_xy(p, s, P)
    current = mul_xy(p, lo, P)
    found = []
    M = lo
    while M <= hi:
        if current is None:
            found.append(M)
        else:
            x, y = current
            j = table.get((x, ((p - y) % p) & 1))
            if j is not None and M + j <= hi:
                found.append(M + j)
        current = add_xy(p, current, giant)
        M += s
    return sorted(set(found))


def _multiples_of(order, lo, hi):
    first = -(-lo // order) * order
    return list(range(first, hi + 1, order))


def count_points_bsgs(p, retries=DEFAULT_BSGS_RETRIES, rng=None):
    """
    Group order from point orders over the Hasse interval.

    Random points are drawn until the lcm of their orders has exactly one
    multiple inside the interval.

    Args:
        p (int): Field prime
        retries (int): Number of random points before giving up
        rng (numpy.random.Generator): Source of points, default seeded by p

    Returns:
        int: |E(F_p)|
    """
    lo, hi = hasse_interval(p)
    lo = max(lo, 1)
    rng = rng or make_rng(p & MASK64, STREAM_COUNTING)
    lcm = 1
    for attempt in range(retries):
        P = random_point(p, rng)
        multiples = point_multiples_in_interval(p, P, lo, hi)
        if not multiples:
            raise PointCountingError(f"no multiple of ord(P) in Hasse interval for p={to_hex(p)}")
        if len(multiples) == 1:
            return multiples[0]
        order = multiples[1] - multiples[0]
        lcm = lcm * order // gcd(lcm, order)
        candidates = _multiples_of(lcm, lo, hi)
        if len(candidates) == 1:
            return candidates[0]
        logger.debug(f"p={to_hex(p)} attempt {attempt}: {len(candidates)} candidate orders remain")
    raise PointCountingError(
        f"group order for p={to_hex(p)} still ambiguous after {retries} points")


def count_points(p, method=None, cap=DEFAULT_COUNTING_CAP, retries=DEFAULT_BSGS_RETRIES):
    """
    Exact |E(F_p)| for y^2 = x^3 + 7.

    Args:
        p (int): Prime, p > 3
        method (CountingMethod): Override of the bit-length based choice
        cap (int): BSGS bit cap
        retries (int): BSGS retry budget

    Returns:
        int: Group order
    """
    if p <= 3:
        raise ValueError(f"p must exceed 3, got {p}")
    method = method or select_method(p.bit_length(), cap)
    if method is CountingMethod.EXHAUSTIVE:
        return count_points_exhaustive(p)
    if method is CountingMethod.BSGS_HASSE:
        return count_points_bsgs(p, retries)
    raise CountingInfeasibleError(
        f"{p.bit_length()}-bit field is beyond the counting cap of {cap} bits; use verify mode")
