"""
Group law for y^2 = x^3 + 7 over F_p.

Affine coordinates are the reference. The integer-level functions work on
(x, y) tuples with ``None`` for the point at infinity and are what the
solvers and point counting call in their inner loops; ``CurvePoint`` and
the ``point_*`` functions are the checked public surface.
"""

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from src.ec_core.field import FieldElement, to_hex
from src.utils.errors import ModulusMismatchError, PointNotOnCurveError

CURVE_B = 7


# ---------------------------------------------------------------------------
# Integer-level affine arithmetic
# ---------------------------------------------------------------------------

def on_curve_xy(p, P):
    if P is None:
        return True
    x, y = P
    return 0 <= x < p and 0 <= y < p and (y * y - x * x * x - CURVE_B) % p == 0


def neg_xy(p, P):
    if P is None:
        return None
    x, y = P
    return (x, (-y) % p)


def double_xy(p, P):
    if P is None:
        return None
    x, y = P
    if y == 0:
        return None
    lam = 3 * x * x * pow(2 * y, -1, p) % p
    x3 = (lam * lam - 2 * x) % p
    return (x3, (lam * (x - x3) - y) % p)


def add_xy(p, P, Q):
    """Chord-and-tangent addition on affine tuples."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        return double_xy(p, P)
    lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def mul_xy(p, k, P):
    """Left-to-right double-and-add; [0]P is infinity."""
    if k < 0:
        return mul_xy(p, -k, neg_xy(p, P))
    result = None
    for bit in bin(k)[2:]:
        result = double_xy(p, result)
        if bit == '1':
            result = add_xy(p, result, P)
    return result


# ---------------------------------------------------------------------------
# Jacobian fast path (X, Y, Z) ~ (X/Z^2, Y/Z^3); Z == 0 is infinity
# ---------------------------------------------------------------------------

def _jacobian_double(p, J):
    X, Y, Z = J
    if Z == 0 or Y == 0:
        return (1, 1, 0)
    YY = Y * Y % p
    S = 4 * X * YY % p
    M = 3 * X * X % p
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * YY * YY) % p
    Z3 = 2 * Y * Z % p
    return (X3, Y3, Z3)


def _jacobian_add_affine(p, J, P):
    """Mixed addition J + P with P affine and finite."""
    X1, Y1, Z1 = J
    x2, y2 = P
    if Z1 == 0:
        return (x2, y2, 1)
    Z1Z1 = Z1 * Z1 % p
    U2 = x2 * Z1Z1 % p
    S2 = y2 * Z1 * Z1Z1 % p
    H = (U2 - X1) % p
    R = (S2 - Y1) % p
    if H == 0:
        if R == 0:
            return _jacobian_double(p, J)
        return (1, 1, 0)
    HH = H * H % p
    HHH = H * HH % p
    V = X1 * HH % p
    X3 = (R * R - HHH - 2 * V) % p
    Y3 = (R * (V - X3) - Y1 * HHH) % p
    Z3 = Z1 * H % p
    return (X3, Y3, Z3)


def _jacobian_to_affine(p, J):
    X, Y, Z = J
    if Z == 0:
        return None
    zinv = pow(Z, -1, p)
    zinv2 = zinv * zinv % p
    return (X * zinv2 % p, Y * zinv2 * zinv % p)


def mul_xy_jacobian(p, k, P):
    """Double-and-add in Jacobian coordinates; one inversion at the end."""
    if P is None or k == 0:
        return None
    if k < 0:
        return mul_xy_jacobian(p, -k, neg_xy(p, P))
    J = (1, 1, 0)
    for bit in bin(k)[2:]:
        J = _jacobian_double(p, J)
        if bit == '1':
            J = _jacobian_add_affine(p, J, P)
    return _jacobian_to_affine(p, J)


# ---------------------------------------------------------------------------
# Public point type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    """
    Affine point on y^2 = x^3 + 7, or the point at infinity (x and y None).

    Attributes:
        x (FieldElement): Abscissa, None for infinity
        y (FieldElement): Ordinate, None for infinity
    """
    x: Optional[FieldElement] = None
    y: Optional[FieldElement] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None and self.x.p != self.y.p:
            raise ModulusMismatchError("coordinates from different fields")

    @property
    def is_infinity(self):
        return self.x is None

    @property
    def p(self):
        return None if self.x is None else self.x.p

    @classmethod
    def from_ints(cls, x, y, p):
        return cls(FieldElement(x, p), FieldElement(y, p))

    @classmethod
    def from_xy(cls, P, p):
        """Build from an integer tuple (or None for infinity)."""
        if P is None:
            return INFINITY
        return cls.from_ints(P[0], P[1], p)

    def xy(self):
        """Integer tuple form, None for infinity."""
        if self.x is None:
            return None
        return (self.x.value, self.y.value)

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        return point_add(self, other)

    def __repr__(self):
        if self.x is None:
            return "CurvePoint(Infinity)"
        return f"CurvePoint({to_hex(self.x.value)}, {to_hex(self.y.value)})"


INFINITY = CurvePoint()


def hasse_interval(p):
    """Integer bounds [p + 1 - 2*ceil(sqrt p), p + 1 + 2*ceil(sqrt p)]."""
    s = isqrt(p)
    if s * s < p:
        s += 1
    return p + 1 - 2 * s, p + 1 + 2 * s


@dataclass(frozen=True)
class GroupContext:
    """
    Curve group over F_p with (optionally) known order n.

    Attributes:
        p (int): Prime modulus
        n (int): Group order, or None when unknown
    """
    p: int
    n: Optional[int] = None

    def __post_init__(self):
        if self.n is not None:
            lo, hi = hasse_interval(self.p)
            if not lo <= self.n <= hi:
                raise ValueError(
                    f"order {to_hex(self.n)} outside Hasse interval for p={to_hex(self.p)}")

    @property
    def b(self):
        """Bit-length ceil(log2 n) of the group order."""
        if self.n is None:
            return None
        return (self.n - 1).bit_length()


def _field_of(*points):
    p = None
    for P in points:
        if P.is_infinity:
            continue
        if p is None:
            p = P.p
        elif P.p != p:
            raise ModulusMismatchError(f"points over different fields {to_hex(p)} and {to_hex(P.p)}")
    return p


def is_on_curve(P):
    """True iff P is infinity or satisfies y^2 = x^3 + 7."""
    if P.is_infinity:
        return True
    return on_curve_xy(P.p, P.xy())


def negate(P):
    """(x, y) -> (x, p - y); infinity is its own negation."""
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def point_add(P, Q, validate=False):
    """
    Group law with infinity, doubling and inverse pairs handled.

    Args:
        P (CurvePoint): First operand
        Q (CurvePoint): Second operand
        validate (bool): Reject off-curve operands

    Returns:
        CurvePoint: P + Q
    """
    p = _field_of(P, Q)
    if validate:
        for R in (P, Q):
            if not is_on_curve(R):
                raise PointNotOnCurveError(f"{R!r} is not on y^2 = x^3 + 7")
    if p is None:
        return INFINITY
    return CurvePoint.from_xy(add_xy(p, P.xy(), Q.xy()), p)


def scalar_mul(k, P, ctx=None, jacobian=False):
    """
    [k]P by double-and-add.

    Args:
        k (int): Scalar, k >= 0 (reduced mod n when ctx carries n)
        P (CurvePoint): Base point
        ctx (GroupContext): Optional context supplying the order
        jacobian (bool): Use the Jacobian path instead of affine

    Returns:
        CurvePoint: [k]P
    """
    if ctx is not None and ctx.n is not None:
        k %= ctx.n
    if k < 0:
        raise ValueError(f"scalar must be non-negative, got {k}")
    if P.is_infinity or k == 0:
        return INFINITY
    mul = mul_xy_jacobian if jacobian else mul_xy
    return CurvePoint.from_xy(mul(P.p, k, P.xy()), P.p)
