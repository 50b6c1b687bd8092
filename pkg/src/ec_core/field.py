"""
Prime-field arithmetic for the challenge curves.

Integer-level helpers (``legendre_int``, ``sqrt_mod_int``) back the hot
paths; ``FieldElement`` wraps them with modulus checking for the public API.
"""

import re
from dataclasses import dataclass

from src.utils.errors import ModulusMismatchError, NotInvertibleError, NonResidueError

_HEX_RE = re.compile(r'^[0-9A-Fa-f]+$')


def to_hex(value):
    """Uppercase hex without prefix, the card notation (e.g. 42 -> '2A')."""
    if value < 0:
        raise ValueError(f"cannot hex-encode negative value {value}")
    return format(value, 'X')


def from_hex(text):
    """
    Parse card-notation hex.

    Args:
        text (str): Hex digits, no prefix; leading zeros allowed

    Returns:
        int: Parsed value
    """
    if not isinstance(text, str) or not _HEX_RE.match(text.strip()):
        raise ValueError(f"invalid hex value: {text!r}")
    return int(text.strip(), 16)


def legendre_int(a, p):
    """Legendre symbol (a/p) by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _smallest_non_residue(p):
    z = 2
    while legendre_int(z, p) != -1:
        z += 1
    return z


def sqrt_mod_int(a, p):
    """
    Square root modulo an odd prime.

    p = 3 (mod 4) uses a^((p+1)/4); other primes use Tonelli-Shanks seeded
    with the smallest quadratic non-residue.

    Args:
        a (int): Quadratic residue or zero
        p (int): Odd prime

    Returns:
        int: y with y*y = a (mod p); the other root is p - y
    """
    a %= p
    if a == 0:
        return 0
    if legendre_int(a, p) != 1:
        raise NonResidueError(f"{to_hex(a)} is not a quadratic residue mod {to_hex(p)}")

    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)

    # Tonelli-Shanks: p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = _smallest_non_residue(p)
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


@dataclass(frozen=True)
class FieldElement:
    """
    Residue modulo a prime p, always held in canonical form 0 <= value < p.

    Attributes:
        value (int): Canonical representative
        p (int): Ambient prime modulus
    """
    value: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus must be at least 2, got {self.p}")
        object.__setattr__(self, 'value', self.value % self.p)

    def __int__(self):
        return self.value

    def __add__(self, other):
        return fe_add(self, other)

    def __sub__(self, other):
        return fe_sub(self, other)

    def __mul__(self, other):
        return fe_mul(self, other)

    def __neg__(self):
        return fe_neg(self)

    def __truediv__(self, other):
        return fe_mul(self, fe_inv(other))

    def hex(self):
        return to_hex(self.value)

    @classmethod
    def from_hex(cls, text, p):
        return cls(from_hex(text), p)


def _check_same(a, b):
    if a.p != b.p:
        raise ModulusMismatchError(
            f"modulus mismatch: {to_hex(a.p)} vs {to_hex(b.p)}")


def fe_add(a, b):
    _check_same(a, b)
    return FieldElement(a.value + b.value, a.p)


def fe_sub(a, b):
    _check_same(a, b)
    return FieldElement(a.value - b.value, a.p)


def fe_mul(a, b):
    _check_same(a, b)
    return FieldElement(a.value * b.value, a.p)


def fe_neg(a):
    return FieldElement(-a.value, a.p)


def fe_inv(a):
    """
    Multiplicative inverse.

    Args:
        a (FieldElement): Nonzero element

    Returns:
        FieldElement: a^-1 with a * a^-1 = 1
    """
    if a.value == 0:
        raise NotInvertibleError(f"inverse of zero mod {to_hex(a.p)}")
    return FieldElement(pow(a.value, -1, a.p), a.p)


def legendre(a):
    """Legendre symbol of a field element: 1, -1 or 0."""
    return legendre_int(a.value, a.p)


def sqrt_mod(a):
    """Square root of a residue as a FieldElement (see sqrt_mod_int)."""
    return FieldElement(sqrt_mod_int(a.value, a.p), a.p)
