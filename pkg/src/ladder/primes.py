"""
Primality testing and integer factorisation used by card construction.
"""

from math import gcd

from src.utils.rng import make_rng, random_range, MASK64, STREAM_PRIMALITY, STREAM_FACTOR

# Deterministic Miller-Rabin witnesses; correct for every m < 3.3e24.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)
RANDOM_ROUNDS = 64
TRIAL_DIVISION_LIMIT = 1 << 12
DEFAULT_FACTOR_BUDGET = 1 << 20


def _miller_rabin_round(m, d, s, a):
    x = pow(a, d, m)
    if x == 1 or x == m - 1:
        return True
    for _ in range(s - 1):
        x = x * x % m
        if x == m - 1:
            return True
    return False


def is_prime(m):
    """
    Miller-Rabin primality test.

    Deterministic below 2^64; above that, 64 rounds with witnesses drawn from
    a stream seeded by m itself, so the answer is reproducible.

    Args:
        m (int): Candidate

    Returns:
        bool: True if m is (probably, above 2^64) prime
    """
    if m < 2:
        return False
    for q in _SMALL_PRIMES:
        if m == q:
            return True
        if m % q == 0:
            return False

    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if m < (1 << 64):
        return all(_miller_rabin_round(m, d, s, a) for a in _DETERMINISTIC_BASES)

    rng = make_rng(m & MASK64, STREAM_PRIMALITY)
    for _ in range(RANDOM_ROUNDS):
        a = random_range(rng, 2, m - 1)
        if not _miller_rabin_round(m, d, s, a):
            return False
    return True


def _pollard_brent(m, budget, rng):
    """
    One non-trivial factor of composite m, or None when the budget runs out.
    """
    if m % 2 == 0:
        return 2
    steps = 0
    while steps < budget:
        y = random_range(rng, 1, m)
        c = random_range(rng, 1, m)
        batch = 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and steps < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % m
            steps += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % m
                    q = q * abs(x - y) % m
                g = gcd(q, m)
                k += batch
            steps += min(batch, r)
            r *= 2
        if g == m:
            # batch overshot; walk back one step at a time
            while True:
                ys = (ys * ys + c) % m
                g = gcd(abs(x - ys), m)
                if g > 1:
                    break
        if 1 < g < m:
            return g
    return None


def factorize(m, budget=DEFAULT_FACTOR_BUDGET):
    """
    Factor m by trial division and Pollard-Brent rho.

    Args:
        m (int): Integer >= 1
        budget (int): Rho iteration budget per composite factor

    Returns:
        tuple: (dict prime -> exponent, bool complete). Incomplete results
        keep any unsplit composite under its own key.
    """
    factors = {}
    for q in range(2, TRIAL_DIVISION_LIMIT):
        if q * q > m:
            break
        while m % q == 0:
            factors[q] = factors.get(q, 0) + 1
            m //= q
    complete = True
    rng = make_rng(m & MASK64, STREAM_FACTOR)
    pending = [m] if m > 1 else []
    while pending:
        f = pending.pop()
        if is_prime(f):
            factors[f] = factors.get(f, 0) + 1
            continue
        g = _pollard_brent(f, budget, rng)
        if g is None:
            factors[f] = factors.get(f, 0) + 1
            complete = False
            continue
        pending.extend([g, f // g])
    return factors, complete
