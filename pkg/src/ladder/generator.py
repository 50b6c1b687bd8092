"""
Deterministic construction of ladder cards.

For a target bit-length k, k-bit primes are scanned in order and the first
whose curve y^2 = x^3 + 7 has prime, non-anomalous order is accepted. Small
rungs (k <= ASCENDING_MAX_K) scan upward from 2^(k-1), larger ones downward
from 2^k; this is the order that reproduces the published cards. The
generator is derived from the secp256k1 base-point abscissa and only the
secret d depends on the seed.
"""

from concurrent.futures import ProcessPoolExecutor

from src.ec_core.curve import CurvePoint, mul_xy, CURVE_B
from src.ec_core.field import legendre_int, sqrt_mod_int, to_hex
from src.ladder.card import ChallengeCard
from src.ladder.counting import (
    CountingMethod, select_method, count_points, DEFAULT_COUNTING_CAP, DEFAULT_BSGS_RETRIES,
)
from src.ladder.primes import is_prime, factorize, DEFAULT_FACTOR_BUDGET
from src.utils.errors import LadderError, CountingInfeasibleError, PointCountingError
from src.utils.logger import setup_logger
from src.utils.rng import make_rng, random_below, DEFAULT_SEED, STREAM_SECRET

logger = setup_logger()

SECP256K1_GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
MIN_K = 6
MAX_K = 256
ASCENDING_MAX_K = 16


def embedding_degree(p, n, budget=DEFAULT_FACTOR_BUDGET):
    """
    Multiplicative order of p modulo the prime n.

    Args:
        p (int): Field prime
        n (int): Prime group order, not dividing p
        budget (int): Rho factoring budget for n - 1

    Returns:
        int: ord_n(p), or None when n - 1 could not be fully factored
    """
    if p % n == 0:
        raise ValueError(f"n={to_hex(n)} divides p={to_hex(p)}")
    factors, complete = factorize(n - 1, budget)
    if not complete:
        logger.debug(f"embedding degree for n={to_hex(n)} unverified: n - 1 not fully factored")
        return None
    order = n - 1
    for q in factors:
        while order % q == 0 and pow(p, order // q, n) == 1:
            order //= q
    return order


def canonical_generator(p, k, n=None):
    """
    Generator derived from the secp256k1 base-point abscissa.

    Starts from x0 mod 2^k and descends (wrapping modulo 2^k) to the first
    x < p with x^3 + 7 a nonzero square.

    Args:
        p (int): Accepted field prime
        k (int): Bit-length
        n (int): Group order; when given, candidates with [n]G != O are skipped

    Returns:
        CurvePoint: Canonical generator
    """
    modulus = 1 << k
    x = SECP256K1_GX % modulus
    for _ in range(modulus):
        if x < p:
            f = (x * x * x + CURVE_B) % p
            if legendre_int(f, p) == 1:
                G = (x, sqrt_mod_int(f, p))
                if n is None or mul_xy(p, n, G) is None:
                    return CurvePoint.from_xy(G, p)
        x = (x - 1) % modulus
    raise LadderError(f"no generator abscissa found for p={to_hex(p)} after a full wrap")


def has_even_order(p):
    """
    True when y^2 = x^3 + 7 has a point of order 2, i.e. x^3 = -7 is solvable.

    For p = 2 (mod 3) cubing is a bijection so a root always exists.
    """
    if p % 3 == 2:
        return True
    # -7 is a cube iff (-7)^((p-1)/3) = 1
    return pow(-CURVE_B % p, (p - 1) // 3, p) == 1


def prime_candidates(k, ascending_max_k=ASCENDING_MAX_K):
    """k-bit primes, ascending for small k and descending otherwise."""
    if k <= ascending_max_k:
        candidates = range((1 << (k - 1)) + 1, 1 << k, 2)
    else:
        candidates = range((1 << k) - 1, 1 << (k - 1), -2)
    return (m for m in candidates if is_prime(m))


def _order_if_prime(p, cap, retries):
    """Group order when it is prime and not equal to p, else None."""
    if has_even_order(p):
        return None
    try:
        n = count_points(p, cap=cap, retries=retries)
    except PointCountingError:
        logger.debug(f"p={to_hex(p)}: order ambiguous, treated as composite")
        return None
    if n == p or not is_prime(n):
        return None
    return n


def search_prime(k, cap=DEFAULT_COUNTING_CAP, retries=DEFAULT_BSGS_RETRIES, workers=1,
                 ascending_max_k=ASCENDING_MAX_K):
    """
    First k-bit prime, in scan order, whose curve order is prime and differs from p.

    With workers > 1 candidates are counted in batches on a process pool;
    each batch is reduced in scan order so the accepted prime is the same
    as in serial mode.

    Returns:
        tuple: (p, n)
    """
    candidates = prime_candidates(k, ascending_max_k)
    if workers <= 1:
        for p in candidates:
            n = _order_if_prime(p, cap, retries)
            if n is not None:
                return p, n
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            while True:
                batch = [p for _, p in zip(range(workers * 2), candidates)]
                if not batch:
                    break
                orders = pool.map(_order_if_prime, batch, [cap] * len(batch), [retries] * len(batch))
                for p, n in zip(batch, orders):
                    if n is not None:
                        return p, n
    raise LadderError(f"no {k}-bit prime yields a prime-order curve")


def generate_card(k, seed=DEFAULT_SEED, cap=DEFAULT_COUNTING_CAP, retries=DEFAULT_BSGS_RETRIES,
                  workers=1, factor_budget=DEFAULT_FACTOR_BUDGET, ascending_max_k=ASCENDING_MAX_K):
    """
    Build the ladder card for bit-length k.

    (p, n, G) depend only on k; d is uniform in [1, n - 1] from the seeded
    secret stream and Q = [d]G.

    Args:
        k (int): Bit-length, 6 <= k <= 256
        seed (int): 64-bit seed for the secret
        cap (int): Counting cap in bits
        retries (int): BSGS retry budget
        workers (int): Process pool size for counting
        factor_budget (int): Budget for the embedding degree
        ascending_max_k (int): Largest k scanned upward from 2^(k-1)

    Returns:
        ChallengeCard: Fresh card with known secret
    """
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k={k} outside the ladder range [{MIN_K}, {MAX_K}]")
    if select_method(k, cap) is CountingMethod.VERIFY_ONLY:
        raise CountingInfeasibleError(
            f"k={k} exceeds the counting cap of {cap} bits; use verify on the published card")

    p, n = search_prime(k, cap, retries, workers, ascending_max_k)
    logger.info(f"k={k}: accepted p={to_hex(p)} with prime order n={to_hex(n)}")
    r = embedding_degree(p, n, factor_budget)
    G = canonical_generator(p, k, n)

    rng = make_rng(seed, STREAM_SECRET)
    d = 1 + random_below(rng, n - 1)
    Q = CurvePoint.from_xy(mul_xy(p, d, G.xy()), p)
    return ChallengeCard(k=k, p=p, n=n, r=r, G=G, Q=Q, d=d)
