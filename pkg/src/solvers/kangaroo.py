"""
Pollard's kangaroo for secrets known to lie in an interval [lo, lo + width).
"""

import time
from math import isqrt

from src.ec_core.curve import add_xy, mul_xy
from src.ec_core.field import to_hex
from src.solvers.result import SolveResult
from src.utils.errors import BudgetExceededError
from src.utils.logger import setup_logger
from src.utils.rng import make_rng, random_below, DEFAULT_SEED, STREAM_KANGAROO

logger = setup_logger()

TAME, WILD = 'tame', 'wild'


def jump_exponents(width):
    """
    Power-of-two jump set whose mean is close to sqrt(width) / 2.

    Returns:
        list: Exponents 0..K-1; jump j is 2^j
    """
    target = max(1, isqrt(width) // 2)
    count = 1
    while ((1 << count) - 1) // count < target:
        count += 1
    return list(range(count))


def solve_kangaroo(card, lo, width, seed=DEFAULT_SEED, dp_bits=None, budget_multiple=64):
    """
    Recover d in [lo, lo + width) with one tame and one wild kangaroo.

    The tame kangaroo starts at [lo + width/2]G, the wild one at Q. Both hop
    by [2^j]G with j chosen from the x-coordinate and leave traps at
    distinguished points; a tame/wild meeting yields d.

    Args:
        card (ChallengeCard): Card supplying p, n, G and Q
        lo (int): Interval start
        width (int): Interval width, at least 1
        seed (int): Seed for restart offsets
        dp_bits (int): Trap predicate bits, default max(0, t // 4)
        budget_multiple (int): Hop budget as a multiple of 2^(t/2)

    Returns:
        SolveResult: Verified d and statistics
    """
    if width < 1:
        raise ValueError(f"interval width must be positive, got {width}")
    p, n = card.p, card.n
    G, Q = card.G.xy(), card.Q.xy()
    started = time.perf_counter()

    if width == 1:
        if mul_xy(p, lo, G) == Q:
            return SolveResult(d=lo % n, ops=0, dps=0, restarts=0, wall_ms=0)
        raise BudgetExceededError(f"[{to_hex(lo)}]G != Q; key outside the interval")

    t = (width - 1).bit_length()
    if dp_bits is None:
        dp_bits = max(0, t // 4)
    mask = (1 << dp_bits) - 1
    exponents = jump_exponents(width)
    jumps = [mul_xy(p, 1 << e, G) for e in exponents]
    k = len(jumps)
    budget = budget_multiple * (1 << ((t + 1) // 2))
    rng = make_rng(seed, STREAM_KANGAROO)
    spread = max(1, isqrt(width))

    # each kangaroo: [kind, point, distance]; tame point = [distance]G,
    # wild point = Q + [distance]G
    tame_start = lo + width // 2
    herd = [[TAME, mul_xy(p, tame_start, G), tame_start],
            [WILD, Q, 0]]
    traps = {}
    ops = restarts = 0

    def reset(kangaroo):
        offset = random_below(rng, spread)
        if kangaroo[0] == TAME:
            kangaroo[2] = tame_start + offset
            kangaroo[1] = mul_xy(p, kangaroo[2], G)
        else:
            kangaroo[2] = offset
            kangaroo[1] = add_xy(p, Q, mul_xy(p, offset, G))

    def candidate(tame_distance, wild_distance):
        d = (tame_distance - wild_distance) % n
        return d if mul_xy(p, d, G) == Q else None

    while ops < budget:
        for kangaroo in herd:
            kind, X, distance = kangaroo
            if X is None:
                # only the wild kangaroo can land on infinity: Q = -[distance]G
                d = (-distance) % n
                if mul_xy(p, d, G) == Q:
                    return _done(card, d, ops, traps, restarts, started)
                reset(kangaroo)
                restarts += 1
                continue
            if X[0] & mask == 0:
                trap = traps.get(X)
                if trap is None:
                    traps[X] = (kind, distance)
                elif trap[0] != kind:
                    tame_d, wild_d = (distance, trap[1]) if kind == TAME else (trap[1], distance)
                    d = candidate(tame_d, wild_d)
                    if d is not None:
                        return _done(card, d, ops, traps, restarts, started)
                else:
                    reset(kangaroo)
                    restarts += 1
                    continue
            j = X[0] % k
            kangaroo[1] = add_xy(p, X, jumps[j])
            kangaroo[2] = distance + (1 << exponents[j])
            ops += 1

    raise BudgetExceededError(
        f"kangaroo exceeded {budget} hops; key outside [{to_hex(lo)}, {to_hex(lo + width)})?", ops=ops)


def _done(card, d, ops, traps, restarts, started):
    logger.info(f"kangaroo solved k={card.k}: d={to_hex(d)} ops={ops} traps={len(traps)}")
    return SolveResult(d=d, ops=ops, dps=len(traps), restarts=restarts,
                       wall_ms=int((time.perf_counter() - started) * 1000))
