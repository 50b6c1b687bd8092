"""
Exhaustive scan oracle for small cards.
"""

import time

from src.ec_core.curve import add_xy
from src.ec_core.field import to_hex
from src.solvers.result import SolveResult
from src.utils.errors import BudgetExceededError
from src.utils.logger import setup_logger

logger = setup_logger()

BRUTE_MAX_BITS = 24


def solve_brute(card, max_bits=BRUTE_MAX_BITS):
    """
    Find d by stepping G, 2G, 3G, ... until Q is reached.

    Args:
        card (ChallengeCard): Card to solve
        max_bits (int): Refuse cards above this bit-length

    Returns:
        SolveResult: d with the number of additions as ops
    """
    if card.k > max_bits:
        raise ValueError(f"brute force refused for k={card.k} > {max_bits}")
    started = time.perf_counter()
    p, G, Q = card.p, card.G.xy(), card.Q.xy()
    X = G
    for d in range(1, card.n):
        if X == Q:
            logger.info(f"brute force solved k={card.k}: d={to_hex(d)}")
            return SolveResult(d=d, ops=d - 1, dps=0, restarts=0,
                               wall_ms=int((time.perf_counter() - started) * 1000))
        X = add_xy(p, X, G)
    raise BudgetExceededError(f"Q not in the subgroup generated by G (k={card.k})", ops=card.n)
