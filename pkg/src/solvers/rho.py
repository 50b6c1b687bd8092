"""
Pollard's rho for challenge cards.

r-adding walks with one doubling rule, the negation map with fruitless
cycle escape, and distinguished points shared between walkers through a
single locked table. A Brent cycle-finding mode gives a memoryless serial
alternative.
"""

import threading
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Optional

from src.ec_core.curve import CurvePoint, add_xy, double_xy, mul_xy
from src.ec_core.field import to_hex
from src.solvers.result import SolveResult
from src.utils.errors import BudgetExceededError, DegenerateCollision
from src.utils.logger import setup_logger
from src.utils.rng import make_rng, random_below, DEFAULT_SEED, STREAM_RHO

logger = setup_logger()

DOUBLING_RULE = (2, 0, 0)
MIN_BUDGET = 1024
DP_GAP_FACTOR = 20
HISTORY = 4
FLUSH_EVERY = 64


@dataclass
class RhoConfig:
    """
    Walk and search parameters.

    Attributes:
        m (int): Number of update rules (one of them doubles)
        dp_bits (int): Trailing zero bits of x marking a distinguished point;
            None picks max(1, k // 4 - 2)
        use_negation (bool): Walk on classes {P, -P}
        seed (int): Seed for rules and walker starts
        max_walkers (int): Parallel walkers; 1 is the deterministic serial mode
        budget_multiple (float): Group-operation budget as a multiple of sqrt(n)
    """
    m: int = 32
    dp_bits: Optional[int] = None
    use_negation: bool = True
    seed: int = DEFAULT_SEED
    max_walkers: int = 1
    budget_multiple: float = 64.0

    def __post_init__(self):
        if self.m < 3:
            raise ValueError(f"need at least 3 update rules, got {self.m}")
        if self.dp_bits is not None and self.dp_bits < 0:
            raise ValueError(f"dp_bits must be non-negative, got {self.dp_bits}")
        if self.max_walkers < 1:
            raise ValueError(f"max_walkers must be at least 1, got {self.max_walkers}")

    def resolved_dp_bits(self, k):
        if self.dp_bits is not None:
            return self.dp_bits
        return max(1, k // 4 - 2)

    def budget(self, n):
        return max(MIN_BUDGET, int(self.budget_multiple * isqrt(n)))


@dataclass(frozen=True)
class WalkState:
    """
    Walk triple with X = [a]G + [b]Q.

    Attributes:
        a (int): Coefficient of G mod n
        b (int): Coefficient of Q mod n
        X (tuple): Affine (x, y), None for infinity
        steps (int): Steps taken since the walk started
    """
    a: int
    b: int
    X: Optional[tuple]
    steps: int = 0

    def point(self, p):
        return CurvePoint.from_xy(self.X, p)


@dataclass(frozen=True)
class DistinguishedPoint:
    """A reported walk point: X, its scalars and who found it."""
    X: tuple
    a: int
    b: int
    walker: int
    steps: int


@dataclass
class RuleTable:
    """
    Update rules U_j(X) = [alpha_j]X + [beta_j]G + [gamma_j]Q with their
    precomputed offsets R_j = [beta_j]G + [gamma_j]Q.
    """
    p: int
    n: int
    rules: list
    offsets: list
    use_negation: bool = True

    @property
    def m(self):
        return len(self.rules)


def _xy(X):
    return X.xy() if isinstance(X, CurvePoint) else X


def partition(X, m):
    """
    Rule index from the low ceil(log2 m) bits of the x-coordinate, mod m.

    Args:
        X (CurvePoint or tuple): Finite point (canonical when negation is on)
        m (int): Number of rules

    Returns:
        int: Index in [0, m)
    """
    X = _xy(X)
    if X is None:
        raise ValueError("partition of the point at infinity")
    bits = (m - 1).bit_length()
    return (X[0] & ((1 << bits) - 1)) % m


def canonicalize(p, X, a, b, n):
    """Class representative with y <= (p - 1) / 2; scalars negated with the point."""
    if X is not None and X[1] > (p - 1) // 2:
        return (X[0], p - X[1]), (-a) % n, (-b) % n
    return X, a, b


def build_rules(card, m=32, seed=DEFAULT_SEED, use_negation=True):
    """
    Rule table with m - 1 additive rules (1, beta, gamma) and a final doubling rule.

    Args:
        card (ChallengeCard): Card supplying p, n, G and Q
        m (int): Table size
        seed (int): Seed of the rule stream
        use_negation (bool): Canonicalize after each step

    Returns:
        RuleTable: Rules and offsets
    """
    rng = make_rng(seed, STREAM_RHO << 32)
    p, n = card.p, card.n
    G, Q = card.G.xy(), card.Q.xy()
    rules, offsets = [], []
    for _ in range(m - 1):
        beta, gamma = random_below(rng, n), random_below(rng, n)
        rules.append((1, beta, gamma))
        offsets.append(add_xy(p, mul_xy(p, beta, G), mul_xy(p, gamma, Q)))
    rules.append(DOUBLING_RULE)
    offsets.append(None)
    return RuleTable(p=p, n=n, rules=rules, offsets=offsets, use_negation=use_negation)


def _apply(state, j, table):
    p, n = table.p, table.n
    alpha, beta, gamma = table.rules[j]
    if alpha == 2:
        X = double_xy(p, state.X)
        a, b = 2 * state.a % n, 2 * state.b % n
    else:
        X = add_xy(p, state.X, table.offsets[j])
        a, b = (state.a + beta) % n, (state.b + gamma) % n
    if table.use_negation:
        X, a, b = canonicalize(p, X, a, b, n)
    return WalkState(a, b, X, state.steps + 1)


def step(state, table):
    """
    One walk step X' = U_j(X), j = partition(X).

    Args:
        state (WalkState): Current state, X finite
        table (RuleTable): Update rules

    Returns:
        WalkState: Next state, X' = [a']G + [b']Q
    """
    return _apply(state, partition(state.X, table.m), table)


def double_step(state, table):
    """Apply the doubling rule regardless of partition."""
    return _apply(state, table.m - 1, table)


def solve_collision(a_i, b_i, a_j, b_j, n):
    """
    d = (a_i - a_j) / (b_j - b_i) mod n.

    Raises:
        DegenerateCollision: when b_i == b_j
    """
    if (b_j - b_i) % n == 0:
        raise DegenerateCollision("collision with equal b coefficients")
    return (a_i - a_j) * pow(b_j - b_i, -1, n) % n


class DistinguishedPointTable:
    """
    Shared store of distinguished points keyed by (x, y parity).

    insert_or_collide is the only mutator and is serialized by a lock.
    """

    def __init__(self):
        self._entries = {}
        self._lock = threading.Lock()

    def insert_or_collide(self, dp):
        """Store dp, or return the existing entry with the same point."""
        key = (dp.X[0], dp.X[1] & 1)
        with self._lock:
            existing = self._entries.get(key)
            if existing is None:
                self._entries[key] = dp
            return existing

    def __len__(self):
        return len(self._entries)

    def entries(self):
        with self._lock:
            return list(self._entries.values())


class _Search:
    """State shared by all walkers of one solve call."""

    def __init__(self, card, cfg, table):
        self.card = card
        self.cfg = cfg
        self.rules = table
        self.dp_table = DistinguishedPointTable()
        self.dp_mask = (1 << cfg.resolved_dp_bits(card.k)) - 1
        self.max_gap = DP_GAP_FACTOR * (self.dp_mask + 1)
        self.budget = cfg.budget(card.n)
        self.stop = threading.Event()
        self.result = None
        self.ops = 0
        self.restarts = 0
        self._lock = threading.Lock()

    def add_ops(self, count):
        with self._lock:
            self.ops += count
            return self.ops

    def add_restart(self):
        with self._lock:
            self.restarts += 1

    def verify(self, d):
        return mul_xy(self.card.p, d, self.card.G.xy()) == self.card.Q.xy()

    def finish(self, d):
        with self._lock:
            if self.result is None:
                self.result = d
        self.stop.set()


class _Walker:
    """One walk: start sampling, fruitless-cycle escape and DP reporting."""

    def __init__(self, walker_id, search):
        self.id = walker_id
        self.search = search
        self.rng = make_rng(search.cfg.seed, (STREAM_RHO << 32) + walker_id + 1)
        self.history = deque(maxlen=HISTORY)
        self.state = None
        self.since_dp = 0
        self.pending_ops = 0

    def restart(self):
        card, rules = self.search.card, self.search.rules
        p, n = card.p, card.n
        while True:
            a, b = random_below(self.rng, n), random_below(self.rng, n)
            X = add_xy(p, mul_xy(p, a, card.G.xy()), mul_xy(p, b, card.Q.xy()))
            if X is not None:
                break
        if rules.use_negation:
            X, a, b = canonicalize(p, X, a, b, n)
        self.state = WalkState(a, b, X, 0)
        self.history.clear()
        self.history.append(self.state)
        self.since_dp = 0

    def _escape_fruitless(self, new):
        """Leave a short cycle by doubling its point of smallest x."""
        states = list(self.history)
        for index, old in enumerate(states):
            if old.X == new.X:
                cycle = states[index:]
                break
        else:
            return new
        lowest = min(cycle, key=lambda s: s.X[0])
        escaped = double_step(lowest, self.search.rules)
        self.pending_ops += 1
        self.history.clear()
        return escaped

    def _flush(self):
        total = self.search.add_ops(self.pending_ops)
        self.pending_ops = 0
        if total >= self.search.budget:
            self.search.stop.set()
            raise BudgetExceededError(
                f"rho exceeded {self.search.budget} group operations", ops=total)

    def _resolve(self, a_i, b_i, a_j, b_j):
        """Try a relation; True when the search is finished."""
        try:
            d = solve_collision(a_i, b_i, a_j, b_j, self.search.card.n)
        except DegenerateCollision:
            logger.debug(f"walker {self.id}: degenerate collision, restarting")
            self.search.add_restart()
            self.restart()
            return False
        if self.search.verify(d):
            self.search.finish(d)
            return True
        logger.debug(f"walker {self.id}: relation gave unverified d={to_hex(d)}, restarting")
        self.search.add_restart()
        self.restart()
        return False

    def run(self):
        search = self.search
        rules = search.rules
        self.restart()
        while not search.stop.is_set():
            new = step(self.state, rules)
            self.pending_ops += 1
            if self.pending_ops >= FLUSH_EVERY:
                self._flush()

            if new.X is None:
                if self._resolve(new.a, new.b, 0, 0):
                    break
                continue

            if rules.use_negation:
                new = self._escape_fruitless(new)
                if new.X is None:
                    if self._resolve(new.a, new.b, 0, 0):
                        break
                    continue
            self.history.append(new)
            self.state = new
            self.since_dp += 1

            if new.X[0] & search.dp_mask == 0:
                self.since_dp = 0
                dp = DistinguishedPoint(new.X, new.a, new.b, self.id, new.steps)
                existing = search.dp_table.insert_or_collide(dp)
                if existing is not None:
                    if existing.a == dp.a and existing.b == dp.b:
                        search.add_restart()
                        self.restart()
                        continue
                    if self._resolve(existing.a, existing.b, dp.a, dp.b):
                        break
            elif self.since_dp > search.max_gap:
                search.add_restart()
                self.restart()
        self._flush_final()

    def _flush_final(self):
        self.search.add_ops(self.pending_ops)
        self.pending_ops = 0


def _result(search, started):
    return SolveResult(
        d=search.result,
        ops=search.ops,
        dps=len(search.dp_table),
        restarts=search.restarts,
        wall_ms=int((time.perf_counter() - started) * 1000),
        distinguished_points=search.dp_table.entries(),
    )


def solve(card, cfg=None):
    """
    Recover d with [d]G = Q by Pollard's rho with distinguished points.

    Args:
        card (ChallengeCard): Verified card with prime n
        cfg (RhoConfig): Walk parameters

    Returns:
        SolveResult: Verified d and statistics

    Raises:
        BudgetExceededError: when the group-operation budget is exhausted
    """
    cfg = cfg or RhoConfig()
    started = time.perf_counter()
    if card.Q.xy() == card.G.xy():
        return SolveResult(d=1, ops=0, dps=0, restarts=0, wall_ms=0)

    table = build_rules(card, cfg.m, cfg.seed, cfg.use_negation)
    search = _Search(card, cfg, table)
    logger.debug(f"rho on k={card.k}: m={cfg.m} dp_bits={cfg.resolved_dp_bits(card.k)} "
                 f"walkers={cfg.max_walkers} budget={search.budget}")

    walkers = [_Walker(i, search) for i in range(cfg.max_walkers)]
    if cfg.max_walkers == 1:
        walkers[0].run()
    else:
        with ThreadPoolExecutor(max_workers=cfg.max_walkers) as pool:
            futures = [pool.submit(walker.run) for walker in walkers]
            errors = []
            for future in futures:
                try:
                    future.result()
                except BudgetExceededError as e:
                    errors.append(e)
            if search.result is None and errors:
                raise errors[0]

    if search.result is None:
        raise BudgetExceededError(f"rho exceeded {search.budget} group operations", ops=search.ops)
    result = _result(search, started)
    logger.info(f"rho solved k={card.k}: d={to_hex(result.d)} ops={result.ops} "
                f"dps={result.dps} restarts={result.restarts}")
    return result


def solve_memoryless(card, cfg=None):
    """
    Serial rho with Brent cycle finding on the negation-free walk.

    Args:
        card (ChallengeCard): Verified card
        cfg (RhoConfig): Walk parameters (use_negation and max_walkers ignored)

    Returns:
        SolveResult: Verified d and statistics
    """
    cfg = cfg or RhoConfig()
    started = time.perf_counter()
    p, n = card.p, card.n
    table = build_rules(card, cfg.m, cfg.seed, use_negation=False)
    rng = make_rng(cfg.seed, (STREAM_RHO << 32) + 1)
    budget = cfg.budget(n)
    ops = restarts = 0
    G, Q = card.G.xy(), card.Q.xy()

    while ops < budget:
        a, b = random_below(rng, n), random_below(rng, n)
        X = add_xy(p, mul_xy(p, a, G), mul_xy(p, b, Q))
        if X is None:
            continue
        tortoise = WalkState(a, b, X)
        hare = step(tortoise, table)
        ops += 1
        power = lam = 1
        while hare.X is not None and tortoise.X != hare.X and ops < budget:
            if power == lam:
                tortoise = hare
                power *= 2
                lam = 0
            hare = step(hare, table)
            ops += 1
            lam += 1
        if ops >= budget:
            break
        try:
            if hare.X is None:
                d = solve_collision(hare.a, hare.b, 0, 0, n)
            else:
                d = solve_collision(tortoise.a, tortoise.b, hare.a, hare.b, n)
        except DegenerateCollision:
            restarts += 1
            continue
        if mul_xy(p, d, G) == Q:
            return SolveResult(d=d, ops=ops, dps=0, restarts=restarts,
                               wall_ms=int((time.perf_counter() - started) * 1000))
        restarts += 1
    raise BudgetExceededError(f"memoryless rho exceeded {budget} group operations", ops=ops)
