"""
Measurement statistics of Shor's algorithm for the elliptic-curve
discrete logarithm, simulated classically at small group orders.

Under ideal mod-n Fourier transforms the two control registers read out a
pair (a, b) with a uniform on Z_n and b = d*a mod n. ``sample`` draws from
that law directly; ``dense_simulate`` builds the full state vector for
n <= 64 and computes the outcome distribution by direct summation, which
is how the law is cross-checked.
"""

from dataclasses import dataclass

import numpy as np

from src.ec_core.curve import mul_xy
from src.ec_core.field import to_hex
from src.ladder.primes import is_prime
from src.utils.errors import ShorRecoveryError
from src.utils.logger import setup_logger
from src.utils.rng import make_rng, random_below, DEFAULT_SEED, STREAM_SHOR

logger = setup_logger()

DENSE_CAP = 64


@dataclass(frozen=True)
class ShorInstance:
    """
    Group order and planted secret for a simulated run.

    Attributes:
        n (int): Prime group order
        d (int): Secret, 1 <= d < n
    """
    n: int
    d: int

    def __post_init__(self):
        if not is_prime(self.n):
            raise ValueError(f"group order {self.n} is not prime")
        if not 1 <= self.d < self.n:
            raise ValueError(f"secret {self.d} outside [1, {self.n - 1}]")

    @property
    def n_e(self):
        """Control-register width 2 * ceil(log2 n), kept for resource accounting."""
        return 2 * (self.n - 1).bit_length()


@dataclass(frozen=True)
class ShorSample:
    """One measured pair with b = d * a (mod n)."""
    a: int
    b: int


def sample(inst, rng):
    """
    Draw one measurement outcome.

    Args:
        inst (ShorInstance): Instance
        rng (numpy.random.Generator): Seeded generator

    Returns:
        ShorSample: (a, d * a mod n) with a uniform
    """
    a = random_below(rng, inst.n)
    return ShorSample(a, inst.d * a % inst.n)


def sample_batch(inst, count, seed=DEFAULT_SEED):
    """count independent samples from the seeded Shor stream."""
    rng = make_rng(seed, STREAM_SHOR)
    return [sample(inst, rng) for _ in range(count)]


def exact_law(inst):
    """Outcome distribution as an n x n array: 1/n on b = d*a, zero elsewhere."""
    n = inst.n
    law = np.zeros((n, n))
    a = np.arange(n)
    law[a, (inst.d * a) % n] = 1.0 / n
    return law


def dense_simulate(inst, seed=DEFAULT_SEED, cap=DENSE_CAP):
    """
    Amplitude-level simulation of one run.

    Prepares the uniform superposition over (x, y) in Z_n^2, measures the
    point register s = x + d*y mod n, applies the mod-n DFT to both control
    registers by direct summation and returns |amplitude|^2.

    Args:
        inst (ShorInstance): Instance with n <= cap
        seed (int): Seed choosing the measured point-register value
        cap (int): Largest n simulated

    Returns:
        numpy.ndarray: Outcome probabilities indexed [a, b]
    """
    n = inst.n
    if n > cap:
        raise ValueError(f"dense simulation limited to n <= {cap}, got {n}")

    x = np.arange(n)
    X, Y = np.meshgrid(x, x, indexing='ij')
    point_register = (X + inst.d * Y) % n

    # every s has probability 1/n
    s = random_below(make_rng(seed, STREAM_SHOR), n)
    state = np.where(point_register == s, 1.0 + 0.0j, 0.0j)
    state /= np.linalg.norm(state)

    dft = np.exp(2j * np.pi * np.outer(x, x) / n) / np.sqrt(n)
    amplitudes = dft @ state @ dft.T
    return np.abs(amplitudes) ** 2


def total_variation(samples, inst):
    """Total-variation distance between the empirical sample law and exact_law."""
    n = inst.n
    counts = np.zeros((n, n))
    for smp in samples:
        counts[smp.a, smp.b] += 1
    empirical = counts / max(1, len(samples))
    return 0.5 * float(np.abs(empirical - exact_law(inst)).sum())


def _candidates(smp, n):
    """d from b = d*a, then the (-a)/b reading of the post-processing step."""
    if smp.a % n:
        yield smp.b * pow(smp.a, -1, n) % n, 'b/a'
    if smp.b % n:
        yield (-smp.a) * pow(smp.b, -1, n) % n, '-a/b'


def recover_with_stats(samples, card=None, n=None, check=None):
    """
    First verified secret candidate and how many samples were consumed.

    Verification is [d]G = Q when a card is given, else the check callable,
    else consistency b = d*a with every sample.

    Returns:
        tuple: (d, samples_used, convention)
    """
    n = card.n if card is not None else n
    if n is None:
        raise ValueError("group order required when no card is given")

    if card is not None:
        def verified(d):
            return mul_xy(card.p, d, card.G.xy()) == card.Q.xy()
    elif check is not None:
        verified = check
    else:
        def verified(d):
            return all((smp.b - d * smp.a) % n == 0 for smp in samples)

    for used, smp in enumerate(samples, 1):
        for d, convention in _candidates(smp, n):
            if d and verified(d):
                logger.debug(f"recovered d={to_hex(d)} from sample {used} via {convention}")
                return d, used, convention
    raise ShorRecoveryError(
        f"no verified secret in {len(samples)} samples (all degenerate); request more samples")


def recover_d(samples, card=None, n=None, check=None):
    """
    Recover the secret from measured pairs.

    Args:
        samples (list): ShorSample outcomes
        card (ChallengeCard): Card for the [d]G = Q check
        n (int): Group order when no card is given
        check (callable): Alternative verifier d -> bool

    Returns:
        int: Verified secret
    """
    return recover_with_stats(samples, card, n, check)[0]
