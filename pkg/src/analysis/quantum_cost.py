"""
Fault-tolerant resource model for Shor's ECDLP circuit.

Surface code: logical error C*(p/p_th)^((d+1)/2), footprint
alpha*d^2*N_log + beta*d_fac^2*F, runtime max(depth term, supply term).
Repetition-cat code: logical phase-flip probability from a majority vote
over d cats and a footprint linear in d.
"""

import math
from dataclasses import dataclass, replace

from src.utils.errors import ParameterError

MAX_DISTANCE = 99
SCHEDULES = ('low-width', 'low-t', 'low-depth')
CODES = ('surface', 'repcat')
T_OPS_MODES = ('t_count', 't_count+t_depth')
# relative slack for budget comparisons at exact boundaries
_BUDGET_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CodeParams:
    """
    Physical-layer assumptions. Defaults are illustrative, not authoritative.

    Attributes:
        C (float): Logical-error prefactor
        p (float): Physical error rate
        p_th (float): Threshold
        tau (float): Code cycle in seconds
        alpha (float): Data-patch layout constant
        beta (float): Factory layout constant
        c (float): Schedule constant of the depth term
        factories (int): Number of non-Clifford factories F
        r_fac (float): Non-Clifford states per factory per cycle
        eps_target (float): Failure budget of the whole run
        t_ops_mode (str): 't_count' or 't_count+t_depth'
    """
    C: float = 0.1
    p: float = 1e-3
    p_th: float = 1e-2
    tau: float = 1e-6
    alpha: float = 2.0
    beta: float = 1.0
    c: float = 1.0
    factories: int = 6
    r_fac: float = 0.01
    eps_target: float = 1e-2
    t_ops_mode: str = 't_count'

    def __post_init__(self):
        if not 0 < self.p < self.p_th:
            raise ParameterError(f"need 0 < p < p_th, got p={self.p} p_th={self.p_th}")
        for name in ('C', 'tau', 'alpha', 'beta', 'c', 'r_fac'):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if self.factories < 0:
            raise ParameterError(f"factory count must be non-negative, got {self.factories}")
        if not 0 < self.eps_target < 1:
            raise ParameterError(f"eps_target must lie in (0, 1), got {self.eps_target}")
        if self.t_ops_mode not in T_OPS_MODES:
            raise ParameterError(f"unknown t_ops_mode {self.t_ops_mode!r}")


HARDWARE_PRESETS = {
    'conservative': CodeParams(),
    'aggressive': CodeParams(p=1e-4, r_fac=0.02),
}


@dataclass(frozen=True)
class LogicalResources:
    """
    Logical-level cost of one run.

    Attributes:
        b (int): Bit-strength
        N_log (int): Logical qubits
        T_count (int): Non-Clifford count, as reported by the source table
        T_depth (int): Non-Clifford depth
        schedule (str): 'low-width', 'low-t' or 'low-depth'
    """
    b: int
    N_log: int
    T_count: int
    T_depth: int
    schedule: str

    def __post_init__(self):
        if min(self.b, self.N_log, self.T_count, self.T_depth) <= 0:
            raise ParameterError("logical resources must be positive")
        if self.schedule not in SCHEDULES:
            raise ParameterError(f"unknown schedule {self.schedule!r}")


@dataclass(frozen=True)
class ResourceEstimate:
    """
    Physical-level estimate.

    Attributes:
        code (str): 'surface' or 'repcat'
        d_data (int): Data code distance
        d_fac (int): Factory code distance
        N_phys (int): Physical qubits
        t_seconds (float): Wall-clock time
        limiting (str): 'depth' or 'supply'
    """
    code: str
    d_data: int
    d_fac: int
    N_phys: int
    t_seconds: float
    limiting: str

    def to_dict(self):
        return {'code': self.code, 'd_data': self.d_data, 'd_fac': self.d_fac,
                'N_phys': self.N_phys, 't_seconds': self.t_seconds, 'limiting': self.limiting}


def logical_error(d, params):
    """Surface-code logical error per operation, C * (p / p_th)^((d + 1) / 2)."""
    if d < 3 or d % 2 == 0:
        raise ParameterError(f"distance must be odd and at least 3, got {d}")
    return params.C * (params.p / params.p_th) ** ((d + 1) / 2)


def _within_budget(t_ops, per_op, eps):
    return t_ops * per_op <= eps * (1 + _BUDGET_TOLERANCE)


def min_distance(t_ops, params, max_distance=MAX_DISTANCE):
    """
    Smallest odd d >= 3 with t_ops * logical_error(d) <= eps_target.

    Args:
        t_ops (float): Number of non-Clifford operations
        params (CodeParams): Code assumptions
        max_distance (int): Largest distance tried

    Returns:
        int: Code distance
    """
    if t_ops <= 0:
        raise ParameterError(f"operation count must be positive, got {t_ops}")
    for d in range(3, max_distance + 1, 2):
        if _within_budget(t_ops, logical_error(d, params), params.eps_target):
            return d
    raise ParameterError(f"no distance up to {max_distance} meets the failure budget")


def physical_footprint(n_log, factories, d_data, d_fac, params):
    """alpha * d_data^2 * N_log + beta * d_fac^2 * F, rounded up."""
    if n_log <= 0 or factories < 0 or d_data <= 0 or d_fac <= 0:
        raise ParameterError("footprint inputs must be positive")
    return math.ceil(params.alpha * d_data ** 2 * n_log + params.beta * d_fac ** 2 * factories)


def runtime(t_depth, t_count, factories, d_data, params):
    """
    Wall-clock time as the larger of the depth and supply terms.

    Returns:
        tuple: (seconds, 'depth' or 'supply')
    """
    depth_term = params.c * d_data * t_depth * params.tau
    if factories == 0:
        return depth_term, 'depth'
    supply_term = t_count * params.tau / (factories * params.r_fac)
    if supply_term > depth_term:
        return supply_term, 'supply'
    return depth_term, 'depth'


def repcat_logical_z(p_z, d):
    """
    Phase-flip probability of a distance-d repetition cat after majority vote.

    Sum over j >= (d + 1) / 2 of C(d, j) p^j (1 - p)^(d - j).
    """
    if not 0 <= p_z <= 1:
        raise ParameterError(f"p_Z must lie in [0, 1], got {p_z}")
    if d < 1 or d % 2 == 0:
        raise ParameterError(f"distance must be odd and positive, got {d}")
    first = (d + 2) // 2
    return sum(math.comb(d, j) * p_z ** j * (1 - p_z) ** (d - j) for j in range(first, d + 1))


def repcat_min_distance(t_ops, params, max_distance=MAX_DISTANCE):
    """Smallest odd d >= 3 with t_ops * repcat_logical_z(p, d) <= eps_target."""
    for d in range(3, max_distance + 1, 2):
        if _within_budget(t_ops, repcat_logical_z(params.p, d), params.eps_target):
            return d
    raise ParameterError(f"no repetition-cat distance up to {max_distance} meets the failure budget")


def t_ops(logical, params):
    """Operations counted against the failure budget."""
    if params.t_ops_mode == 't_count+t_depth':
        return logical.T_count + logical.T_depth
    return logical.T_count


def estimate_resources(logical, params, code='surface', d_fac=None):
    """
    Distance, footprint and runtime for one logical workload.

    Args:
        logical (LogicalResources): Workload
        params (CodeParams): Physical assumptions
        code (str): 'surface' or 'repcat'
        d_fac (int): Factory distance, default equal to the data distance

    Returns:
        ResourceEstimate: Physical estimate
    """
    operations = t_ops(logical, params)
    if code == 'surface':
        d_data = min_distance(operations, params)
        d_fac = d_fac or d_data
        n_phys = physical_footprint(logical.N_log, params.factories, d_data, d_fac, params)
    elif code == 'repcat':
        d_data = repcat_min_distance(operations, params)
        d_fac = d_fac or d_data
        n_phys = math.ceil(params.alpha * d_data * logical.N_log + params.beta * d_fac * params.factories)
    else:
        raise ParameterError(f"unknown code {code!r}; expected one of {', '.join(CODES)}")
    seconds, limiting = runtime(logical.T_depth, logical.T_count, params.factories, d_data, params)
    return ResourceEstimate(code=code, d_data=d_data, d_fac=d_fac, N_phys=n_phys,
                            t_seconds=seconds, limiting=limiting)


def hardware_params(preset='conservative', **overrides):
    """Preset CodeParams with selected fields replaced (None values ignored)."""
    if preset not in HARDWARE_PRESETS:
        raise ParameterError(f"unknown hardware preset {preset!r}")
    changes = {key: value for key, value in overrides.items() if value is not None}
    return replace(HARDWARE_PRESETS[preset], **changes)
