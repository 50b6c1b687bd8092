"""
Result record shared by the solvers.
"""

from dataclasses import dataclass, field

from src.ec_core.field import to_hex


@dataclass
class SolveResult:
    """
    Verified secret and search statistics.

    Attributes:
        d (int): Secret with [d]G = Q
        ops (int): Group operations spent
        dps (int): Distinguished points (or traps) stored
        restarts (int): Walk restarts
        wall_ms (int): Wall-clock time in milliseconds
        distinguished_points (list): Stored points in discovery order
    """
    d: int
    ops: int
    dps: int
    restarts: int
    wall_ms: int
    distinguished_points: list = field(default_factory=list)

    def stats(self):
        """Stats record as printed by the CLI."""
        return {'ops': self.ops, 'dps': self.dps, 'restarts': self.restarts,
                'wall_ms': self.wall_ms, 'd': to_hex(self.d)}
