"""Loop phase observables: winding numbers by crossing count and
branch-difference reports packaging the accumulated S-difference as the
measured quantity.

The crossing-count winding is deliberately independent of any logarithm:
it counts signed crossings of a ray by the projected retarded-separation
curve, and serves as the oracle for the path-accumulated phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PathThroughSingularAxisError
from .potential import (
    SINGULAR_AXIS_FLOOR,
    Charge,
    Path,
    _delta_S_counted,
)
from .spacetime import FourVector, retarded_null_vector

__all__ = [
    "LoopPhaseReport",
    "winding_number",
    "ab_phase_report",
    "two_path_difference",
]


@dataclass(frozen=True)
class LoopPhaseReport:
    """Result of a loop (or two-path) phase measurement."""

    delta_S: complex
    winding: int
    residual: float
    samples_used: int
    tolerance: float

    @property
    def status(self) -> str:
        return "ok" if self.residual < self.tolerance else "tolerance-exceeded"


def _project(charge: Charge, event: FourVector) -> tuple[float, float]:
    """(a1, -a2) of the charge's retarded null vector; the phase of the
    invariant advances with the polar angle of this planar curve."""
    a = retarded_null_vector(charge.line, event).a.as_array()
    if a[1] ** 2 + a[2] ** 2 < SINGULAR_AXIS_FLOOR * (a[0] ** 2 + a[3] ** 2):
        raise PathThroughSingularAxisError(
            f"path sample at {event} projects onto the singular axis"
        )
    return float(a[1]), float(-a[2])


def winding_number(loop: Path, charge: Charge) -> int:
    """Signed number of crossings of the ray {v = 0, u > 0} by the closed
    projected curve (u, v) = (a1, -a2); upward crossings count +1."""
    if not loop.closed:
        raise ValueError("winding_number requires a closed path")
    pts = [_project(charge, e) for e in loop.events]
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    count = 0
    for (u0, v0), (u1, v1) in zip(pts[:-1], pts[1:]):
        below0, below1 = v0 < 0.0, v1 < 0.0
        if below0 == below1:
            continue
        # crossing point of the segment with v = 0
        u_cross = u0 + (u1 - u0) * (-v0) / (v1 - v0)
        if u_cross > 0.0:
            count += 1 if below0 else -1
    return count


_BRANCH_QUANTUM = 2.0 * math.pi


def ab_phase_report(
    charge: Charge, loop: Path, tolerance: float | None = None
) -> LoopPhaseReport:
    """Closed-loop phase report: accumulated delta_S, the crossing-count
    winding, and the residual against 2*pi*i*q*winding."""
    if not loop.closed:
        raise ValueError("ab_phase_report requires a closed loop")
    if tolerance is None:
        tolerance = 1e-8 * abs(charge.q)
    delta, samples = _delta_S_counted(charge, loop)
    w = winding_number(loop, charge)
    residual = abs(delta - 2j * math.pi * charge.q * w)
    return LoopPhaseReport(delta, w, residual, samples, tolerance)


def two_path_difference(
    charge: Charge,
    path_a: Path,
    path_b: Path,
    tolerance: float | None = None,
    endpoint_tol: float = 1e-12,
) -> LoopPhaseReport:
    """Difference of accumulated S between two open paths sharing both
    endpoints; equals the closed-loop phase of path_a followed by the
    reversal of path_b."""
    if path_a.closed or path_b.closed:
        raise ValueError("two_path_difference expects open paths")
    for end in (0, -1):
        da = path_a.events[end].as_array()
        db = path_b.events[end].as_array()
        if np.linalg.norm(da - db) > endpoint_tol:
            raise ValueError("paths must share their endpoints")
    if tolerance is None:
        tolerance = 1e-8 * abs(charge.q)
    delta_a, samples_a = _delta_S_counted(charge, path_a)
    delta_b, samples_b = _delta_S_counted(charge, path_b)
    delta = delta_a - delta_b
    loop_events = list(path_a.events) + list(reversed(path_b.events[1:-1]))
    loop = Path(tuple(loop_events), closed=True)
    w = winding_number(loop, charge)
    residual = abs(delta - 2j * math.pi * charge.q * w)
    return LoopPhaseReport(delta, w, residual, samples_a + samples_b, tolerance)
