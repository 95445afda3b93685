"""Critical slope a* by shooting, and the x > 0 branch of y*.

A shot integrates y'' - y' + y = y**3 from y(0) = 0, y'(0) = a. Below a* the
solution turns back before reaching 1 (y' hits zero: undershoot); above a*
it crosses 1 and runs away (overshoot). Bisection on this dichotomy pins a*.

The forward shot cannot follow y* far: the saddle at y = 1 has unstable
eigenvalue 2, so a slope error of 1e-17 already leaves the orbit near
x = 13. The right branch used downstream is therefore computed the other
way round, by integrating the z = 1 - y equation backwards from a point on
the stable manifold of the saddle, where the unstable direction decays.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import IndeterminateShot, InvalidBracket, NonFiniteState
from .integrator import (DEFAULT_CONFIG, IntegratorConfig, State, Trajectory, find_event,
                         integrate, rhs_forward, rhs_z)

DELTA_OVER = 1e-9
DELTA_CONV = 1e-6
DEFAULT_WINDOW = 40.0
DEFAULT_BRACKET = (0.01, 0.25)
DEFAULT_TOL = 1e-11


class ShotKind(enum.Enum):
    UNDERSHOOT = "undershoot"
    OVERSHOOT = "overshoot"
    CONVERGED = "converged"


@dataclass(frozen=True)
class ShotOutcome:
    kind: ShotKind
    witness_x: float
    final_state: State
    # sign of y - 1 at the end of the run; used to break ties on CONVERGED
    above: bool = False


@dataclass(frozen=True)
class CriticalSlope:
    value: float
    bracket_lo: float
    bracket_hi: float
    iterations: int


def _shot_stop(s):
    return s.dy <= 0.0 or s.y >= 1.0 + DELTA_OVER


def shoot(a, window=DEFAULT_WINDOW, cfg=DEFAULT_CONFIG, stop=_shot_stop):
    """Raw shot trajectory from (0, 0, a), ending at the first classifying event."""
    try:
        return integrate(rhs_forward, State(0.0, 0.0, a), window, cfg, stop=stop)
    except NonFiniteState as exc:
        if exc.trajectory is None:
            raise
        return exc.trajectory


def classify_shot(a, window=DEFAULT_WINDOW, cfg=DEFAULT_CONFIG) -> ShotOutcome:
    if not 0.0 < a < 1.0:
        raise ValueError(f"slope {a} outside the sanity range (0, 1)")
    if window <= 0:
        raise ValueError("window must be positive")
    traj = shoot(a, window, cfg)
    end = traj.end
    if end.y >= 1.0 + DELTA_OVER:
        x = find_event(traj, lambda s: s.y - (1.0 + DELTA_OVER))
        return ShotOutcome(ShotKind.OVERSHOOT, x, end, above=True)
    if end.dy <= 0.0:
        x = find_event(traj, lambda s: s.dy)
        return ShotOutcome(ShotKind.UNDERSHOOT, x, traj(x), above=False)
    if abs(end.y - 1.0) <= DELTA_CONV and abs(end.dy) <= DELTA_CONV:
        return ShotOutcome(ShotKind.CONVERGED, end.x, end, above=end.y > 1.0)
    raise IndeterminateShot(
        f"a={a!r}: window {window} exhausted at y={end.y!r}, y'={end.dy!r}; enlarge the window")


def _below(outcome):
    if outcome.kind is ShotKind.CONVERGED:
        return not outcome.above
    return outcome.kind is ShotKind.UNDERSHOOT


def find_critical_slope(lo=DEFAULT_BRACKET[0], hi=DEFAULT_BRACKET[1], tol=DEFAULT_TOL,
                        window=DEFAULT_WINDOW, cfg=DEFAULT_CONFIG, trace=None) -> CriticalSlope:
    """Bisect the undershoot/overshoot bracket down to width ``tol``.

    ``trace``, if given, is a list that receives ``(lo, hi)`` after every
    bisection step.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not lo < hi:
        raise InvalidBracket(f"need lo < hi, got [{lo}, {hi}]")
    k_lo = classify_shot(lo, window, cfg).kind
    k_hi = classify_shot(hi, window, cfg).kind
    if k_lo is not ShotKind.UNDERSHOOT or k_hi is not ShotKind.OVERSHOOT:
        raise InvalidBracket(
            f"bracket [{lo}, {hi}] classifies as ({k_lo.value}, {k_hi.value}),"
            " need (undershoot, overshoot)")
    n = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _below(classify_shot(mid, window, cfg)):
            lo = mid
        else:
            hi = mid
        n += 1
        if trace is not None:
            trace.append((lo, hi))
    return CriticalSlope(0.5 * (lo + hi), lo, hi, n)


# ---------------------------------------------------------------------------
# right branch

# z-equation run: relative error control only, z spans 1 down to ~1e-16
MANIFOLD_CONFIG = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-30)
DEFAULT_Z_START = 1e-16


@dataclass(frozen=True)
class RightBranch:
    """y* on [0, x_max] stored through z = 1 - y*.

    ``trajectory`` integrates :func:`rhs_z`; its abscissas are shifted so
    that z(0) = 1, i.e. y*(0) = 0.
    """

    trajectory: Trajectory

    @property
    def x_max(self):
        return self.trajectory.x_max

    @property
    def x_min(self):
        return self.trajectory.x_min

    @property
    def slope(self):
        """y*'(0) read off the branch; an a* estimate independent of shooting."""
        return -self.trajectory(0.0).dy

    def z(self, x):
        return self.trajectory.sample(x)[0]

    def dz(self, x):
        return self.trajectory.sample(x)[1]

    def y(self, x):
        return 1.0 - self.z(x)

    def dy(self, x):
        return -self.dz(x)


def stable_manifold_branch(z_start=DEFAULT_Z_START, cfg=MANIFOLD_CONFIG) -> RightBranch:
    """Integrate backwards from the stable manifold of (y, y') = (1, 0).

    Near the saddle the manifold is z = c e^{-x} - (3/4) c^2 e^{-2x} + O(c^3);
    starting at z = ``z_start`` makes the neglected term ~z_start**3. The run
    stops once z crosses 1 and the result is shifted to put that crossing at 0.
    """
    eps = z_start
    init = State(0.0, eps - 0.75 * eps * eps, -eps + 1.5 * eps * eps)
    # y* reaches 1 - z_start after roughly log(5/z_start)
    x_end = -(math.log(5.0 / eps) + 10.0)
    traj = integrate(rhs_z, init, x_end, cfg, stop=lambda s: s.y >= 1.0)
    x_zero = find_event(traj, lambda s: s.y - 1.0)
    return RightBranch(traj.shifted(-x_zero))


def manifold_coefficient(branch: RightBranch, x=None):
    """e^x z(x) evaluated far out on the branch (tends to B)."""
    x = branch.x_max - 1.0 if x is None else x
    return float(np.exp(x) * branch.z(x))
