"""The phase curve P(z): y*' expressed as a function of z = 1 - y* on x > 0.

Along the right branch z' = P(z), so z'' = P P' and the z-equation becomes

    P dP/dz - P = z (z - 1)(z - 2),    P(z) ~ -z  as z -> 0,

the second condition selecting the stable manifold of the saddle. The start
z0 = 1e-40 is far below anything a uniform step in z could resolve, so the
curve is integrated in w = log z, where dP/dw = z dP/dz is smooth and the
manifold branch is attracting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainMismatch, NonFiniteState, SingularP
from .integrator import IntegratorConfig, State, Trajectory, integrate

DEFAULT_Z0 = 1e-40
# P starts at -1e-40: error control must be relative
PHASE_CONFIG = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-300, max_step=2.0)


def cubic(z):
    return z * (z - 1.0) * (z - 2.0)


def dP_dz(z, P):
    return (cubic(z) + P) / P


def _rhs_w(w, P, _unused):
    z = math.exp(w)
    if P >= 0.0:
        raise SingularP(f"P reached {P!r} at z={z!r}")
    # (2 - 3z + z^2) z^2 + P z, divided by P; exact in the P ~ -z regime
    return z * (cubic(z) + P) / P, 0.0


@dataclass(frozen=True)
class PhaseCurve:
    z0: float
    trajectory: Trajectory  # abscissa w = log z, first component P

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z < self.z0 * (1 - 1e-12)) or np.any(z > 1.0 + 1e-12):
            raise DomainMismatch(f"phase curve covers [{self.z0}, 1]")
        w = np.clip(np.log(z), self.trajectory.x_min, self.trajectory.x_max)
        return self.trajectory.sample(w)[0]

    @property
    def P_at_one(self):
        return self.trajectory.end.y

    def nodes(self):
        """Accepted step nodes as arrays (z, P)."""
        return np.exp(self.trajectory.nodes_x), self.trajectory.nodes_y[:, 0]

    def samples(self, n):
        z = np.logspace(math.log10(self.z0), 0.0, n)
        z[-1] = 1.0
        return z, self(z)


def solve_P(z0=DEFAULT_Z0, cfg=PHASE_CONFIG) -> PhaseCurve:
    if not 0.0 < z0 < 1e-3:
        raise ValueError("z0 must be small and positive")
    w0 = math.log(z0)
    # asymptote P = -z plus its first correction is taken as the start
    P0 = -z0 + 0.75 * z0 * z0
    try:
        traj = integrate(_rhs_w, State(w0, P0, 0.0), 0.0, cfg)
    except NonFiniteState as exc:
        raise SingularP(str(exc)) from exc
    return PhaseCurve(z0, traj)


def defect(curve: PhaseCurve):
    """max |P dP/dz - P - z(z-1)(z-2)| over the accepted nodes.

    dP/dz is taken from the dense-output polynomial (its w-derivative at
    the right end of each step, divided by z), not from the vector field.
    """
    traj = curve.trajectory
    z, P = curve.nodes()
    dw = np.array([traj.step_derivative(i, 1.0)[0] for i in range(traj.n_steps)])
    z, P = z[1:], P[1:]
    return float(np.max(np.abs(P * dw / z - P - cubic(z))))


def check_P_relation(right, curve: PhaseCurve, x_lo=0.0, x_hi=10.0, n=2001):
    """max |y*'(x) + P(1 - y*(x))| on sampled x in [x_lo, x_hi]."""
    if right.x_min > x_lo + 1e-12 or right.x_max < x_hi:
        raise DomainMismatch(f"right branch does not cover [{x_lo}, {x_hi}]")
    xs = np.linspace(x_lo, x_hi, n)
    z = np.clip(right.z(xs), curve.z0, 1.0)
    return float(np.max(np.abs(right.dy(xs) + curve(z))))
