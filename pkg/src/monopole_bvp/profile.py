"""Global model of y* on the whole line, its zeros, and the radial profile f(r).

The model is piecewise:

* x <= x_left:            A e^{x/2} sin(wx + phi)          (left tail)
* x_left <= x <= 0:       Picard fixed point                (left branch)
* 0 <= x <= x_right:      stable-manifold trajectory        (right branch)
* x >= x_right:           1 - B e^{-x}                      (right tail)

Every bounded solution with y(-inf) = 0, y(+inf) = 1 is a translate
y*(x - tau), tau its largest zero; in radial form f(r) = y*(log(r / r0)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .connection import OMEGA, ConnectionConstants, left_tail, right_tail
from .errors import (CoverageExceeded, InconsistentInputs, NonpositiveRadius, NoZeroFound,
                     RepresentationMismatch)
from .integrator import bisect_root

DEFAULT_X_LEFT = -20.0
DEFAULT_X_RIGHT = 25.0
SWITCH_TOL = 1e-8
SLOPE_TOL = 1e-9
ZERO_XTOL = 1e-10
# e^{x/2} underflows past this
TAIL_LIMIT = -1400.0


@dataclass(frozen=True)
class Zero:
    x: float
    # True when taken from the tail formula instead of bisection on the core
    asymptotic: bool = False


class ProfileModel:
    def __init__(self, constants: ConnectionConstants, left, right,
                 x_left=DEFAULT_X_LEFT, x_right=DEFAULT_X_RIGHT, core_zeros=()):
        self.constants = constants
        self.left = left
        self.right = right
        self.x_left = x_left
        self.x_right = x_right
        self.core_zeros = tuple(core_zeros)

    @property
    def a_star(self):
        return self.constants.a_star

    def evaluate(self, x, derivative=False):
        """y*(x), or (y*, y*') with ``derivative=True``. Accepts arrays."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        c = self.constants
        y = np.empty_like(x)
        dy = np.empty_like(x)

        m = x < self.x_left
        if m.any():
            e = np.exp(0.5 * x[m])
            ph = OMEGA * x[m] + c.phase_phi
            y[m] = c.amplitude_A * e * np.sin(ph)
            dy[m] = c.amplitude_A * e * (0.5 * np.sin(ph) + OMEGA * np.cos(ph))
        m = (x >= self.x_left) & (x <= 0.0)
        if m.any():
            y[m] = self.left(x[m])
            dy[m] = self.left.derivative(x[m])
        m = (x > 0.0) & (x <= self.x_right)
        if m.any():
            z, dz = self.right.trajectory.sample(x[m])
            y[m] = 1.0 - z
            dy[m] = -dz
        m = x > self.x_right
        if m.any():
            e = c.coeff_B * np.exp(-x[m])
            y[m] = 1.0 - e
            dy[m] = e
        if scalar:
            y, dy = float(y[0]), float(dy[0])
        return (y, dy) if derivative else y

    __call__ = evaluate


def _locate_core_zeros(left, x_lo, spacing=0.01):
    """Bisection-located zeros of the left branch on [x_lo, 0), descending."""
    xs = np.linspace(x_lo, -0.5, int(round((-0.5 - x_lo) / spacing)) + 1)
    ys = left(xs)
    zeros = []
    f = lambda s: float(left(s))
    for k in range(len(xs) - 1, 0, -1):
        if ys[k] == 0.0:
            zeros.append(float(xs[k]))
        elif (ys[k] > 0) != (ys[k - 1] > 0) and ys[k - 1] != 0.0:
            zeros.append(bisect_root(f, float(xs[k - 1]), float(xs[k]), xtol=ZERO_XTOL,
                                     ga=float(ys[k - 1]), gb=float(ys[k])))
    return zeros


def build_profile(constants: ConnectionConstants, left, right, x_left=DEFAULT_X_LEFT,
                  x_right=DEFAULT_X_RIGHT, switch_tol=SWITCH_TOL, slope_tol=SLOPE_TOL) -> ProfileModel:
    a = constants.a_star
    if abs(left.a_star - a) > slope_tol:
        raise InconsistentInputs(f"left branch built with a*={left.a_star!r}, constants say {a!r}")
    if abs(right.slope - a) > slope_tol:
        raise InconsistentInputs(f"right branch has y'(0)={right.slope!r}, constants say a*={a!r}")
    if left.x_min > x_left or right.x_max < x_right:
        raise InconsistentInputs("branches do not reach the switch points")
    gap_l = abs(float(left(x_left)) - float(left_tail(x_left, constants.amplitude_A, constants.phase_phi)))
    gap_r = abs(float(right.y(x_right)) - float(right_tail(x_right, constants.coeff_B)))
    if gap_l > switch_tol or gap_r > switch_tol:
        raise InconsistentInputs(f"tails disagree with the core at the switch points ({gap_l:.3g}, {gap_r:.3g})")
    return ProfileModel(constants, left, right, x_left, x_right, _locate_core_zeros(left, left.x_min))


def tail_zero(model: ProfileModel, n):
    """n-th zero of the left tail formula, -(n pi + phi)/w."""
    return -(n * math.pi + model.constants.phase_phi) / OMEGA


def find_zeros(model: ProfileModel, count, allow_asymptotic=True) -> list[Zero]:
    """Zeros x_1 > x_2 > ... > x_count (x_0 = 0 is not included)."""
    if count < 0:
        raise ValueError("count must be non-negative")
    out = [Zero(x) for x in model.core_zeros[:count]]
    if len(out) < count:
        if not allow_asymptotic:
            raise CoverageExceeded(f"only {len(model.core_zeros)} zeros lie on the computed core")
        for n in range(len(out) + 1, count + 1):
            x = tail_zero(model, n)
            if x < TAIL_LIMIT:
                raise CoverageExceeded(f"zero {n} at {x:.1f} is beyond double-precision range")
            out.append(Zero(x, asymptotic=True))
    return out


def zero_at(model: ProfileModel, n):
    if n == 0:
        return 0.0
    return find_zeros(model, n)[-1].x


@dataclass(frozen=True)
class ShiftedSolution:
    """x -> y*(x + x_n): the solution with exactly n zeros in (0, inf)."""

    model: ProfileModel
    n: int
    shift: float

    def __call__(self, x):
        return self.model(np.asarray(x, dtype=float) + self.shift)


def shifted_solution(model: ProfileModel, n) -> ShiftedSolution:
    if n < 0:
        raise ValueError("n must be non-negative")
    return ShiftedSolution(model, n, zero_at(model, n))


def largest_zero_shift(model: ProfileModel, candidate, x_lo=-40.0, x_hi=40.0, n_samples=8001,
                       n_verify=100, verify_tol=1e-8):
    """tau with candidate(x) = y*(x - tau), tau the candidate's largest zero.

    The representation is checked at ``n_verify`` points; a candidate that
    is not a translate of y* raises RepresentationMismatch.
    """
    xs = np.linspace(x_lo, x_hi, n_samples)
    ys = np.asarray(candidate(xs), dtype=float)
    s = np.signbit(ys) | (ys == 0)
    idx = np.flatnonzero(s[:-1] != s[1:])
    if len(idx) == 0:
        raise NoZeroFound("candidate has no sign change on the sampled range")
    k = idx[-1]
    g = lambda x: float(candidate(x))
    tau = bisect_root(g, float(xs[k]), float(xs[k + 1]), xtol=1e-13,
                      ga=float(ys[k]), gb=float(ys[k + 1]))
    xv = np.linspace(max(x_lo, tau - 20.0), x_hi, n_verify)
    err = float(np.max(np.abs(np.asarray(candidate(xv)) - model(xv - tau))))
    if err > verify_tol:
        raise RepresentationMismatch(f"candidate differs from y*(x - {tau:.12g}) by {err:.3g}")
    return tau


def profile_defect(model: ProfileModel, lo=DEFAULT_X_LEFT, hi=DEFAULT_X_RIGHT, n=1000, h=1e-2):
    """|y'' - y' + y - y^3| at n points, y'' by a fourth-order difference of y'."""
    xs = np.linspace(lo, hi, n)
    y, dy = model.evaluate(xs, derivative=True)
    d = lambda s: model.evaluate(s, derivative=True)[1]
    ddy = (-d(xs + 2 * h) + 8 * d(xs + h) - 8 * d(xs - h) + d(xs - 2 * h)) / (12 * h)
    return np.abs(ddy - dy + y - y ** 3)


@dataclass(frozen=True)
class RadialProfile:
    """f(r) = y*(log(r / r0)), solving r^2 f'' + f = f^3 with f(r0) = 0."""

    model: ProfileModel
    r0: float = 1.0

    def __post_init__(self):
        if not self.r0 > 0:
            raise NonpositiveRadius(f"r0 must be positive, got {self.r0!r}")


def evaluate_f(radial: RadialProfile, r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise NonpositiveRadius("f(r) needs r > 0")
    out = radial.model(np.log(r / radial.r0))
    return float(out) if np.ndim(out) == 0 else out


def radial_asymptotics(radial: RadialProfile, r):
    """The three regime formulas: r -> 0, r -> r0, r -> inf."""
    c = radial.model.constants
    rho = np.asarray(r, dtype=float) / radial.r0
    log_rho = np.log(rho)
    small = c.amplitude_A * np.sqrt(rho) * np.sin(OMEGA * log_rho + c.phase_phi)
    near = c.a_star * log_rho
    large = 1.0 - c.coeff_B / rho
    return small, near, large
