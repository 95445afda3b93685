"""Negative-axis branch of y* as the fixed point of an integral operator.

With t = -x and u(t) = e^{-x/2} y(x), the initial value problem
y(0) = 0, y'(0) = a on x < 0 becomes

    u(t) = -(2/sqrt3) a sin(wt) + (2/sqrt3) int_0^t e^{-s} sin(w(t-s)) u(s)^3 ds,

w = sqrt(3)/2. The right side, T(u), maps {|u| <= 1/2} into itself and is a
contraction there with constant sqrt(3)/2 (whenever a < 1/4), so plain
Picard iteration from u = 0 converges.

Splitting sin(w(t-s)) = sin(wt)cos(ws) - cos(wt)sin(ws) turns each sweep
into two running integrals, O(n) per application of T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import DomainViolation, NoConvergence

OMEGA = math.sqrt(3.0) / 2.0
CONTRACTION = math.sqrt(3.0) / 2.0
SELF_MAP_BOUND = math.sqrt(3.0) / 4.0
DEFAULT_HORIZON = 30.0
DEFAULT_POINTS = 30001
DEFAULT_TOL = 1e-11
X_BOUND = 0.5


@dataclass(frozen=True)
class GridFunction:
    """Samples of u on the uniform grid t_i = i*T/(n-1)."""

    horizon: float
    values: np.ndarray = field(repr=False)

    @property
    def n_points(self):
        return len(self.values)

    @property
    def t(self):
        return np.linspace(0.0, self.horizon, self.n_points)

    @property
    def step(self):
        return self.horizon / (self.n_points - 1)

    def in_X(self, slack=0.0):
        return bool(np.max(np.abs(self.values)) <= X_BOUND + slack)


@dataclass(frozen=True)
class FixedPointReport:
    iterations: int
    final_residual: float
    contraction_estimate: float
    # a-priori bound on the distance to the fixed point of the discrete T
    error_bound: float


def sup_distance(f: GridFunction, g: GridFunction) -> float:
    """The metric d(f, g) = sup |f - g| on the shared grid."""
    if f.n_points != g.n_points or f.horizon != g.horizon:
        raise ValueError("grid functions live on different grids")
    return float(np.max(np.abs(f.values - g.values)))


def cumulative_integral(g, h):
    """Running integral int_0^{t_i} g on a uniform grid, fourth order.

    Each cell uses the cubic through four neighbouring nodes
    (h/24)(-g[i-1] + 13 g[i] + 13 g[i+1] - g[i+2]); the end cells use the
    one-sided cubic.
    """
    g = np.asarray(g, dtype=float)
    n = len(g)
    if n < 4:
        raise ValueError("need at least 4 grid points")
    cells = np.empty(n - 1)
    cells[1:-1] = -g[:-3] + 13.0 * g[1:-2] + 13.0 * g[2:-1] - g[3:]
    cells[0] = 9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]
    cells[-1] = g[-4] - 5.0 * g[-3] + 19.0 * g[-2] + 9.0 * g[-1]
    out = np.empty(n)
    out[0] = 0.0
    np.cumsum(cells * (h / 24.0), out=out[1:])
    return out


def _moments(u: GridFunction):
    """Running integrals C(t) = int e^{-s}cos(ws)u^3, S(t) = int e^{-s}sin(ws)u^3."""
    t = u.t
    w = np.exp(-t) * u.values ** 3
    c = cumulative_integral(w * np.cos(OMEGA * t), u.step)
    s = cumulative_integral(w * np.sin(OMEGA * t), u.step)
    return c, s


def apply_T(u: GridFunction, a_star: float, check=True) -> GridFunction:
    if check and not u.in_X(slack=1e-12):
        raise DomainViolation(f"sup|u| = {np.max(np.abs(u.values)):.6g} exceeds 1/2")
    t = u.t
    c, s = _moments(u)
    k = 2.0 / math.sqrt(3.0)
    vals = k * (np.sin(OMEGA * t) * (c - a_star) - np.cos(OMEGA * t) * s)
    vals[0] = 0.0
    return GridFunction(u.horizon, vals)


def derivative_of_T(u: GridFunction, a_star: float) -> np.ndarray:
    """d/dt T(u) on the grid. The integrand terms cancel, leaving
    cos(wt)(C - a) + sin(wt) S."""
    t = u.t
    c, s = _moments(u)
    return np.cos(OMEGA * t) * (c - a_star) + np.sin(OMEGA * t) * s


def iteration_bound(first_step, tol):
    """Iterations the sqrt(3)/2 contraction needs to meet the stopping rule."""
    if first_step <= 0:
        return 0
    target = tol * (1.0 - CONTRACTION)
    return max(0, math.ceil(math.log(target / first_step) / math.log(CONTRACTION)))


def solve_fixed_point(a_star, horizon=DEFAULT_HORIZON, n=DEFAULT_POINTS, tol=DEFAULT_TOL,
                      max_iter=500):
    """Picard iteration u_{k+1} = T(u_k) from u_0 = 0.

    Stops once d(u_{k+1}, u_k) <= tol (1 - q) with q = sqrt(3)/2; the
    geometric bound then puts u_{k+1} within ``tol`` of the fixed point.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not 0 < a_star < 0.25:
        raise ValueError("a_star must lie in (0, 1/4) for T to map X into itself")
    u = GridFunction(horizon, np.zeros(n))
    prev_step = None
    ratio = 0.0
    for k in range(1, max_iter + 1):
        nxt = apply_T(u, a_star)
        step = sup_distance(nxt, u)
        if prev_step:
            ratio = step / prev_step
        u = nxt
        if step <= tol * (1.0 - CONTRACTION):
            residual = sup_distance(apply_T(u, a_star), u)
            bound = CONTRACTION * step / (1.0 - CONTRACTION)
            return u, FixedPointReport(k, residual, ratio, bound)
        prev_step = step
    raise NoConvergence(f"no convergence in {max_iter} iterations (last step {step:.3g})")


class LeftBranch:
    """y*(x) = e^{x/2} u*(-x) on [-T, 0].

    Interpolates u* with cubic Hermite pieces, using the exact derivative
    of T(u*) at the nodes, so values are fourth-order accurate between
    grid points.
    """

    def __init__(self, u_star: GridFunction, a_star: float):
        self.u_star = u_star
        self.a_star = a_star
        self.x_min = -u_star.horizon
        self.x_max = 0.0
        du = derivative_of_T(u_star, a_star)
        self._spline = CubicHermiteSpline(u_star.t, u_star.values, du)
        self._dspline = self._spline.derivative()

    def _check(self, x):
        if np.any(x < self.x_min - 1e-12) or np.any(x > 1e-12):
            raise ValueError(f"left branch covers [{self.x_min}, 0]")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        self._check(x)
        return np.exp(0.5 * x) * self._spline(-x)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        self._check(x)
        return np.exp(0.5 * x) * (0.5 * self._spline(-x) - self._dspline(-x))


def extend_left(u_star: GridFunction, a_star: float) -> LeftBranch:
    return LeftBranch(u_star, a_star)


def sign_changes(values) -> int:
    v = np.asarray(values)
    v = v[v != 0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def random_field(rng: np.random.Generator, horizon=DEFAULT_HORIZON, n=DEFAULT_POINTS, modes=8):
    """Smooth random element of X: a short random sine series clipped to |u| <= 1/2."""
    t = np.linspace(0.0, horizon, n)
    freq = rng.uniform(0.0, 3.0, modes)
    phase = rng.uniform(0.0, 2 * np.pi, modes)
    coef = rng.normal(size=modes)
    vals = (coef[:, None] * np.sin(freq[:, None] * t + phase[:, None])).sum(axis=0)
    vals *= rng.uniform(0.05, 0.7) / max(np.max(np.abs(vals)), 1e-300)
    return GridFunction(horizon, np.clip(vals, -X_BOUND, X_BOUND))


def contraction_ratio(u1: GridFunction, u2: GridFunction, a_star: float) -> float:
    """d(T u1, T u2) / d(u1, u2)."""
    return sup_distance(apply_T(u1, a_star), apply_T(u2, a_star)) / sup_distance(u1, u2)
