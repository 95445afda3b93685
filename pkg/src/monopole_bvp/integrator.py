"""Adaptive Dormand-Prince 5(4) integrator for planar systems.

Everything in this package integrates a two-component first-order system
``(y, dy)' = rhs(x, y, dy)``. The stepper works on plain Python floats since
the state is two numbers; numpy only enters when a finished trajectory is
sampled on many points.

Method
------
Dormand-Prince 5(4) with FSAL, local extrapolation, and the fourth-order
continuous extension of Shampine (the same one used by MATLAB ``ode45``).
The problems here are smooth and non-stiff (linearised eigenvalues are
O(1)), so an explicit pair is the right tool.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoSignChange, NonFiniteState, StepCountExceeded, StepUnderflow

Rhs = Callable[[float, float, float], tuple[float, float]]

# Butcher tableau
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# b - b_hat
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# Dense output: y(x0 + theta*h) = y0 + h * sum_i K_i * sum_j P[i][j] theta**(j+1)
DENSE_P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass(frozen=True)
class State:
    """A point ``(y, dy)`` at abscissa ``x``."""

    x: float
    y: float
    dy: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.dy)):
            raise NonFiniteState(f"non-finite state {self!r}", state=self)


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_step: float = 1.0
    max_steps: int = 500_000
    # |y| above this terminates the run as a blow-up
    blowup: float = 1e3

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_step > 0):
            raise ValueError("rel_tol, abs_tol and max_step must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


DEFAULT_CONFIG = IntegratorConfig()


def rhs_forward(x, y, dy):
    """y'' - y' + y = y**3 as a first-order system."""
    return dy, dy - y + y * y * y


def rhs_z(x, z, dz):
    """z'' - z' - 2z = -3z**2 + z**3, the equation for z = 1 - y."""
    return dz, dz + 2.0 * z - 3.0 * z * z + z * z * z


def rhs_linear(x, y, dy):
    """Linearisation of :func:`rhs_forward` at the origin."""
    return dy, dy - y


class Trajectory:
    """Accepted steps of one integration run with dense output.

    Steps are kept in integration order; ``x_start``/``x_end`` follow the
    direction of integration while ``x_min``/``x_max`` give the domain.
    """

    def __init__(self, x0, h, y0, y1, q):
        self._x0 = np.asarray(x0, dtype=float)
        self._h = np.asarray(h, dtype=float)
        self._y0 = np.asarray(y0, dtype=float).reshape(-1, 2)
        self._y1 = np.asarray(y1, dtype=float).reshape(-1, 2)
        self._q = np.asarray(q, dtype=float).reshape(-1, 2, 4)
        if len(self._h) == 0:
            raise ValueError("trajectory needs at least one step")
        self.direction = 1.0 if self._h[0] > 0 else -1.0
        # ascending lookup table
        lo = np.minimum(self._x0, self._x0 + self._h)
        order = np.argsort(lo, kind="stable")
        self._order = order
        self._lo = lo[order]
        self._lo_list = self._lo.tolist()

    @property
    def n_steps(self):
        return len(self._h)

    @property
    def x_start(self):
        return float(self._x0[0])

    @property
    def x_end(self):
        return float(self._x0[-1] + self._h[-1])

    @property
    def x_min(self):
        return min(self.x_start, self.x_end)

    @property
    def x_max(self):
        return max(self.x_start, self.x_end)

    @property
    def nodes_x(self):
        """Step boundaries in integration order, ``n_steps + 1`` values."""
        return np.append(self._x0, self.x_end)

    @property
    def nodes_y(self):
        return np.vstack([self._y0[:1], self._y1])

    @property
    def start(self):
        return State(self.x_start, *map(float, self._y0[0]))

    @property
    def end(self):
        return State(self.x_end, *map(float, self._y1[-1]))

    def step_interpolant(self, i, theta):
        """Evaluate step ``i`` at fractional position ``theta`` in [0, 1]."""
        q = self._q[i]
        h = self._h[i]
        poly = theta * (q[:, 0] + theta * (q[:, 1] + theta * (q[:, 2] + theta * q[:, 3])))
        return self._y0[i] + h * poly

    def step_derivative(self, i, theta):
        """Derivative in x of the step ``i`` interpolant at ``theta``."""
        q = self._q[i]
        return q[:, 0] + theta * (2 * q[:, 1] + theta * (3 * q[:, 2] + theta * 4 * q[:, 3]))

    def step_of(self, x):
        if x < self.x_min or x > self.x_max:
            raise ValueError(f"x={x} outside trajectory domain [{self.x_min}, {self.x_max}]")
        j = max(bisect.bisect_right(self._lo_list, x) - 1, 0)
        return int(self._order[j])

    def __call__(self, x) -> State:
        x = float(x)
        i = self.step_of(x)
        theta = (x - self._x0[i]) / self._h[i]
        y, dy = self.step_interpolant(i, theta)
        return State(x, float(y), float(dy))

    def sample(self, xs):
        """Vectorised dense output; returns arrays ``(y, dy)``."""
        xs = np.asarray(xs, dtype=float)
        if xs.size and (xs.min() < self.x_min or xs.max() > self.x_max):
            raise ValueError("sample points outside trajectory domain")
        j = np.clip(np.searchsorted(self._lo, xs, side="right") - 1, 0, len(self._lo) - 1)
        i = self._order[j]
        h = self._h[i]
        theta = (xs - self._x0[i]) / h
        q = self._q[i]
        th = theta[..., None]
        poly = th * (q[..., 0] + th * (q[..., 1] + th * (q[..., 2] + th * q[..., 3])))
        out = self._y0[i] + h[..., None] * poly
        return out[..., 0], out[..., 1]

    def shifted(self, dx):
        """The same trajectory with every abscissa moved by ``dx``."""
        return Trajectory(self._x0 + dx, self._h, self._y0, self._y1, self._q)


def _norm(e0, e1, s0, s1):
    return math.sqrt(0.5 * ((e0 / s0) ** 2 + (e1 / s1) ** 2))


def _initial_step(rhs, x, y, dy, f, direction, cfg):
    rtol, atol = cfg.rel_tol, cfg.abs_tol
    s0 = atol + rtol * abs(y)
    s1 = atol + rtol * abs(dy)
    d0 = _norm(y, dy, s0, s1)
    d1 = _norm(f[0], f[1], s0, s1)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, cfg.max_step)
    g = rhs(x + direction * h0, y + direction * h0 * f[0], dy + direction * h0 * f[1])
    d2 = _norm(g[0] - f[0], g[1] - f[1], s0, s1) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, cfg.max_step)


def integrate(rhs: Rhs, init: State, x_end: float, cfg: IntegratorConfig = DEFAULT_CONFIG,
              stop: Callable[[State], bool] | None = None) -> Trajectory:
    """Integrate from ``init`` to ``x_end`` (either direction).

    ``stop`` is checked on every accepted step end; when it returns True the
    run ends there, so the returned trajectory may be shorter than asked.
    Blow-up (|y| > cfg.blowup or non-finite values) raises
    :class:`NonFiniteState` carrying the partial trajectory.
    """
    x, y, dy = float(init.x), float(init.y), float(init.dy)
    x_end = float(x_end)
    if x_end == x:
        raise ValueError("x_end must differ from init.x")
    direction = 1.0 if x_end > x else -1.0
    rtol, atol = cfg.rel_tol, cfg.abs_tol

    X0, H, Y0, Y1, Q = [], [], [], [], []

    def partial():
        return Trajectory(X0, H, Y0, Y1, Q) if H else None

    f = rhs(x, y, dy)
    h_abs = _initial_step(rhs, x, y, dy, f, direction, cfg)
    n_attempts = 0
    while direction * (x_end - x) > 0:
        n_attempts += 1
        if n_attempts > cfg.max_steps:
            raise StepCountExceeded(f"more than {cfg.max_steps} step attempts")
        min_step = 10 * math.ulp(x) if x != 0 else 1e-300
        h_abs = min(h_abs, cfg.max_step)
        if h_abs < min_step:
            raise StepUnderflow(f"step {h_abs:g} underflows at x={x}")
        remaining = abs(x_end - x)
        last = h_abs >= remaining
        h = direction * (remaining if last else h_abs)

        k1 = f
        k2 = rhs(x + _C2 * h, y + h * _A21 * k1[0], dy + h * _A21 * k1[1])
        k3 = rhs(x + _C3 * h,
                 y + h * (_A31 * k1[0] + _A32 * k2[0]),
                 dy + h * (_A31 * k1[1] + _A32 * k2[1]))
        k4 = rhs(x + _C4 * h,
                 y + h * (_A41 * k1[0] + _A42 * k2[0] + _A43 * k3[0]),
                 dy + h * (_A41 * k1[1] + _A42 * k2[1] + _A43 * k3[1]))
        k5 = rhs(x + _C5 * h,
                 y + h * (_A51 * k1[0] + _A52 * k2[0] + _A53 * k3[0] + _A54 * k4[0]),
                 dy + h * (_A51 * k1[1] + _A52 * k2[1] + _A53 * k3[1] + _A54 * k4[1]))
        k6 = rhs(x + h,
                 y + h * (_A61 * k1[0] + _A62 * k2[0] + _A63 * k3[0] + _A64 * k4[0] + _A65 * k5[0]),
                 dy + h * (_A61 * k1[1] + _A62 * k2[1] + _A63 * k3[1] + _A64 * k4[1] + _A65 * k5[1]))
        yn = y + h * (_B1 * k1[0] + _B3 * k3[0] + _B4 * k4[0] + _B5 * k5[0] + _B6 * k6[0])
        dyn = dy + h * (_B1 * k1[1] + _B3 * k3[1] + _B4 * k4[1] + _B5 * k5[1] + _B6 * k6[1])
        xn = x_end if last else x + h
        k7 = rhs(xn, yn, dyn)

        if not (math.isfinite(yn) and math.isfinite(dyn)):
            # a non-finite trial step may just be too long; shrink first
            if h_abs > 1e-8:
                h_abs *= _MIN_FACTOR
                continue
            raise NonFiniteState(f"non-finite state at x={xn}", trajectory=partial())

        e0 = h * (_E1 * k1[0] + _E3 * k3[0] + _E4 * k4[0] + _E5 * k5[0] + _E6 * k6[0] + _E7 * k7[0])
        e1 = h * (_E1 * k1[1] + _E3 * k3[1] + _E4 * k4[1] + _E5 * k5[1] + _E6 * k6[1] + _E7 * k7[1])
        err = _norm(e0, e1, atol + rtol * max(abs(y), abs(yn)), atol + rtol * max(abs(dy), abs(dyn)))

        if err > 1.0:
            h_abs = abs(h) * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
            continue

        ks = (k1, k2, k3, k4, k5, k6, k7)
        q = [[sum(ks[i][c] * DENSE_P[i][j] for i in (0, 2, 3, 4, 5, 6)) for j in range(4)]
             for c in (0, 1)]
        X0.append(x)
        H.append(xn - x)
        Y0.append((y, dy))
        Y1.append((yn, dyn))
        Q.append(q)

        x, y, dy, f = xn, yn, dyn, k7
        if abs(y) > cfg.blowup:
            raise NonFiniteState(f"blow-up |y|={abs(y):g} at x={x}",
                                 state=(x, y, dy), trajectory=partial())
        if stop is not None and stop(State(x, y, dy)):
            break
        factor = _MAX_FACTOR if err == 0 else min(_MAX_FACTOR, _SAFETY * err ** -0.2)
        h_abs = abs(h) * factor

    return Trajectory(X0, H, Y0, Y1, Q)


def bisect_root(g: Callable[[float], float], a: float, b: float, xtol: float = 1e-13,
                ga: float | None = None, gb: float | None = None, max_iter: int = 200) -> float:
    """Plain bisection for a sign change of ``g`` between ``a`` and ``b``.

    ``a`` and ``b`` may come in either order. Returns the midpoint of the
    final bracket (or an exact zero if one is hit).
    """
    ga = g(a) if ga is None else ga
    gb = g(b) if gb is None else gb
    if ga == 0:
        return a
    if gb == 0:
        return b
    if (ga > 0) == (gb > 0):
        raise NoSignChange(f"no sign change on [{a}, {b}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if abs(b - a) <= xtol or m == a or m == b:
            break
        gm = g(m)
        if gm == 0:
            return m
        if (gm > 0) == (ga > 0):
            a, ga = m, gm
        else:
            b, gb = m, gm
    return 0.5 * (a + b)


def find_event(traj: Trajectory, predicate: Callable[[State], float], xtol: float = 1e-13) -> float:
    """First abscissa (in integration order) where ``predicate`` changes sign.

    Sign changes are detected between step endpoints, then refined by
    bisection on the dense output.
    """
    xs = traj.nodes_x.tolist()
    ys = traj.nodes_y.tolist()
    # exact zeros count only when the sign differs on either side of them
    g_prev = None
    first_zero = None
    for k in range(len(xs)):
        g = predicate(State(xs[k], *ys[k]))
        if g == 0:
            if g_prev is not None and first_zero is None:
                first_zero = xs[k]
            continue
        if g_prev is not None and (g > 0) != (g_prev[1] > 0):
            if first_zero is not None:
                return first_zero
            return bisect_root(lambda s: predicate(traj(s)), g_prev[0], xs[k],
                               xtol=xtol, ga=g_prev[1], gb=g)
        g_prev = (xs[k], g)
        first_zero = None
    raise NoSignChange("predicate keeps one sign along the trajectory")
