"""Weighted integrals b*, c*, d* and the connection formulas A, phi, B.

    b* = int_{-inf}^0 e^{-s/2} cos(ws) y*(s)^3 ds
    c* = int_{-inf}^0 e^{-s/2} sin(ws) y*(s)^3 ds
    d* = int_0^inf e^s ((1 - y*)^2 - (1 - y*)^3 / 3) ds

truncated at finite depth. They feed the two-sided asymptotics

    y*(x) = A e^{x/2} sin(wx + phi) + O(e^{3x/2}),   x -> -inf
    y*(x) = 1 - B e^{-x} + O(e^{-2x}),               x -> +inf

with A = (2/sqrt3) |(a* - b*, c*)|, phi = atan2(c*, a* - b*) and
B = (2 + a*)/3 + d*.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import InsufficientDomain, PhaseQuadrant

OMEGA = math.sqrt(3.0) / 2.0
DEFAULT_TRUNC_BC = 30.0
DEFAULT_TRUNC_D = 15.0
DEFAULT_SPACING = 1e-3


@dataclass(frozen=True)
class ConnectionConstants:
    a_star: float
    b_star: float
    c_star: float
    d_star: float
    amplitude_A: float
    phase_phi: float
    coeff_B: float

    def as_dict(self):
        return {
            "a_star": self.a_star,
            "b_star": self.b_star,
            "c_star": self.c_star,
            "d_star": self.d_star,
            "amplitude_A": self.amplitude_A,
            "phase_phi": self.phase_phi,
            "phase_phi_over_pi": self.phase_phi / math.pi,
            "coeff_B": self.coeff_B,
        }


@dataclass(frozen=True)
class OrderReport:
    """Least-squares fit log|remainder| ~ slope * x + intercept."""

    slope: float
    intercept: float
    xs: np.ndarray
    log_remainder: np.ndarray


def _grid(a, b, spacing):
    n = max(int(round((b - a) / spacing)), 2)
    if n % 2:
        n += 1
    return np.linspace(a, b, n + 1)


def _left_samples(left, depth, spacing):
    if depth <= 0:
        raise ValueError("truncation depth must be positive")
    if left.x_min > -depth + 1e-12:
        raise InsufficientDomain(f"left branch reaches {left.x_min}, need {-depth}")
    s = _grid(-depth, 0.0, spacing)
    return s, np.asarray(left(s), dtype=float)


def compute_b_star(left, depth=DEFAULT_TRUNC_BC, spacing=DEFAULT_SPACING):
    s, y = _left_samples(left, depth, spacing)
    return float(simpson(np.exp(-0.5 * s) * np.cos(OMEGA * s) * y ** 3, x=s))


def compute_c_star(left, depth=DEFAULT_TRUNC_BC, spacing=DEFAULT_SPACING):
    s, y = _left_samples(left, depth, spacing)
    return float(simpson(np.exp(-0.5 * s) * np.sin(OMEGA * s) * y ** 3, x=s))


def _right_samples(right, depth, spacing):
    if depth <= 0:
        raise ValueError("truncation depth must be positive")
    if right.x_min > 1e-12 or right.x_max < depth:
        raise InsufficientDomain(f"right branch covers [{right.x_min}, {right.x_max}], need [0, {depth}]")
    s = _grid(0.0, depth, spacing)
    return s, np.asarray(right.z(s), dtype=float)


def compute_d_star(right, depth=DEFAULT_TRUNC_D, spacing=DEFAULT_SPACING):
    """Integrand evaluated through z = 1 - y* to keep relative accuracy far out."""
    s, z = _right_samples(right, depth, spacing)
    return float(simpson(np.exp(s) * (z * z - z ** 3 / 3.0), x=s))


def assemble(a_star, b_star, c_star, d_star) -> ConnectionConstants:
    re = a_star - b_star
    if not re > 0:
        raise PhaseQuadrant(f"a* - b* = {re!r} <= 0; the phase branch is not determined")
    amp = 2.0 / math.sqrt(3.0) * math.hypot(re, c_star)
    phi = math.atan2(c_star, re)
    coeff_B = (2.0 + a_star) / 3.0 + d_star
    return ConnectionConstants(a_star, b_star, c_star, d_star, amp, phi, coeff_B)


def compute_constants(a_star, left, right, trunc_bc=DEFAULT_TRUNC_BC, trunc_d=DEFAULT_TRUNC_D,
                      spacing=DEFAULT_SPACING) -> ConnectionConstants:
    return assemble(a_star,
                    compute_b_star(left, trunc_bc, spacing),
                    compute_c_star(left, trunc_bc, spacing),
                    compute_d_star(right, trunc_d, spacing))


def left_tail(x, amplitude, phase):
    x = np.asarray(x, dtype=float)
    return amplitude * np.exp(0.5 * x) * np.sin(OMEGA * x + phase)


def right_tail(x, coeff_B):
    return 1.0 - coeff_B * np.exp(-np.asarray(x, dtype=float))


def left_remainder(left, amplitude, phase, x):
    return np.asarray(left(x)) - left_tail(x, amplitude, phase)


def left_envelope(left, amplitude, phase, lo=-20.0, hi=-8.0, spacing=1e-3):
    """Successive local maxima of |R| on [lo, hi].

    R has zeros, so the log fit is done at its extrema, where the
    oscillating factor peaks. Returns (abscissas, |R| values).
    """
    xs = _grid(lo, hi, spacing)
    r = np.abs(left_remainder(left, amplitude, phase, xs))
    cand = np.flatnonzero((r[1:-1] > r[:-2]) & (r[1:-1] >= r[2:])) + 1
    # rounding noise can split one extremum in two; extrema are ~pi/w apart
    k = []
    for i in cand:
        if k and xs[i] - xs[k[-1]] < 0.25 * math.pi / OMEGA:
            if r[i] > r[k[-1]]:
                k[-1] = i
        else:
            k.append(i)
    k = np.array(k, dtype=int)
    if len(k) < 2:
        raise ValueError("fewer than two extrema of the remainder in the fit range")
    return xs[k], r[k]


def _fit(xs, vals):
    logs = np.log(np.abs(vals))
    slope, intercept = np.polyfit(xs, logs, 1)
    return OrderReport(float(slope), float(intercept), np.asarray(xs), logs)


def verify_left_asymptotic(left, amplitude, phase, lo=-20.0, hi=-8.0) -> OrderReport:
    """Fitted log-slope of the remainder envelope; 3/2 is expected."""
    if left.x_min > lo:
        raise InsufficientDomain(f"left branch must reach {lo}")
    return _fit(*left_envelope(left, amplitude, phase, lo, hi))


def right_remainder(right, coeff_B, x):
    x = np.asarray(x, dtype=float)
    return np.asarray(right.z(x)) - coeff_B * np.exp(-x)


def verify_right_asymptotic(right, coeff_B, lo=6.0, hi=14.0, n=81) -> OrderReport:
    """Fitted log-slope of Q = 1 - y* - B e^{-x}; -2 is expected.

    ``coeff_B`` must be the untruncated coefficient: an error dB adds
    dB e^{-x} to Q, which dominates the e^{-2x} term once x is large.
    """
    if right.x_max < hi:
        raise InsufficientDomain(f"right branch must reach {hi}")
    xs = np.linspace(lo, hi, n)
    return _fit(xs, right_remainder(right, coeff_B, xs))


def integral_identity(right, depth=DEFAULT_TRUNC_D, spacing=DEFAULT_SPACING):
    """int_0^S e^{-2s}(-3z^2 + z^3) ds with z = 1 - y*."""
    s, z = _right_samples(right, depth, spacing)
    return float(simpson(np.exp(-2.0 * s) * (-3.0 * z * z + z ** 3), x=s))


def integral_identity_check(right, a_star, depth=DEFAULT_TRUNC_D, spacing=DEFAULT_SPACING):
    """|integral - (a* - 1)|; the exact identity holds for S -> inf."""
    return abs(integral_identity(right, depth, spacing) - (a_star - 1.0))
