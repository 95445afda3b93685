"""End-to-end construction of y* and everything derived from it."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from . import connection, picard, shooting
from .integrator import DEFAULT_CONFIG, IntegratorConfig
from .phase import DEFAULT_Z0, PhaseCurve, solve_P
from .profile import ProfileModel, build_profile

# truncation used for the untruncated B in the right-tail order check
FULL_TRUNC_D = 35.0


@dataclass(frozen=True)
class PipelineConfig:
    tol: float = shooting.DEFAULT_TOL
    window: float = shooting.DEFAULT_WINDOW
    bracket: tuple[float, float] = shooting.DEFAULT_BRACKET
    horizon: float = picard.DEFAULT_HORIZON
    n_points: int = picard.DEFAULT_POINTS
    picard_tol: float = picard.DEFAULT_TOL
    trunc_bc: float = connection.DEFAULT_TRUNC_BC
    trunc_d: float = connection.DEFAULT_TRUNC_D
    z0: float = DEFAULT_Z0
    # skip shooting and use this slope (sensitivity probes)
    a_star: float | None = None
    integrator: IntegratorConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        for name in ("tol", "window", "horizon", "picard_tol", "trunc_bc", "trunc_d", "z0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.n_points < 4:
            raise ValueError("n_points must be at least 4")
        if self.a_star is not None and not 0 < self.a_star < 0.25:
            raise ValueError("a_star override must lie in (0, 1/4)")


@dataclass
class Pipeline:
    config: PipelineConfig
    slope: shooting.CriticalSlope | None
    a_star: float
    u_star: picard.GridFunction
    report: picard.FixedPointReport
    left: picard.LeftBranch
    right: shooting.RightBranch
    constants: connection.ConnectionConstants

    @functools.cached_property
    def coeff_B_full(self):
        """B with d* integrated far enough that its truncation error is ~e^{-35}."""
        depth = min(FULL_TRUNC_D, self.right.x_max)
        return (2.0 + self.a_star) / 3.0 + connection.compute_d_star(self.right, depth)

    @functools.cached_property
    def phase_curve(self) -> PhaseCurve:
        return solve_P(self.config.z0)

    @functools.cached_property
    def model(self) -> ProfileModel:
        return build_profile(self.constants, self.left, self.right)


def critical_slope(cfg: PipelineConfig) -> shooting.CriticalSlope:
    lo, hi = cfg.bracket
    return shooting.find_critical_slope(lo, hi, cfg.tol, cfg.window, cfg.integrator)


@functools.lru_cache(maxsize=8)
def run(cfg: PipelineConfig = PipelineConfig()) -> Pipeline:
    slope = None
    if cfg.a_star is None:
        slope = critical_slope(cfg)
        a = slope.value
    else:
        a = cfg.a_star
    u, rep = picard.solve_fixed_point(a, cfg.horizon, cfg.n_points, cfg.picard_tol)
    left = picard.extend_left(u, a)
    right = shooting.stable_manifold_branch()
    consts = connection.compute_constants(a, left, right, cfg.trunc_bc, cfg.trunc_d)
    return Pipeline(cfg, slope, a, u, rep, left, right, consts)
