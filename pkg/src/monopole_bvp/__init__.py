"""Global solution of y'' - y' + y = y^3 joining 0 at -inf to 1 at +inf,
and the radial profile f(r) = y*(log(r/r0)) of r^2 f'' + f = f^3."""

from .connection import ConnectionConstants, assemble, compute_constants
from .integrator import IntegratorConfig, State, Trajectory, find_event, integrate
from .phase import PhaseCurve, solve_P
from .picard import GridFunction, apply_T, extend_left, solve_fixed_point
from .pipeline import PipelineConfig, run
from .profile import ProfileModel, RadialProfile, build_profile, evaluate_f, find_zeros
from .shooting import classify_shot, find_critical_slope, stable_manifold_branch

__all__ = [
    "ConnectionConstants", "GridFunction", "IntegratorConfig", "PhaseCurve", "PipelineConfig",
    "ProfileModel", "RadialProfile", "State", "Trajectory", "apply_T", "assemble",
    "build_profile", "classify_shot", "compute_constants", "evaluate_f", "extend_left",
    "find_critical_slope", "find_event", "find_zeros", "integrate", "run", "solve_P",
    "solve_fixed_point", "stable_manifold_branch",
]
