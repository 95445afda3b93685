"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 could not run.

    monopole-bvp critical-slope [--tol 1e-11] [--bracket LO HI]
    monopole-bvp constants [--format json|csv]
    monopole-bvp profile --range -25 10 --step 0.01 --out fig1.csv
    monopole-bvp pz --samples 401 --out fig2.csv
    monopole-bvp radial --r0 1 --range 1e-10 1e10 --step 0.01
    monopole-bvp verify [--json]
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import pipeline
from .errors import MonopoleError, NonpositiveRadius
from .profile import RadialProfile, evaluate_f, radial_asymptotics
from .verification import run_checks

COMMANDS = ("critical-slope", "constants", "profile", "pz", "radial", "verify")
DEFAULT_PROFILE_RANGE = (-25.0, 10.0)
DEFAULT_PROFILE_STEP = 0.01
DEFAULT_RADIAL_RANGE = (1e-10, 1e10)
DEFAULT_RADIAL_STEP = 0.01
DEFAULT_PZ_SAMPLES = 401
# radial regimes by |log(r/r0)|
ORIGIN_BELOW = -8.0
INFINITY_ABOVE = 8.0
NEAR_R0 = 0.05


@dataclass(frozen=True)
class RunConfig:
    command: str
    tol: float | None = None
    window: float | None = None
    horizon: float | None = None
    trunc_bc: float | None = None
    trunc_d: float | None = None
    z0: float | None = None
    r0: float = 1.0
    bracket: tuple[float, float] | None = None
    range: tuple[float, float] | None = None
    step: float | None = None
    samples: int = DEFAULT_PZ_SAMPLES
    a_star: float | None = None
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        for name in ("tol", "window", "horizon", "trunc_bc", "trunc_d", "z0", "r0", "step"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"--{name.replace('_', '-')} must be positive, got {v!r}")
        if self.samples < 2:
            raise ValueError("--samples must be at least 2")
        if self.range is not None and not self.range[0] < self.range[1]:
            raise ValueError("--range needs LO < HI")

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def pipeline_config(self) -> pipeline.PipelineConfig:
        kw = {}
        for name in ("tol", "window", "horizon", "trunc_bc", "trunc_d", "z0", "a_star"):
            v = getattr(self, name)
            if v is not None:
                kw[name] = v
        if self.bracket is not None:
            kw["bracket"] = tuple(self.bracket)
        return pipeline.PipelineConfig(**kw)


def fmt(v):
    """Shortest round-trip text for floats; empty for missing."""
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(rows: list[dict], columns: list[str], fmt_tag: str) -> str:
    if fmt_tag == "json":
        payload = [{k: _json_value(r[k]) for k in columns} for r in rows]
        return json.dumps(payload if len(payload) != 1 else payload[0], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[k]) for k in columns])
    return buf.getvalue()


def _grid(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    # rounding keeps printed abscissas free of representation noise
    return np.round(lo + step * np.arange(n + 1), 12)


def cmd_critical_slope(cfg: RunConfig):
    s = pipeline.critical_slope(cfg.pipeline_config())
    row = {"a_star": s.value, "bracket_lo": s.bracket_lo, "bracket_hi": s.bracket_hi,
           "iterations": s.iterations}
    return [row], list(row)


def cmd_constants(cfg: RunConfig):
    p = pipeline.run(cfg.pipeline_config())
    row = p.constants.as_dict()
    row["trunc_bc"] = p.config.trunc_bc
    row["trunc_d"] = p.config.trunc_d
    return [row], list(row)


def cmd_profile(cfg: RunConfig):
    lo, hi = cfg.range or DEFAULT_PROFILE_RANGE
    xs = _grid(lo, hi, cfg.step or DEFAULT_PROFILE_STEP)
    model = pipeline.run(cfg.pipeline_config()).model
    y, dy = model.evaluate(xs, derivative=True)
    rows = [{"x": float(x), "y": float(a), "dy": float(b)} for x, a, b in zip(xs, y, dy)]
    return rows, ["x", "y", "dy"]


def cmd_pz(cfg: RunConfig):
    curve = pipeline.run(cfg.pipeline_config()).phase_curve
    z, P = curve.samples(cfg.samples)
    return [{"z": float(a), "P": float(b)} for a, b in zip(z, P)], ["z", "P"]


def cmd_radial(cfg: RunConfig):
    radial = RadialProfile(pipeline.run(cfg.pipeline_config()).model, cfg.r0)
    lo, hi = cfg.range or tuple(v * cfg.r0 for v in DEFAULT_RADIAL_RANGE)
    if not lo > 0:
        raise NonpositiveRadius("radial range must be positive")
    lg = math.log10(lo)
    r = 10.0 ** (lg + _grid(0.0, math.log10(hi) - lg, cfg.step or DEFAULT_RADIAL_STEP))
    f = evaluate_f(radial, r)
    small, near, large = radial_asymptotics(radial, r)
    lr = np.log(r / cfg.r0)
    rows = []
    for i in range(len(r)):
        if lr[i] < ORIGIN_BELOW:
            regime, asym = "origin", small[i]
        elif lr[i] > INFINITY_ABOVE:
            regime, asym = "infinity", large[i]
        elif abs(lr[i]) < NEAR_R0:
            regime, asym = "near_r0", near[i]
        else:
            regime, asym = "core", None
        rows.append({"r": float(r[i]), "f": float(f[i]), "regime": regime,
                     "f_asymptotic": None if asym is None else float(asym)})
    return rows, ["r", "f", "regime", "f_asymptotic"]


HANDLERS = {
    "critical-slope": cmd_critical_slope,
    "constants": cmd_constants,
    "profile": cmd_profile,
    "pz": cmd_pz,
    "radial": cmd_radial,
}


def cmd_verify(cfg: RunConfig):
    checks = run_checks(pipeline.run(cfg.pipeline_config()))
    if cfg.format == "json":
        text = "".join(json.dumps(c.as_dict()) + "\n" for c in checks)
    else:
        text = "".join(c.line() + "\n" for c in checks)
    return text, all(c.passed for c in checks)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="bisection width for a* (default 1e-11)")
    common.add_argument("--window", type=float, help="shooting window (default 40)")
    common.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    common.add_argument("--horizon", type=float, help="Picard horizon T (default 30)")
    common.add_argument("--trunc-bc", type=float, help="truncation depth for b*, c* (default 30)")
    common.add_argument("--trunc-d", type=float, help="truncation depth for d* (default 15)")
    common.add_argument("--z0", type=float, help="start of the phase curve (default 1e-40)")
    common.add_argument("--r0", type=float, default=1.0, help="largest zero radius (default 1)")
    common.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    common.add_argument("--step", type=float, help="x spacing (profile) or log10 r spacing (radial)")
    common.add_argument("--samples", type=int, default=DEFAULT_PZ_SAMPLES, help="rows for pz")
    common.add_argument("--a-star", type=float, help="use this a* instead of shooting")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--json", action="store_true", help="same as --format json")
    common.add_argument("--out", metavar="PATH", help="write to file instead of stdout")

    parser = argparse.ArgumentParser(prog="monopole-bvp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _config_from_args(args) -> RunConfig:
    if args.json:
        fmt_tag = "json"
    elif args.format:
        fmt_tag = args.format
    else:
        fmt_tag = "text" if args.command == "verify" else (
            "json" if args.command in ("critical-slope", "constants") else "csv")
    return RunConfig(
        command=args.command, tol=args.tol, window=args.window, horizon=args.horizon,
        trunc_bc=args.trunc_bc, trunc_d=args.trunc_d, z0=args.z0, r0=args.r0,
        bracket=tuple(args.bracket) if args.bracket else None,
        range=tuple(args.range) if args.range else None, step=args.step, samples=args.samples,
        a_star=args.a_star, format=fmt_tag, out=args.out)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
        if cfg.command == "verify":
            text, ok = cmd_verify(cfg)
            _emit(text, cfg.out)
            return 0 if ok else 1
        rows, columns = HANDLERS[cfg.command](cfg)
        _emit(render(rows, columns, "csv" if cfg.format == "text" else cfg.format), cfg.out)
    except (MonopoleError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
