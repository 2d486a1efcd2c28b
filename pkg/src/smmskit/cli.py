"""Command-line front end.

Subcommands: ``list-spaces`` (catalog with parameter schemas), ``check``
(run one theorem check on one space), ``sweep`` (run a check over a
parameter grid).  JSON is the canonical report format; grids export as CSV
with header exactly ``r,lhs,rhs,margin``.

Exit codes: 0 all checks pass, 1 any check fails, 2 malformed input
(diagnostic names the offending field), 3 all checks gated NOT-APPLICABLE.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import comparison as cmp
from . import diameter, eigen
from .numkit import KernelError, Tolerance
from .smms import CATALOG, WarpedSMMS, make_space

__all__ = ["SpaceSpec", "RunReport", "main", "run", "CHECK_IDS"]

CHECK_IDS = cmp.THEOREM_IDS + ("MYERS", "CHENG", "EIGEN")

# Theorem-level flags; anything else in a sweep range targets the space.
_THEOREM_PARAMS = {"H", "k", "a", "r", "R", "r0", "alpha", "delta", "epsilon"}


class InputError(Exception):
    """Malformed input; message names the offending field."""


@dataclass
class SpaceSpec:
    """Space selection as echoed into reports (catalog id or custom)."""

    name: str
    n: int
    params: dict = field(default_factory=dict)
    custom: dict | None = None

    def build(self) -> WarpedSMMS:
        if self.name == "custom":
            if not self.custom:
                raise InputError("custom space requires a 'custom' profile block")
            return make_space("custom", n=self.n, **self.custom)
        return make_space(self.name, n=self.n, **self.params)

    def to_dict(self) -> dict:
        out = {"name": self.name, "n": self.n, "params": dict(self.params)}
        if self.custom is not None:
            out["custom"] = self.custom
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SpaceSpec":
        return cls(name=d["name"], n=int(d["n"]), params=dict(d.get("params", {})),
                   custom=d.get("custom"))


@dataclass
class RunReport:
    """Top-level report: tool version, echoed spec, checks and verdict."""

    tool_version: str
    spec: dict
    checks: list
    verdict: str

    def to_dict(self) -> dict:
        return {"tool_version": self.tool_version, "spec": self.spec,
                "checks": self.checks, "verdict": self.verdict}


def _overall(verdicts: list[str]) -> tuple[str, int]:
    if any(v == "FAIL" for v in verdicts):
        return "FAIL", 1
    if verdicts and all(v == "NOT-APPLICABLE" for v in verdicts):
        return "NOT-APPLICABLE", 3
    return "PASS", 0


def _resolve_H(args, spec: SpaceSpec) -> float:
    if getattr(args, "H", None) is not None:
        return float(args.H)
    if "H" in spec.params:
        return float(spec.params["H"])
    return 0.0


def _validate_range_early(tid: str, H: float, args) -> None:
    R = getattr(args, "R", None)
    if R is not None and tid in cmp.THEOREM_IDS:
        cmp.require_admissible(tid, H, float(R))


def _require(args, name: str, tid: str):
    val = getattr(args, name, None)
    if val is None:
        raise InputError(f"theorem {tid} requires --{name}")
    return val


def _run_check(space: WarpedSMMS, tid: str, H: float, args):
    mode = args.mode
    grid_n = args.grid
    if tid == "MC_ROUGH":
        r0 = args.r0 if args.r0 is not None else space.r_interior_hi / 4.0
        return cmp.check_mc_rough(space, H, r0, mode=mode, n_grid=grid_n)
    if tid == "MC_BOUNDED_F_INNER":
        return cmp.check_mc_bounded_f_inner(space, H, args.k, mode=mode, n_grid=grid_n)
    if tid == "MC_BOUNDED_F_PI2":
        return cmp.check_mc_bounded_f_pi2(space, H, args.k, mode=mode, n_grid=grid_n)
    if tid == "MC_DRIFT":
        return cmp.check_mc_drift(space, H, args.a, mode=mode, n_grid=grid_n)
    if tid in ("AREA_A", "AREA_B"):
        bound = "k" if tid == "AREA_A" else "a"
        const = args.k if bound == "k" else args.a
        r = float(_require(args, "r", tid))
        R = float(_require(args, "R", tid))
        return cmp.check_area_comparison(space, H, r, R, bound=bound, const=const,
                                         mode=mode, n_grid=grid_n)
    if tid in ("VOL_A", "VOL_B"):
        bound = "k" if tid == "VOL_A" else "a"
        const = args.k if bound == "k" else args.a
        r = float(_require(args, "r", tid))
        R = float(_require(args, "R", tid))
        return cmp.check_volume_comparison(space, H, r, R, bound=bound, const=const,
                                           mode=mode, n_grid=grid_n)
    if tid == "VOL_B_ABS":
        R = float(_require(args, "R", tid))
        return cmp.check_volume_absolute(space, H, R, const=args.a,
                                         mode=mode, n_grid=grid_n)
    if tid == "VOL_R1":
        R = float(_require(args, "R", tid))
        return cmp.check_vol_r1(space, H, R, const=args.k, mode=mode, n_grid=grid_n)
    if tid == "DOUBLING":
        alpha = float(_require(args, "alpha", tid))
        R = float(_require(args, "R", tid))
        bound = "k" if args.k is not None else "a"
        const = args.k if bound == "k" else args.a
        return cmp.check_doubling(space, H, alpha, R, epsilon=args.epsilon,
                                  bound=bound, const=const, mode=mode,
                                  n_grid=min(grid_n, 64))
    if tid == "VOL_ABS_NEGH":
        R_grid = None
        if args.R is not None:
            R_grid = np.linspace(float(args.R) / grid_n, float(args.R), grid_n)
        return cmp.check_absolute_volume_negH(space, H, k=args.k, R_grid=R_grid,
                                              mode=mode)
    if tid == "MYERS":
        return diameter.check_myers(space, H, mode=mode)
    if tid == "CHENG":
        R = float(_require(args, "R", tid))
        delta = float(_require(args, "delta", tid))
        tol = Tolerance(abs_tol=args.tol_abs, rel_tol=max(args.tol_rel, 1e-12),
                        max_steps=200_000)
        return eigen.check_cheng_estimate(space, H, args.a, R, delta, mode=mode,
                                          tol=tol)
    if tid == "EIGEN":
        R = float(_require(args, "R", tid))
        tol = Tolerance(abs_tol=args.tol_abs, rel_tol=max(args.tol_rel, 1e-12),
                        max_steps=200_000)
        return eigen.smms_radial_eigenvalue(space, R, tol)
    raise InputError(f"unknown theorem id {tid!r}; known: {', '.join(CHECK_IDS)}")


def _emit(report: RunReport, args) -> None:
    payload = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if args.out and args.format == "json":
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)


def _export_grids(reports: list, checks: list[dict], args) -> None:
    if args.format != "csv" or not args.out:
        return
    gridded = [(i, rep) for i, rep in enumerate(reports)
               if hasattr(rep, "grid_csv") or hasattr(rep, "samples_csv")]
    for j, (i, rep) in enumerate(gridded):
        path = Path(args.out)
        if len(gridded) > 1:
            path = path.with_name(f"{path.stem}_{j}{path.suffix or '.csv'}")
        csv = rep.grid_csv() if hasattr(rep, "grid_csv") else rep.samples_csv()
        path.write_text(csv)
        checks[i]["grid_csv_path"] = str(path)


def run_spec_check(spec: SpaceSpec, theorem: str, args):
    """Validate, build the space, run one theorem check, assemble the report."""
    tid = theorem.upper()
    if tid not in CHECK_IDS:
        raise InputError(f"unknown theorem id {tid!r}; known: {', '.join(CHECK_IDS)}")
    H = _resolve_H(args, spec)
    _validate_range_early(tid, H, args)
    space = spec.build()

    t_start = time.perf_counter()
    rep = _run_check(space, tid, H, args)
    wall_ms = (time.perf_counter() - t_start) * 1e3

    reports = rep if isinstance(rep, list) else [rep]
    checks = []
    for r in reports:
        d = r.to_dict()
        d["wall_time_ms"] = wall_ms / len(reports)
        checks.append(d)
    verdict, code = _overall([c["verdict"] for c in checks])
    report = RunReport(tool_version=__version__, spec=spec.to_dict(),
                       checks=checks, verdict=verdict)
    return report, code, reports


def _parse_params(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InputError(f"--param expects K=V, got {pair!r}")
        key, _, val = pair.partition("=")
        try:
            out[key] = float(val)
        except ValueError as exc:
            raise InputError(f"--param {key}: not a real number: {val!r}") from exc
    return out


def _space_spec_from_args(args) -> SpaceSpec:
    if args.custom:
        try:
            payload = json.loads(Path(args.custom).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"--custom: cannot read spec file: {exc}") from exc
        if "n" not in payload:
            payload["n"] = args.n
        return SpaceSpec.from_dict({"name": "custom", **payload})
    params = _parse_params(args.param)
    return SpaceSpec(name=args.space, n=args.n, params=params)


def _add_check_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", default="euclidean", help="catalog space name")
    p.add_argument("--n", type=int, default=3, help="topological dimension")
    p.add_argument("--param", action="append", metavar="K=V",
                   help="space parameter (repeatable)")
    p.add_argument("--custom", metavar="FILE.json",
                   help="custom space spec (profile blocks w/f, r_max, closed)")
    p.add_argument("--theorem", required=True, help="theorem id to check")
    p.add_argument("--H", type=float, default=None, help="comparison curvature")
    p.add_argument("--k", type=float, default=None, help="potential bound sup|f|")
    p.add_argument("--a", type=float, default=None, help="drift bound")
    p.add_argument("--delta", type=float, default=None, help="eigenvalue slack")
    p.add_argument("--alpha", type=float, default=None, help="doubling factor")
    p.add_argument("--epsilon", type=float, default=None, help="doubling threshold")
    p.add_argument("--r", type=float, default=None, help="inner radius")
    p.add_argument("--R", type=float, default=None, help="outer radius")
    p.add_argument("--r0", type=float, default=None, help="base radius (MC_ROUGH)")
    p.add_argument("--grid", type=int, default=256, help="grid points")
    p.add_argument("--mode", choices=["radial", "full"], default="radial",
                   help="curvature excess mode")
    p.add_argument("--tol-abs", dest="tol_abs", type=float, default=1e-8)
    p.add_argument("--tol-rel", dest="tol_rel", type=float, default=1e-6)
    p.add_argument("--out", default=None, help="output file")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def _cmd_list_spaces(args) -> int:
    items = sorted(CATALOG.items())
    if args.json:
        payload = [{"name": name, **info} for name, info in items]
        print(json.dumps(payload, indent=2))
        return 0
    for name, info in items:
        print(f"{name}: {info['doc']}")
        for pname, pdoc in info["params"].items():
            print(f"    {pname}: {pdoc}")
    return 0


def _cmd_check(args) -> int:
    spec = _space_spec_from_args(args)
    report, code, reports = run_spec_check(spec, args.theorem, args)
    _export_grids(reports, report.checks, args)
    _emit(report, args)
    return code


def _parse_range(text: str) -> tuple[str, np.ndarray]:
    if "=" not in text:
        raise InputError(f"--range expects PARAM=start:stop:count, got {text!r}")
    name, _, body = text.partition("=")
    parts = body.split(":")
    if len(parts) != 3:
        raise InputError(f"--range {name}: expects start:stop:count, got {body!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InputError(f"--range {name}: malformed numbers in {body!r}") from exc
    if count <= 0:
        raise InputError(f"--range {name}: count must be positive, got {count}")
    return name, np.linspace(start, stop, count)


def _cmd_sweep(args) -> int:
    if not args.range:
        raise InputError("sweep requires at least one --range PARAM=start:stop:count")
    ranges = [_parse_range(r) for r in args.range]
    names = [name for name, _ in ranges]
    mesh = np.meshgrid(*[vals for _, vals in ranges], indexing="ij")
    points = np.column_stack([m.ravel() for m in mesh])

    rows = []
    verdicts = []
    extra_cols: list[str] = []
    for point in points:
        base_spec = _space_spec_from_args(args)
        for name, val in zip(names, point):
            if name in _THEOREM_PARAMS:
                setattr(args, name, float(val))
            else:
                base_spec.params[name] = float(val)
        report, _, _ = run_spec_check(base_spec, args.theorem, args)
        check = report.checks[0]
        verdicts.append(report.verdict)
        extras = {}
        if "epsilon" in check.get("params", {}):
            extras["epsilon"] = check["params"]["epsilon"]
        for key in extras:
            if key not in extra_cols:
                extra_cols.append(key)
        mm = check.get("min_margin")
        rows.append((list(point), mm, report.verdict, extras))

    header = ",".join(names) + ",min_margin,verdict"
    if extra_cols:
        header += "," + ",".join(extra_cols)
    lines = [header]
    for point, mm, verdict, extras in rows:
        cells = [f"{v:.17g}" for v in point]
        cells.append("nan" if mm is None else f"{mm:.17g}")
        cells.append(verdict)
        for key in extra_cols:
            cells.append(f"{extras.get(key, float('nan')):.17g}")
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")

    _, code = _overall(verdicts)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="smmskit",
        description="Check weighted comparison-geometry bounds on rotationally "
                    "symmetric smooth metric measure spaces.",
    )
    sub = parser.add_subparsers(dest="command")

    p_list = sub.add_parser("list-spaces", help="catalog of test spaces")
    p_list.add_argument("--json", action="store_true")

    p_check = sub.add_parser("check", help="run one theorem check")
    _add_check_flags(p_check)

    p_sweep = sub.add_parser("sweep", help="run a check over a parameter grid")
    _add_check_flags(p_sweep)
    p_sweep.add_argument("--range", action="append", metavar="PARAM=start:stop:count",
                         help="sweep range (repeatable)")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    if args.command is None:
        parser.print_usage()
        return 2

    try:
        if args.command == "list-spaces":
            return _cmd_list_spaces(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KernelError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
