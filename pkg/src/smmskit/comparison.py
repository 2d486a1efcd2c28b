"""Grid-based verification of the comparison inequalities.

Each checker evaluates one inequality on a grid of radii inside its
admissible range and reports the margins rhs - lhs.  A check passes when
the minimum margin is above -max(1e-8, 1e-6 |rhs|); when the minimum
margin is within ten times that tolerance the grid is refined (x4) once to
separate genuine near-equality from discretization error.

Checks covered: the rough mean-curvature bound, the bounded-potential
bound m_f <= m_H^{n+4k} + int rho (inner range) and its pi/2 extension
with the 1/sin(2 sqrt(H) r) coefficient, the drift bound
m_f <= m_H^n + a + int rho, area and volume ratio comparisons against the
n+4k and drifted models with the exp((e^{clt}-1) A/V) correction, the
absolute-volume forms, doubling certificates e^{F(eps)} <= alpha, and the
hyperbolic absolute volume bound with the e^{cosh(2 sqrt(-H) t)} weight.

Hypothesis constants are computed from the space itself unless overridden:
k and a from ``potential_bounds``, l from ``integral_rho`` up to the outer
radius of the check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .model import (ModelSpace, area_model, c_const,
                    mean_curvature_model, sn, volume_model)
from .numkit import (StepLimitError, Tolerance, find_root_bracketed,
                     integrate_ode, quad_grid, sphere_area)
from .smms import (WarpedSMMS, _rho_clamped, integral_rho, mean_curvature_f,
                   potential_bounds, weighted_area)

__all__ = [
    "THEOREM_IDS",
    "ComparisonReport",
    "DoublingCertificate",
    "admissible_R",
    "check_mc_rough",
    "check_mc_bounded_f",
    "check_mc_bounded_f_inner",
    "check_mc_bounded_f_pi2",
    "check_mc_drift",
    "check_area_comparison",
    "check_volume_comparison",
    "check_volume_absolute",
    "check_vol_r1",
    "doubling_epsilon",
    "check_doubling",
    "check_absolute_volume_negH",
    "volume_ratio_profile",
]

THEOREM_IDS = (
    "MC_ROUGH",
    "MC_BOUNDED_F_INNER",
    "MC_BOUNDED_F_PI2",
    "MC_DRIFT",
    "AREA_A",
    "AREA_B",
    "VOL_A",
    "VOL_B",
    "VOL_B_ABS",
    "VOL_ABS_NEGH",
    "DOUBLING",
    "VOL_R1",
)

_UNITS = {
    "n": "dimensionless",
    "d": "dimensionless",
    "H": "1/length^2",
    "k": "dimensionless",
    "a": "1/length",
    "l": "1/length",
    "r": "length",
    "r0": "length",
    "R": "length",
    "alpha": "dimensionless",
    "epsilon": "1/length",
    "sigma": "1/length",
    "delta": "dimensionless",
    "c": "dimensionless",
    "F": "dimensionless",
    "lambda": "1/length^2",
    "L": "length",
}

def units_for(params: dict) -> dict:
    return {key: _UNITS.get(key, "unknown") for key in params}


@dataclass
class ComparisonReport:
    """Outcome of one inequality check on a radius grid.

    ``grid`` has columns (r, lhs, rhs, margin); ``passed`` is equivalent to
    ``min_margin >= -tolerance``; ``equality_radii`` flags |margin| within
    tolerance for rigidity inspection.  A hypothesis-gated check carries
    ``not_applicable=True`` and an explanatory ``reason``.
    """

    theorem_id: str
    params: dict
    grid: np.ndarray
    min_margin: float
    tolerance: float
    passed: bool
    mode: str = "radial"
    equality_radii: list = field(default_factory=list)
    not_applicable: bool = False
    reason: str = ""

    @property
    def verdict(self) -> str:
        if self.not_applicable:
            return "NOT-APPLICABLE"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        params = {k: (float(v) if isinstance(v, (int, float, np.floating)) else v)
                  for k, v in self.params.items()}
        return {
            "theorem_id": self.theorem_id,
            "params": params,
            "units": units_for(params),
            "mode": self.mode,
            "min_margin": None if math.isnan(self.min_margin) else float(self.min_margin),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            "verdict": self.verdict,
            "n_grid": int(self.grid.shape[0]),
            "n_equality": len(self.equality_radii),
            "equality_radii": [float(x) for x in self.equality_radii[:16]],
            "reason": self.reason,
        }

    def grid_csv(self) -> str:
        lines = ["r,lhs,rhs,margin"]
        for row in self.grid:
            lines.append(",".join(f"{x:.17g}" for x in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DoublingCertificate:
    """Solution of e^{F(epsilon)} = alpha for the doubling threshold."""

    n: int
    H: float
    R: float
    alpha: float
    epsilon: float
    F_at_epsilon: float
    k: float | None = None
    a: float | None = None

    def __post_init__(self) -> None:
        if math.exp(self.F_at_epsilon) > self.alpha + 1e-10:
            raise ValueError(
                f"doubling certificate violated: exp(F)={math.exp(self.F_at_epsilon)}"
                f" > alpha={self.alpha}"
            )

    @property
    def mode(self) -> str:
        return "bounded_f" if self.k is not None else "drift"

    def to_dict(self) -> dict:
        out = {"n": self.n, "H": self.H, "R": self.R, "alpha": self.alpha,
               "epsilon": self.epsilon, "F_at_epsilon": self.F_at_epsilon,
               "mode": self.mode}
        if self.k is not None:
            out["k"] = self.k
        if self.a is not None:
            out["a"] = self.a
        return out


# ---------------------------------------------------------------------------
# Range gates and shared grid machinery.
# ---------------------------------------------------------------------------

def admissible_R(theorem_id: str, H: float) -> float:
    """Largest admissible outer radius for a theorem at curvature H."""
    if H <= 0.0:
        return math.inf
    quarter = math.pi / (4.0 * math.sqrt(H))
    half = math.pi / (2.0 * math.sqrt(H))
    caps = {
        "MC_BOUNDED_F_INNER": quarter,
        "AREA_A": quarter,
        "VOL_A": quarter,
        "VOL_R1": quarter,
        "MC_BOUNDED_F_PI2": half,
        "MC_DRIFT": half,
        "AREA_B": half,
        "VOL_B": half,
        "VOL_B_ABS": half,
    }
    return caps.get(theorem_id, math.inf)


def require_admissible(theorem_id: str, H: float, R: float) -> None:
    cap = admissible_R(theorem_id, H)
    if R > cap + 1e-12:
        frac = "pi/(4 sqrt(H))" if abs(cap - math.pi / (4 * math.sqrt(H))) < 1e-12 \
            else "pi/(2 sqrt(H))"
        raise ValueError(f"R exceeds {frac} = {cap:.12g} for {theorem_id}")


def _cum_integral(fn, radii: np.ndarray, lo: float = 0.0) -> np.ndarray:
    """Cumulative integral of a vectorized integrand from ``lo`` to each
    grid radius."""
    edges = np.concatenate([[lo], np.asarray(radii, dtype=float)])
    segs, _ = quad_grid(fn, edges)
    return np.cumsum(segs)


def _exp_correction(mspace: ModelSpace, cl: float, radii: np.ndarray) -> np.ndarray:
    """E(r) = int_0^r (e^{cl t} - 1) A_model/V_model dt at each grid radius.

    Computed as one joint ODE solve for (V_model, E); the integrand tends to
    cl * dim at the pole, so the solve starts from a series value at a tiny
    radius.
    """
    if cl == 0.0:
        return np.zeros(len(radii))
    R = float(radii[-1])
    t0 = 1e-8 * R
    v0 = volume_model(mspace, t0, Tolerance(abs_tol=1e-14, rel_tol=1e-12))
    e0 = cl * mspace.dim * t0

    omega_d = sphere_area(mspace.dim)
    H, a, dm1 = mspace.H, mspace.drift, mspace.dim - 1.0
    if H > 0.0:
        sq = math.sqrt(H)
        sn_s = lambda t: math.sin(sq * t) / sq
    elif H < 0.0:
        sq = math.sqrt(-H)
        sn_s = lambda t: math.sinh(sq * t) / sq
    else:
        sn_s = lambda t: t

    def rhs(t, y):
        A = omega_d * math.exp(a * t) * sn_s(t) ** dm1
        return np.array([A, (math.exp(cl * t) - 1.0) * A / y[0]])

    traj = integrate_ode(rhs, t0, np.array([v0, e0]), R,
                         Tolerance(abs_tol=1e-14, rel_tol=1e-12),
                         max_step=R / 64.0)
    out = np.empty(len(radii))
    for i, r in enumerate(radii):
        out[i] = cl * mspace.dim * r if r <= t0 else traj.at(float(r))[1]
    return out


def _finalize(theorem_id: str, params: dict, mode: str, radii: np.ndarray,
              eval_on, refine: bool = True) -> ComparisonReport:
    lhs, rhs = eval_on(radii)
    margin = rhs - lhs
    imin = int(np.argmin(margin))
    tolv = max(1e-8, 1e-6 * abs(rhs[imin]))
    if refine and abs(margin[imin]) < 10.0 * tolv and len(radii) >= 2:
        radii = np.linspace(radii[0], radii[-1], 4 * (len(radii) - 1) + 1)
        lhs, rhs = eval_on(radii)
        margin = rhs - lhs
        imin = int(np.argmin(margin))
        tolv = max(1e-8, 1e-6 * abs(rhs[imin]))
    eq = radii[np.abs(margin) <= tolv]
    return ComparisonReport(
        theorem_id=theorem_id,
        params=params,
        grid=np.column_stack([radii, lhs, rhs, margin]),
        min_margin=float(margin[imin]),
        tolerance=float(tolv),
        passed=bool(margin[imin] >= -tolv),
        mode=mode,
        equality_radii=[float(x) for x in eq],
    )


def _not_applicable(theorem_id: str, params: dict, mode: str,
                    reason: str) -> ComparisonReport:
    return ComparisonReport(
        theorem_id=theorem_id, params=params,
        grid=np.empty((0, 4)), min_margin=math.nan, tolerance=1e-8,
        passed=False, mode=mode, not_applicable=True, reason=reason,
    )


def _resolve_k(s: WarpedSMMS, k) -> float:
    actual = potential_bounds(s).k
    if k is None:
        return actual
    if k < actual - 1e-9:
        raise ValueError(f"k={k} is below the space's sup|f|={actual}")
    return float(k)


def _resolve_a(s: WarpedSMMS, a) -> float:
    actual = potential_bounds(s).a
    if a is None:
        return actual
    if a < actual - 1e-9:
        raise ValueError(f"a={a} is below the space's drift bound {actual}")
    return float(a)


def _interior_cap(s: WarpedSMMS) -> float:
    return min(s.r_interior_hi, s.r_max * (1.0 - 1e-9))


def _mc_grid(s: WarpedSMMS, hi_cap: float, n_grid: int, lo: float | None = None,
             drop_right: bool = False) -> np.ndarray:
    hi = min(_interior_cap(s), hi_cap)
    lo = hi / n_grid if lo is None else lo
    if not lo < hi:
        raise ValueError(f"empty admissible grid: [{lo}, {hi}]")
    if drop_right:
        return np.linspace(lo, hi, n_grid + 1)[:-1]
    return np.linspace(lo, hi, n_grid)


# ---------------------------------------------------------------------------
# Mean curvature comparisons.
# ---------------------------------------------------------------------------

def check_mc_rough(s: WarpedSMMS, H: float, r0: float, grid=None,
                   mode: str = "radial", n_grid: int = 256,
                   refine: bool = True) -> ComparisonReport:
    """m_f(r) <= m_f(r0) - (n-1) H (r - r0) + int_{r0}^r rho."""
    cap = _interior_cap(s)
    if not 0.0 < r0 < cap:
        raise ValueError(f"r0={r0} outside (0, {cap})")
    radii = np.asarray(grid, dtype=float) if grid is not None \
        else np.linspace(r0, cap, n_grid)
    if radii[0] < r0 or radii[-1] >= s.r_max:
        raise ValueError("grid must lie in [r0, r_max)")
    base = float(mean_curvature_f(s, r0))

    def eval_on(rs):
        lhs = np.asarray(mean_curvature_f(s, rs))
        cum = _cum_integral(lambda t: _rho_clamped(s, H, t, mode), rs, lo=r0)
        rhs = base - (s.n - 1.0) * H * (rs - r0) + cum
        return lhs, rhs

    params = {"n": s.n, "H": H, "r0": r0}
    return _finalize("MC_ROUGH", params, mode, radii, eval_on, refine)


def check_mc_bounded_f_inner(s: WarpedSMMS, H: float, k: float | None = None,
                             grid=None, mode: str = "radial", n_grid: int = 256,
                             refine: bool = True) -> ComparisonReport:
    """m_f(r) <= m_H^{n+4k}(r) + int_0^r rho, r <= pi/(4 sqrt(H)) if H > 0."""
    k = _resolve_k(s, k)
    d = s.n + 4.0 * k
    cap = admissible_R("MC_BOUNDED_F_INNER", H)
    radii = np.asarray(grid, dtype=float) if grid is not None \
        else _mc_grid(s, cap, n_grid)
    if radii[-1] > cap + 1e-12:
        raise ValueError(f"grid exceeds pi/(4 sqrt(H)) = {cap:.12g}")

    def eval_on(rs):
        lhs = np.asarray(mean_curvature_f(s, rs))
        cum = _cum_integral(lambda t: _rho_clamped(s, H, t, mode), rs)
        rhs = np.asarray(mean_curvature_model(d, H, rs)) + cum
        return lhs, rhs

    params = {"n": s.n, "H": H, "k": k, "d": d}
    return _finalize("MC_BOUNDED_F_INNER", params, mode, radii, eval_on, refine)


def check_mc_bounded_f_pi2(s: WarpedSMMS, H: float, k: float | None = None,
                           grid=None, mode: str = "radial", n_grid: int = 256,
                           refine: bool = True) -> ComparisonReport:
    """The pi/2 extension for H > 0 on [pi/(4 sqrt H), pi/(2 sqrt H)):

    m_f(r) <= (1 + 4k/((n-1) sin(2 sqrt(H) r))) m_H^n(r) + int_0^r rho.

    The right endpoint is excluded (the coefficient diverges there).
    """
    if H <= 0.0:
        raise ValueError("the pi/2 range estimate requires H > 0")
    k = _resolve_k(s, k)
    lo = math.pi / (4.0 * math.sqrt(H))
    cap = admissible_R("MC_BOUNDED_F_PI2", H)
    radii = np.asarray(grid, dtype=float) if grid is not None \
        else _mc_grid(s, cap, n_grid, lo=lo, drop_right=True)
    if radii[0] < lo - 1e-12 or radii[-1] >= cap:
        raise ValueError(f"grid must lie in [{lo:.12g}, {cap:.12g})")

    def eval_on(rs):
        lhs = np.asarray(mean_curvature_f(s, rs))
        cum = _cum_integral(lambda t: _rho_clamped(s, H, t, mode), rs)
        coeff = 1.0 + 4.0 * k / ((s.n - 1.0) * np.sin(2.0 * math.sqrt(H) * rs))
        rhs = coeff * np.asarray(mean_curvature_model(s.n, H, rs)) + cum
        return lhs, rhs

    params = {"n": s.n, "H": H, "k": k}
    return _finalize("MC_BOUNDED_F_PI2", params, mode, radii, eval_on, refine)


def check_mc_bounded_f(s: WarpedSMMS, H: float, k: float | None = None,
                       mode: str = "radial", n_grid: int = 256,
                       refine: bool = True) -> list[ComparisonReport]:
    """Both ranges of the bounded-potential mean curvature comparison."""
    reports = [check_mc_bounded_f_inner(s, H, k, mode=mode, n_grid=n_grid,
                                        refine=refine)]
    if H > 0.0 and s.r_interior_hi > math.pi / (4.0 * math.sqrt(H)):
        reports.append(check_mc_bounded_f_pi2(s, H, k, mode=mode, n_grid=n_grid,
                                              refine=refine))
    return reports


def check_mc_drift(s: WarpedSMMS, H: float, a: float | None = None, grid=None,
                   mode: str = "radial", n_grid: int = 256,
                   refine: bool = True) -> ComparisonReport:
    """m_f(r) <= m_H^n(r) + a + int_0^r rho, r <= pi/(2 sqrt(H)) if H > 0."""
    a = _resolve_a(s, a)
    cap = admissible_R("MC_DRIFT", H)
    radii = np.asarray(grid, dtype=float) if grid is not None \
        else _mc_grid(s, cap, n_grid)
    if radii[-1] > cap + 1e-12:
        raise ValueError(f"grid exceeds pi/(2 sqrt(H)) = {cap:.12g}")

    def eval_on(rs):
        lhs = np.asarray(mean_curvature_f(s, rs))
        cum = _cum_integral(lambda t: _rho_clamped(s, H, t, mode), rs)
        rhs = np.asarray(mean_curvature_model(s.n, H, rs)) + a + cum
        return lhs, rhs

    params = {"n": s.n, "H": H, "a": a}
    return _finalize("MC_DRIFT", params, mode, radii, eval_on, refine)


# ---------------------------------------------------------------------------
# Area and volume comparisons.
# ---------------------------------------------------------------------------

def _bound_model(s: WarpedSMMS, H: float, bound: str, const: float | None):
    """Model space and exp-rate multiplier for a bound mode ('k' or 'a')."""
    if bound == "k":
        k = _resolve_k(s, const)
        return ModelSpace(dim=s.n + 4.0 * k, H=H, drift=0.0), c_const(s.n, k, H), {"k": k}
    if bound == "a":
        a = _resolve_a(s, const)
        return ModelSpace(dim=float(s.n), H=H, drift=a), 1.0, {"a": a}
    raise ValueError(f"bound must be 'k' or 'a', got {bound!r}")


def check_area_comparison(s: WarpedSMMS, H: float, r: float, R: float,
                          bound: str = "a", const: float | None = None,
                          mode: str = "radial", n_grid: int = 256,
                          refine: bool = True, l: float | None = None) -> ComparisonReport:
    """A_f(R')/A_model(R') <= e^{c R' l} A_f(r)/A_model(r) for r <= R' <= R."""
    tid = "AREA_A" if bound == "k" else "AREA_B"
    if not 0.0 < r <= R:
        raise ValueError(f"require 0 < r <= R, got r={r}, R={R}")
    require_admissible(tid, H, R)
    if R > s.r_interior_hi:
        raise ValueError(f"R={R} beyond the interior range {s.r_interior_hi}")
    mspace, c, bparams = _bound_model(s, H, bound, const)
    if l is None:
        l = integral_rho(s, H, R, mode)
    base = float(weighted_area(s, r)) / area_model(mspace, r)

    def eval_on(rs):
        lhs = np.asarray(weighted_area(s, rs)) / np.asarray(area_model(mspace, rs))
        with np.errstate(over="ignore"):
            rhs = np.exp(c * l * rs) * base
        return lhs, rhs

    radii = np.linspace(r, R, n_grid)
    params = {"n": s.n, "H": H, "r": r, "R": R, "l": l, "c": c, **bparams}
    return _finalize(tid, params, mode, radii, eval_on, refine)


def check_volume_comparison(s: WarpedSMMS, H: float, r: float, R: float,
                            bound: str = "a", const: float | None = None,
                            mode: str = "radial", n_grid: int = 256,
                            refine: bool = True, l: float | None = None,
                            _tid: str | None = None) -> ComparisonReport:
    """V_f(R')/V_m(R') <= V_f(r)/V_m(r) exp{int_0^{R'} (e^{clt}-1) A_m/V_m}."""
    tid = _tid or ("VOL_A" if bound == "k" else "VOL_B")
    if r == 0.0:
        if bound == "k":
            raise ValueError("the n+4k volume ratio blows up as r -> 0; "
                             "use r > 0 (or the absolute drift form)")
        return check_volume_absolute(s, H, R, const=const, mode=mode,
                                     n_grid=n_grid, refine=refine, l=l)
    if not 0.0 < r <= R:
        raise ValueError(f"require 0 < r <= R, got r={r}, R={R}")
    require_admissible(tid, H, R)
    if R > s.r_interior_hi:
        raise ValueError(f"R={R} beyond the interior range {s.r_interior_hi}")
    mspace, c, bparams = _bound_model(s, H, bound, const)
    if l is None:
        l = integral_rho(s, H, R, mode)

    def eval_on(rs):
        vf = _cum_integral(lambda t: weighted_area(s, t), rs)
        vm = _cum_integral(lambda t: area_model(mspace, t), rs)
        ratio = vf / vm
        corr = _exp_correction(mspace, c * l, rs)
        with np.errstate(over="ignore"):
            rhs = ratio[0] * np.exp(corr)
        return ratio, rhs

    radii = np.linspace(r, R, n_grid)
    params = {"n": s.n, "H": H, "r": r, "R": R, "l": l, "c": c, **bparams}
    return _finalize(tid, params, mode, radii, eval_on, refine)


def check_volume_absolute(s: WarpedSMMS, H: float, R: float,
                          const: float | None = None, mode: str = "radial",
                          n_grid: int = 256, refine: bool = True,
                          l: float | None = None) -> ComparisonReport:
    """Absolute drift form: V_f(R') <= V^a_H(R') exp{-f(0) + int (e^{lt}-1) A/V}."""
    require_admissible("VOL_B_ABS", H, R)
    if not 0.0 < R <= s.r_interior_hi:
        raise ValueError(f"require 0 < R <= {s.r_interior_hi}, got {R}")
    mspace, _, bparams = _bound_model(s, H, "a", const)
    if l is None:
        l = integral_rho(s, H, R, mode)
    f0 = float(s.f.eval(0.0))

    def eval_on(rs):
        vf = _cum_integral(lambda t: weighted_area(s, t), rs)
        vm = _cum_integral(lambda t: area_model(mspace, t), rs)
        corr = _exp_correction(mspace, l, rs)
        with np.errstate(over="ignore"):
            rhs = vm * np.exp(-f0 + corr)
        return vf, rhs

    radii = np.linspace(R / n_grid, R, n_grid)
    params = {"n": s.n, "H": H, "R": R, "l": l, **bparams}
    return _finalize("VOL_B_ABS", params, mode, radii, eval_on, refine)


def check_vol_r1(s: WarpedSMMS, H: float, R: float, const: float | None = None,
                 mode: str = "radial", n_grid: int = 256,
                 refine: bool = True) -> ComparisonReport:
    """The R >= 1 absolute estimate: the bounded-f volume comparison at r = 1."""
    if R < 1.0:
        raise ValueError(f"the R >= 1 estimate requires R >= 1, got {R}")
    return check_volume_comparison(s, H, 1.0, R, bound="k", const=const,
                                   mode=mode, n_grid=n_grid, refine=refine,
                                   _tid="VOL_R1")


# ---------------------------------------------------------------------------
# Volume doubling.
# ---------------------------------------------------------------------------

def doubling_F(n: int, H: float, R: float, sigma: float,
               k: float | None = None, a: float | None = None) -> float:
    """F(sigma) = int_0^R (e^{c sigma t} - 1) A_model/V_model dt.

    Bounded-potential mode (k given) uses the n+4k model and c(n,k,H);
    drift mode (a given) uses the drifted n-model and c = 1.  F(0) = 0
    exactly.
    """
    if (k is None) == (a is None):
        raise ValueError("exactly one of k, a must be given")
    if sigma < 0.0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0.0:
        return 0.0
    if k is not None:
        mspace = ModelSpace(dim=n + 4.0 * k, H=H, drift=0.0)
        c = c_const(n, k, H)
    else:
        mspace = ModelSpace(dim=float(n), H=H, drift=float(a))
        c = 1.0
    return float(_exp_correction(mspace, c * sigma, np.array([R]))[0])


@lru_cache(maxsize=256)
def doubling_epsilon(n: int, H: float, R: float, alpha: float,
                     k: float | None = None, a: float | None = None,
                     sigma_cap: float = 1e9) -> DoublingCertificate:
    """Threshold epsilon with e^{F(epsilon)} = alpha, by bracketed bisection."""
    if alpha <= 1.0:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    tid = "VOL_A" if k is not None else "VOL_B"
    require_admissible(tid, H, R)
    target = math.log(alpha)

    def g(sigma: float) -> float:
        return doubling_F(n, H, R, sigma, k=k, a=a) - target

    hi = 1.0
    while g(hi) < 0.0:
        hi *= 2.0
        if hi > sigma_cap:
            raise StepLimitError(f"no doubling bracket below sigma_cap={sigma_cap}")
    eps = find_root_bracketed(g, 0.0, hi,
                              Tolerance(abs_tol=1e-13, rel_tol=1e-13, max_steps=300))
    return DoublingCertificate(n=n, H=H, R=R, alpha=alpha, epsilon=float(eps),
                               F_at_epsilon=doubling_F(n, H, R, eps, k=k, a=a),
                               k=k, a=a)


def check_doubling(s: WarpedSMMS, H: float, alpha: float, R: float,
                   epsilon: float | None = None, bound: str = "a",
                   const: float | None = None, mode: str = "radial",
                   n_grid: int = 48, refine: bool = True) -> ComparisonReport:
    """V_f(r2)/V_f(r1) <= alpha V_model(r2)/V_model(r1) for 0 < r1 < r2 <= R.

    Gated on the excess hypothesis l <= epsilon; a space failing the gate
    yields a NOT-APPLICABLE report, not a failure.  Each grid row keys the
    outer radius r2 and stores the worst pair over r1 < r2.
    """
    tid_range = "VOL_A" if bound == "k" else "VOL_B"
    require_admissible(tid_range, H, R)
    if R > s.r_interior_hi:
        raise ValueError(f"R={R} beyond the interior range {s.r_interior_hi}")
    mspace, _, bparams = _bound_model(s, H, bound, const)
    if epsilon is None:
        epsilon = doubling_epsilon(s.n, H, R, alpha,
                                   k=bparams.get("k"), a=bparams.get("a")).epsilon
    l = integral_rho(s, H, R, mode)
    params = {"n": s.n, "H": H, "R": R, "alpha": alpha, "epsilon": epsilon,
              "l": l, **bparams}
    if l > epsilon + 1e-12:
        return _not_applicable("DOUBLING", params, mode,
                               f"excess integral l={l:.6g} exceeds epsilon={epsilon:.6g}")

    # Fixed inner grid of r1 candidates; each report row keys an outer r2
    # and stores the worst genuine pair r1 < r2.
    inner = np.linspace(R / n_grid, R, n_grid)
    vf1 = _cum_integral(lambda t: weighted_area(s, t), inner)
    vm1 = _cum_integral(lambda t: area_model(mspace, t), inner)

    def eval_on(rs):
        vf2 = _cum_integral(lambda t: weighted_area(s, t), rs)
        vm2 = _cum_integral(lambda t: area_model(mspace, t), rs)
        lhs = np.empty(len(rs))
        rhs = np.empty(len(rs))
        for j, r2 in enumerate(rs):
            m = inner < r2 - 1e-12 * R
            ratios_f = vf2[j] / vf1[m]
            ratios_m = alpha * vm2[j] / vm1[m]
            i = int(np.argmin(ratios_m - ratios_f))
            lhs[j] = ratios_f[i]
            rhs[j] = ratios_m[i]
        return lhs, rhs

    radii = np.linspace(R / n_grid, R, n_grid)[1:]
    return _finalize("DOUBLING", params, mode, radii, eval_on, refine)


# ---------------------------------------------------------------------------
# Absolute volume comparison for H < 0.
# ---------------------------------------------------------------------------

def check_absolute_volume_negH(s: WarpedSMMS, H: float, k: float | None = None,
                               R_grid=None, mode: str = "radial",
                               refine: bool = True) -> ComparisonReport:
    """V_f(R)/area(S^{n-1}) <= e^{3k} int_0^R sn_H^{n-1} e^{cosh(2 sqrt(-H) t) + l t} dt.

    Both sides are compared per unit solid angle.  The default grid caps at
    3.5/sqrt(-H), beyond which the e^{cosh} weight overflows doubles.
    """
    if H >= 0.0:
        raise ValueError(f"this bound requires H < 0, got H={H}")
    k = _resolve_k(s, k)
    sqh = math.sqrt(-H)
    if R_grid is None:
        hi = min(s.r_interior_hi, 3.5 / sqh)
        R_grid = np.linspace(hi / 64, hi, 64)
    radii = np.asarray(R_grid, dtype=float)
    if np.any(radii <= 0.0) or radii[-1] > s.r_interior_hi:
        raise ValueError("R grid must lie in (0, r_max)")
    l = integral_rho(s, H, float(radii[-1]), mode)
    omega = sphere_area(s.n)
    e3k = math.exp(3.0 * k)

    def integrand(t):
        t = np.asarray(t, dtype=float)
        return np.asarray(sn(H, t)) ** (s.n - 1) * np.exp(np.cosh(2.0 * sqh * t) + l * t)

    def eval_on(rs):
        lhs = _cum_integral(lambda t: weighted_area(s, t), rs) / omega
        rhs = e3k * _cum_integral(integrand, rs)
        return lhs, rhs

    params = {"n": s.n, "H": H, "k": k, "l": l, "R": float(radii[-1])}
    return _finalize("VOL_ABS_NEGH", params, mode, radii, eval_on, refine)


# ---------------------------------------------------------------------------
# The separated-variables monotone ratio (proof form of the volume bound).
# ---------------------------------------------------------------------------

def volume_ratio_profile(s: WarpedSMMS, H: float, radii, bound: str = "a",
                         const: float | None = None, mode: str = "radial",
                         l: float | None = None) -> np.ndarray:
    """D(r) = [V_f(r)/V_model(r)] exp{-int_0^r (e^{clt}-1) A_m/V_m dt}.

    Nonincreasing in r whenever the volume comparison holds; this is the
    differential statement the ratio inequality integrates.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0.0) or np.any(np.diff(radii) <= 0.0):
        raise ValueError("radii must be positive and strictly increasing")
    mspace, c, _ = _bound_model(s, H, bound, const)
    if l is None:
        l = integral_rho(s, H, float(radii[-1]), mode)
    vf = _cum_integral(lambda t: weighted_area(s, t), radii)
    vm = _cum_integral(lambda t: area_model(mspace, t), radii)
    corr = _exp_correction(mspace, c * l, radii)
    return vf / vm * np.exp(-corr)
