"""Deterministic numerical kernels.

Embedded Runge-Kutta 4(5) integration with dense output, adaptive Simpson
quadrature, bracketed root finding, a real-argument Gamma function and
unit-sphere areas.  Every routine is a pure function of its inputs, so
results are reproducible and safe to evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "OdeTrajectory",
    "integrate_ode",
    "quad_adaptive",
    "quad_grid",
    "find_root_bracketed",
    "gamma_real",
    "sphere_area",
    "KernelError",
    "StepLimitError",
    "NonFiniteError",
    "SubdivisionLimitError",
    "BracketError",
]


class KernelError(Exception):
    """Base class for numerical kernel failures."""


class StepLimitError(KernelError):
    """Step or iteration budget exhausted before convergence."""


class NonFiniteError(KernelError):
    """A right-hand side or integrand produced NaN/inf (blow-up)."""


class SubdivisionLimitError(KernelError):
    """Adaptive quadrature hit its recursion cap with tolerance unmet."""


class BracketError(ValueError):
    """Root-finding endpoints do not enclose a sign change."""


@dataclass(frozen=True)
class Tolerance:
    """Accuracy request shared by the kernels.

    ``abs_tol`` and ``rel_tol`` must lie in (0, 1); ``max_steps`` caps the
    number of ODE steps or root-finding iterations.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-6
    max_steps: int = 100_000

    def __post_init__(self) -> None:
        if not (0.0 < self.abs_tol < 1.0):
            raise ValueError(f"abs_tol must be in (0, 1), got {self.abs_tol}")
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_steps < 16:
            raise ValueError(f"max_steps must be >= 16, got {self.max_steps}")


DEFAULT_TOL = Tolerance()


# ---------------------------------------------------------------------------
# ODE integration: classical Fehlberg 4(5) embedded pair.
# ---------------------------------------------------------------------------

_RK_C = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
_RK_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_RK_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)
_RK_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)


@dataclass(frozen=True)
class OdeTrajectory:
    """Accepted nodes of an adaptive integration, with dense evaluation.

    ``ts``/``ys`` hold node times and states, ``derivs`` the right-hand side
    at the nodes and ``errors`` the scaled local error estimate of each
    accepted step.  Dense evaluation between nodes is cubic Hermite
    interpolation (fourth-order accurate on the step).
    """

    ts: np.ndarray
    ys: np.ndarray
    derivs: np.ndarray
    errors: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.ts) <= 0):
            raise ValueError("trajectory node times must be strictly increasing")

    @property
    def t0(self) -> float:
        return float(self.ts[0])

    @property
    def t1(self) -> float:
        return float(self.ts[-1])

    def at(self, t: float) -> np.ndarray:
        """Dense state at ``t`` inside [t0, t1]."""
        t = float(t)
        if t < self.ts[0] - 1e-12 or t > self.ts[-1] + 1e-12:
            raise ValueError(f"t={t} outside trajectory range [{self.t0}, {self.t1}]")
        t = min(max(t, self.t0), self.t1)
        i = int(np.searchsorted(self.ts, t, side="right")) - 1
        i = min(max(i, 0), len(self.ts) - 2)
        h = self.ts[i + 1] - self.ts[i]
        s = (t - self.ts[i]) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (
            h00 * self.ys[i]
            + h10 * h * self.derivs[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.derivs[i + 1]
        )

    def terminal(self) -> np.ndarray:
        return self.ys[-1]


def _eval_rhs(rhs, t: float, y: np.ndarray) -> np.ndarray:
    f = np.asarray(rhs(t, y), dtype=float)
    if not np.all(np.isfinite(f)):
        raise NonFiniteError(f"right-hand side is not finite at t={t}")
    return f


def integrate_ode(rhs, t0: float, y0, t1: float, tol: Tolerance = DEFAULT_TOL,
                  max_step: float | None = None) -> OdeTrajectory:
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t1 > t0``.

    The fifth-order solution is propagated; the embedded fourth-order
    difference controls the step.  ``max_step`` defaults to a sixteenth of
    the interval so that dense output stays at interpolation accuracy.
    """
    t0, t1 = float(t0), float(t1)
    if t1 <= t0:
        raise ValueError(f"require t1 > t0, got [{t0}, {t1}]")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    span = t1 - t0
    hmax = span / 16 if max_step is None else min(float(max_step), span)
    h = min(hmax, span / 64)
    hmin = 1e-14 * span

    ts = [t0]
    ys = [y.copy()]
    fs = [_eval_rhs(rhs, t0, y)]
    errs = [0.0]

    t = t0
    nsteps = 0
    k = [np.zeros_like(y) for _ in range(6)]
    while t < t1 - 1e-14 * span:
        if nsteps >= tol.max_steps:
            raise StepLimitError(f"step budget {tol.max_steps} exhausted at t={t}")
        nsteps += 1
        h = min(h, t1 - t)

        k[0] = fs[-1] if ts[-1] == t else _eval_rhs(rhs, t, y)
        for i in range(1, 6):
            yi = y + h * sum(a * k[j] for j, a in enumerate(_RK_A[i]))
            k[i] = _eval_rhs(rhs, t + _RK_C[i] * h, yi)

        y5 = y + h * sum(b * k[i] for i, b in enumerate(_RK_B5))
        ydiff = h * sum((b5 - b4) * k[i] for i, (b4, b5) in enumerate(zip(_RK_B4, _RK_B5)))
        scale = tol.abs_tol + tol.rel_tol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.sqrt(np.mean((ydiff / scale) ** 2)))

        if err <= 1.0:
            t = t + h
            y = y5
            ts.append(t)
            ys.append(y.copy())
            fs.append(_eval_rhs(rhs, t, y))
            errs.append(err)
            grow = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
            h = min(hmax, h * max(0.2, grow))
        else:
            h = h * max(0.2, 0.9 * err ** -0.2)
            if h < hmin:
                raise StepLimitError(f"step size underflow at t={t}")

    return OdeTrajectory(np.array(ts), np.array(ys), np.array(fs), np.array(errs))


# ---------------------------------------------------------------------------
# Adaptive Simpson quadrature.
# ---------------------------------------------------------------------------

_MAX_QUAD_DEPTH = 40


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width / 6.0 * (fa + 4.0 * fm + fb)


def _eval_f(f, x: float) -> float:
    v = float(f(x))
    if not math.isfinite(v):
        raise NonFiniteError(f"integrand is not finite at x={x}")
    return v


def _adapt(f, a, fa, b, fb, m, fm, whole, eps, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = _eval_f(f, lm)
    frm = _eval_f(f, rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps or (b - a) < 1e-15 * (1.0 + abs(a) + abs(b)):
        return left + right + delta / 15.0, abs(delta) / 15.0
    if depth >= _MAX_QUAD_DEPTH:
        raise SubdivisionLimitError(
            f"subdivision limit {_MAX_QUAD_DEPTH} reached on [{a}, {b}]"
        )
    vl, el = _adapt(f, a, fa, m, fm, lm, flm, left, eps / 2.0, depth + 1)
    vr, er = _adapt(f, m, fm, b, fb, rm, frm, right, eps / 2.0, depth + 1)
    return vl + vr, el + er


def quad_adaptive(f, a: float, b: float, tol: Tolerance = DEFAULT_TOL):
    """Adaptive-Simpson estimate of the integral of ``f`` over [a, b].

    Returns ``(value, err_estimate)``; ``a == b`` gives (0, 0).  The target
    is ``max(abs_tol, rel_tol * |integral|)``, the scale taken from a coarse
    composite pass.
    """
    a, b = float(a), float(b)
    if a > b:
        raise ValueError(f"require a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0

    xs = np.linspace(a, b, 17)
    vals = [_eval_f(f, x) for x in xs]
    coarse = 0.0
    for i in range(0, 16, 2):
        coarse += _simpson(vals[i], vals[i + 1], vals[i + 2], xs[i + 2] - xs[i])
    eps = max(tol.abs_tol, tol.rel_tol * abs(coarse))

    total = 0.0
    err = 0.0
    # Seed the recursion with the bootstrap panels already evaluated.
    for i in range(0, 16, 4):
        pa, pm, pb = xs[i], xs[i + 2], xs[i + 4]
        whole = _simpson(vals[i], vals[i + 2], vals[i + 4], pb - pa)
        v, e = _adapt(f, pa, vals[i], pb, vals[i + 4], pm, vals[i + 2],
                      whole, eps / 4.0, 0)
        total += v
        err += e
    return total, err


def _composite_segments(f, a: np.ndarray, b: np.ndarray, panels: int) -> np.ndarray:
    """Composite Simpson on each [a_i, b_i] with vectorized evaluation."""
    u = np.linspace(0.0, 1.0, 2 * panels + 1)
    x = a[:, None] + (b - a)[:, None] * u[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        raise NonFiniteError("integrand is not finite on the grid")
    odd = y[:, 1::2].sum(axis=1)
    even = y[:, 2:-1:2].sum(axis=1)
    return (b - a) / (6.0 * panels) * (y[:, 0] + y[:, -1] + 4.0 * odd + 2.0 * even)


def quad_grid(f, edges, abs_tol: float = 1e-10, rel_tol: float = 1e-10,
              max_doublings: int = 16):
    """Per-segment integrals of a vectorized integrand over consecutive edges.

    Adaptive Simpson in breadth-first form: each segment doubles its panel
    count until its Richardson estimate meets its tolerance share,
    max(abs_tol * max(width/total, 1/64), rel_tol * |I_i|); only
    unconverged segments are recomputed, so isolated kinks refine locally.
    Returns the extrapolated values and per-segment error estimates.
    ``f`` must accept arrays.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2:
        raise ValueError("edges must be a 1-d array with at least two entries")
    if np.any(np.diff(edges) < 0.0):
        raise ValueError("edges must be nondecreasing")
    a, b = edges[:-1], edges[1:]
    widths = b - a
    total = max(widths.sum(), 1e-300)
    share = abs_tol * np.maximum(widths / total, 1.0 / 64.0)

    prev = _composite_segments(f, a, b, 2)
    cur = _composite_segments(f, a, b, 4)
    err = np.abs(cur - prev) / 15.0
    out = cur + (cur - prev) / 15.0
    active = err > np.maximum(share, rel_tol * np.abs(cur))

    panels = 4
    for _ in range(max_doublings):
        if not active.any():
            return out, err
        panels *= 2
        idx = np.where(active)[0]
        nxt = _composite_segments(f, a[idx], b[idx], panels)
        err_idx = np.abs(nxt - cur[idx]) / 15.0
        out[idx] = nxt + (nxt - cur[idx]) / 15.0
        err[idx] = err_idx
        cur[idx] = nxt
        active[:] = False
        active[idx[err_idx > np.maximum(share[idx], rel_tol * np.abs(nxt))]] = True
    raise SubdivisionLimitError(
        f"quad_grid: {max_doublings} panel doublings did not meet tolerance")


# ---------------------------------------------------------------------------
# Bracketed root finding: bisection with a secant probe per iteration.
# ---------------------------------------------------------------------------

def find_root_bracketed(f, lo: float, hi: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Root of ``f`` in [lo, hi] given ``f(lo) * f(hi) <= 0``.

    Bisection guarantees convergence; a secant candidate is probed each
    iteration for early ``|f| <= abs_tol`` termination.  Returns ``x`` with
    bracket width <= abs_tol or ``|f(x)| <= abs_tol``.
    """
    lo, hi = float(lo), float(hi)
    if lo > hi:
        raise ValueError(f"require lo <= hi, got [{lo}, {hi}]")
    flo = float(f(lo))
    if abs(flo) <= tol.abs_tol:
        return lo
    fhi = float(f(hi))
    if abs(fhi) <= tol.abs_tol:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} have the same sign")

    for _ in range(tol.max_steps):
        if fhi != flo:
            xs = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < xs < hi:
                fxs = float(f(xs))
                if abs(fxs) <= tol.abs_tol:
                    return xs
                if flo * fxs < 0.0:
                    hi, fhi = xs, fxs
                else:
                    lo, flo = xs, fxs

        mid = 0.5 * (lo + hi)
        fmid = float(f(mid))
        if abs(fmid) <= tol.abs_tol:
            return mid
        if flo * fmid < 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
        if hi - lo <= tol.abs_tol:
            return lo if abs(flo) < abs(fhi) else hi
    raise StepLimitError(f"root finder exceeded {tol.max_steps} iterations")


# ---------------------------------------------------------------------------
# Gamma and unit-sphere areas.
# ---------------------------------------------------------------------------

# Lanczos approximation, g = 7, 9 coefficients; relative error below 1e-13
# for positive arguments.  Reflection is not needed (x > 0 only).
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_real(x: float) -> float:
    """Gamma function for real ``x > 0`` (Lanczos approximation)."""
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"gamma_real requires x > 0, got {x}")
    if x < 0.5:
        return gamma_real(x + 1.0) / x
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, 9):
        acc += _LANCZOS_C[i] / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def sphere_area(d: float) -> float:
    """Area of the unit (d-1)-sphere, 2 pi^(d/2) / Gamma(d/2), for real d >= 1."""
    d = float(d)
    if d < 1.0:
        raise ValueError(f"sphere_area requires d >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2.0) / gamma_real(d / 2.0)
