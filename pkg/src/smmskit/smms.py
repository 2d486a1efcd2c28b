"""Rotationally symmetric smooth metric measure spaces.

A space is a warped product dr^2 + w(r)^2 g_{S^{n-1}} on [0, r_max] with a
radial potential f, carrying the measure e^{-f} dv.  This module holds the
radial profiles, a catalog of test spaces, and every curvature/measure
quantity the comparison checks consume: radial and tangential Bakry-Emery
curvature, weighted mean curvature m_f = m - f', the curvature excess
rho = [(n-1)H - lambda]_+ and its integral, potential bounds, and weighted
areas/volumes.

Conventions: the base point is the pole (rotational symmetry makes it
canonical, so the sup over base points in hypothesis constants is realized
as the single pole evaluation).  Curvature ratios are evaluated on the
interior (r_lo, r_hi), r_lo = 1e-6 r_max, with clamping toward the poles
where w -> 0; the improper upper limit of the excess integral is truncated
at r_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import model as _model
from .numkit import Tolerance, quad_adaptive, quad_grid, sphere_area

__all__ = [
    "RadialProfile",
    "WarpedSMMS",
    "CurvatureSample",
    "PotentialBounds",
    "CATALOG",
    "make_space",
    "profile_from_spec",
    "ricci_radial",
    "bakry_emery_radial",
    "ricci_f_smallest_eigenvalue",
    "mean_curvature_f",
    "rho",
    "integral_rho",
    "potential_bounds",
    "weighted_area",
    "weighted_volume",
    "sample_curvature",
]

RHO_MODES = ("radial", "full")


# ---------------------------------------------------------------------------
# Radial profiles.
# ---------------------------------------------------------------------------

class RadialProfile:
    """Scalar function of arc length with first and second derivatives.

    Analytic derivatives may be supplied; otherwise central differences with
    step h = max(1e-6, 1e-4 r_max) and Richardson extrapolation are used
    (one-sided stencils near the ends of [0, r_max]).
    """

    def __init__(self, fn, d1=None, d2=None, *, r_max: float, name: str = ""):
        self._fn = fn
        self._d1 = d1
        self._d2 = d2
        self.r_max = float(r_max)
        self.name = name
        self._h = max(1e-6, 1e-4 * self.r_max)

    def __call__(self, r):
        return self.eval(r)

    def eval(self, r):
        out = np.asarray(self._fn(np.asarray(r, dtype=float)), dtype=float)
        return out if out.ndim else float(out)

    def d1(self, r):
        if self._d1 is not None:
            out = np.asarray(self._d1(np.asarray(r, dtype=float)), dtype=float)
            return out if out.ndim else float(out)
        return self._fd(r, order=1)

    def d2(self, r):
        if self._d2 is not None:
            out = np.asarray(self._d2(np.asarray(r, dtype=float)), dtype=float)
            return out if out.ndim else float(out)
        return self._fd(r, order=2)

    def _fd(self, r, order: int):
        r_arr = np.asarray(r, dtype=float)
        if r_arr.ndim:
            return np.array([self._fd(float(x), order) for x in r_arr.ravel()]).reshape(r_arr.shape)
        x = float(r_arr)
        h = self._h
        f = lambda t: float(self._fn(t))
        if x >= 2 * h and x <= self.r_max - 2 * h:
            if order == 1:
                return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
            return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)
        sgn = 1.0 if x < 2 * h else -1.0
        v = [f(x + sgn * i * h) for i in range(5)]
        if order == 1:
            return sgn * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12 * h)
        return (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / (h * h)


def _const_profile(value: float, r_max: float, name: str = "") -> RadialProfile:
    return RadialProfile(
        lambda r: np.full_like(np.asarray(r, dtype=float), value),
        d1=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        d2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        r_max=r_max,
        name=name,
    )


# ---------------------------------------------------------------------------
# The space.
# ---------------------------------------------------------------------------

_POLE_FRACTION = 1e-6


@dataclass(frozen=True)
class WarpedSMMS:
    """Warped product with radial potential; immutable after construction."""

    n: int
    w: RadialProfile
    f: RadialProfile
    r_max: float
    closed: bool = False
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"dimension n must be >= 2, got {self.n}")
        if self.r_max <= 0.0:
            raise ValueError(f"r_max must be > 0, got {self.r_max}")
        scale = self.r_max
        if abs(self.w.eval(0.0)) > 1e-10 * scale:
            raise ValueError(f"warping must vanish at the pole, w(0)={self.w.eval(0.0)}")
        if abs(self.w.d1(0.0) - 1.0) > 1e-6:
            raise ValueError(f"smooth pole requires w'(0)=1, got {self.w.d1(0.0)}")
        interior = np.linspace(scale / 257, scale * (1 - 1 / 257), 257)
        wv = np.asarray(self.w.eval(interior))
        if np.any(wv <= 0.0):
            bad = interior[np.argmax(wv <= 0.0)]
            raise ValueError(f"warping must be positive on (0, r_max); w({bad}) <= 0")
        if self.closed:
            if abs(self.w.eval(self.r_max)) > 1e-8 * max(1.0, scale):
                raise ValueError(
                    f"closed space requires w(r_max)=0, got {self.w.eval(self.r_max)}"
                )
            if abs(self.w.d1(self.r_max) + 1.0) > 1e-8:
                raise ValueError(
                    f"closed space requires w'(r_max)=-1, got {self.w.d1(self.r_max)}"
                )

    @property
    def r_interior_lo(self) -> float:
        return _POLE_FRACTION * self.r_max

    @property
    def r_interior_hi(self) -> float:
        return self.r_max * (1.0 - _POLE_FRACTION) if self.closed else self.r_max


@dataclass(frozen=True)
class CurvatureSample:
    """Pointwise curvature/measure data along the radial direction."""

    r: float
    ric_radial: float
    ric_f_radial: float
    lambda_min: float
    m: float
    m_f: float
    rho: float
    rho_integral: float


@dataclass(frozen=True)
class PotentialBounds:
    """Grid suprema of the potential: k = sup|f|, a = max(0, -inf f'),
    grad = sup|f'|; ``n_grid`` records the resolution used."""

    k: float
    a: float
    grad: float
    n_grid: int


# ---------------------------------------------------------------------------
# Curvature and measure quantities.
# ---------------------------------------------------------------------------

def _check_open_interval(s: WarpedSMMS, r, what: str) -> None:
    r = np.asarray(r)
    if np.any(r <= 0.0) or np.any(r >= s.r_max):
        raise ValueError(f"{what} requires 0 < r < r_max={s.r_max}")


def _clamp_interior(s: WarpedSMMS, r):
    return np.clip(np.asarray(r, dtype=float), s.r_interior_lo, s.r_interior_hi)


def _scalar(out):
    out = np.asarray(out)
    return out if out.ndim else float(out)


def ricci_radial(s: WarpedSMMS, r):
    """Ric(d_r, d_r) = -(n-1) w''/w."""
    _check_open_interval(s, r, "ricci_radial")
    rc = _clamp_interior(s, r)
    return _scalar(-(s.n - 1.0) * s.w.d2(rc) / s.w.eval(rc))


def bakry_emery_radial(s: WarpedSMMS, r):
    """Radial Bakry-Emery curvature Ric(d_r,d_r) + f''."""
    _check_open_interval(s, r, "bakry_emery_radial")
    rc = _clamp_interior(s, r)
    return _scalar(-(s.n - 1.0) * s.w.d2(rc) / s.w.eval(rc) + s.f.d2(rc))


def _tangential_f(s: WarpedSMMS, rc):
    w = s.w.eval(rc)
    w1 = s.w.d1(rc)
    w2 = s.w.d2(rc)
    ric_tan = -w2 / w + (s.n - 2.0) * (1.0 - w1 * w1) / (w * w)
    return ric_tan + s.f.d1(rc) * w1 / w


def ricci_f_smallest_eigenvalue(s: WarpedSMMS, r):
    """Smallest eigenvalue of Ric_f: min of radial and tangential values."""
    _check_open_interval(s, r, "ricci_f_smallest_eigenvalue")
    rc = _clamp_interior(s, r)
    radial = -(s.n - 1.0) * s.w.d2(rc) / s.w.eval(rc) + s.f.d2(rc)
    return _scalar(np.minimum(radial, _tangential_f(s, rc)))


def mean_curvature_f(s: WarpedSMMS, r):
    """Weighted mean curvature m_f = (n-1) w'/w - f' (no pole clamp)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("mean_curvature_f requires r > 0")
    hi = s.r_max if not s.closed else s.r_max * (1.0 - 1e-12)
    if np.any(r > hi):
        raise ValueError(f"mean_curvature_f requires r < r_max={s.r_max}")
    return _scalar((s.n - 1.0) * s.w.d1(r) / s.w.eval(r) - s.f.d1(r))


def _rho_clamped(s: WarpedSMMS, H: float, r, mode: str):
    rc = _clamp_interior(s, r)
    lam = -(s.n - 1.0) * s.w.d2(rc) / s.w.eval(rc) + s.f.d2(rc)
    if mode == "full":
        lam = np.minimum(lam, _tangential_f(s, rc))
    return np.maximum(0.0, (s.n - 1.0) * H - lam)


def rho(s: WarpedSMMS, H: float, r, mode: str = "radial"):
    """Curvature excess [(n-1)H - lambda]_+.

    ``radial`` mode (the default, matching the hypotheses actually used by
    the comparison proofs) takes lambda = Ric_f(d_r, d_r); ``full`` takes the
    smallest Ric_f eigenvalue, so full >= radial pointwise.
    """
    if mode not in RHO_MODES:
        raise ValueError(f"unknown rho mode {mode!r}")
    _check_open_interval(s, r, "rho")
    return _scalar(_rho_clamped(s, H, r, mode))


def integral_rho(s: WarpedSMMS, H: float, r: float, mode: str = "radial",
                 tol: Tolerance | None = None) -> float:
    """Excess integral along the radial segment, truncated at r_max."""
    if mode not in RHO_MODES:
        raise ValueError(f"unknown rho mode {mode!r}")
    if r < 0.0:
        raise ValueError("integral_rho requires r >= 0")
    upper = min(float(r), s.r_max)
    if upper == 0.0:
        return 0.0
    tol = tol or Tolerance(abs_tol=1e-10, rel_tol=1e-10)
    # Breadth-first adaptive Simpson; subdivided edges keep the panel
    # doubling shallow across the kinks of the positive part.
    edges = np.linspace(0.0, upper, 33)
    segs, _ = quad_grid(lambda t: _rho_clamped(s, H, t, mode), edges,
                        abs_tol=tol.abs_tol, rel_tol=tol.rel_tol)
    return float(segs.sum())


def potential_bounds(s: WarpedSMMS, rel_change: float = 1e-9,
                     n0: int = 257, max_rounds: int = 6) -> PotentialBounds:
    """Sup-norms of f and f' over a refinement-controlled grid on [0, r_max]."""
    n = n0
    prev = None
    while True:
        grid = np.linspace(0.0, s.r_max, n)
        fv = np.abs(np.asarray(s.f.eval(grid)))
        f1 = np.asarray(s.f.d1(grid))
        k = float(np.max(fv))
        a = float(max(0.0, -np.min(f1)))
        grad = float(np.max(np.abs(f1)))
        cur = (k, a, grad)
        if prev is not None:
            if all(abs(c - p) <= rel_change * (1.0 + abs(c)) for c, p in zip(cur, prev)):
                break
            max_rounds -= 1
            if max_rounds <= 0:
                break
        prev = cur
        n = 2 * n - 1
    return PotentialBounds(k=k, a=a, grad=grad, n_grid=n)


def weighted_area(s: WarpedSMMS, r):
    """Weighted area of the geodesic r-sphere: area(S^{n-1}) w^{n-1} e^{-f}."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0) or np.any(r > s.r_max * (1 + 1e-12)):
        raise ValueError(f"weighted_area requires 0 <= r <= r_max={s.r_max}")
    return _scalar(sphere_area(s.n) * s.w.eval(r) ** (s.n - 1.0) * np.exp(-s.f.eval(r)))


def weighted_volume(s: WarpedSMMS, R: float, tol: Tolerance | None = None) -> float:
    """Weighted volume of the R-ball about the pole."""
    R = float(R)
    if R < 0.0 or R > s.r_max * (1 + 1e-12):
        raise ValueError(f"weighted_volume requires 0 <= R <= r_max={s.r_max}")
    if R == 0.0:
        return 0.0
    tol = tol or Tolerance(abs_tol=1e-10, rel_tol=1e-10)
    value, _ = quad_adaptive(lambda t: float(weighted_area(s, t)), 0.0, R, tol)
    return value


def sample_curvature(s: WarpedSMMS, H: float, r: float,
                     mode: str = "radial") -> CurvatureSample:
    """All pointwise curvature data at radius r, plus the excess integral."""
    return CurvatureSample(
        r=float(r),
        ric_radial=float(ricci_radial(s, r)),
        ric_f_radial=float(bakry_emery_radial(s, r)),
        lambda_min=float(ricci_f_smallest_eigenvalue(s, r)),
        m=float(mean_curvature_f(s, r) + s.f.d1(np.asarray(r, dtype=float))),
        m_f=float(mean_curvature_f(s, r)),
        rho=float(rho(s, H, r, mode)),
        rho_integral=integral_rho(s, H, r, mode),
    )


# ---------------------------------------------------------------------------
# Catalog.
# ---------------------------------------------------------------------------

CATALOG = {
    "euclidean": {"params": {"n": "int >= 2", "r_max": "default 10"},
                  "doc": "flat space, w = r, f = 0"},
    "sphere": {"params": {"n": "int >= 2", "H": "curvature > 0, default 1"},
               "doc": "round sphere, w = sn_H, closed, r_max = pi/sqrt(H)"},
    "hyperbolic": {"params": {"n": "int >= 2", "H": "curvature < 0, default -1",
                              "r_max": "default 10/sqrt(-H)"},
                   "doc": "hyperbolic space, w = sinh(sqrt(-H) r)/sqrt(-H)"},
    "gaussian_soliton": {"params": {"n": "int >= 2", "c": "default 0.25",
                                    "r_max": "default 10"},
                         "doc": "flat space with f = c r^2 (Ric_f = 2c g)"},
    "linear_drift": {"params": {"n": "int >= 2", "a": "slope >= 0, default 0.5",
                                "base": "catalog name, default euclidean"},
                     "doc": "any base space with f replaced by f - a r"},
    "perturbed_sphere": {"params": {"n": "int >= 2", "H": "default 1",
                                    "eps": "default 0.05",
                                    "omega": "integer multiple of sqrt(H), default 3"},
                         "doc": "w = sn_H (1 + eps sin^2(omega r)); nonzero excess"},
    "custom": {"params": {"n": "int >= 2", "w": "profile spec", "f": "profile spec",
                          "r_max": "real > 0", "closed": "bool"},
               "doc": "profiles given as poly/fourier/table specs"},
}


def _sn_profile(H: float, r_max: float) -> RadialProfile:
    return RadialProfile(
        lambda r: _model.sn(H, r),
        d1=lambda r: _model.sn_prime(H, r),
        d2=lambda r: -H * np.asarray(_model.sn(H, r), dtype=float),
        r_max=r_max,
        name=f"sn_H={H}",
    )


def _build_euclidean(n: int, r_max: float = 10.0, **params) -> WarpedSMMS:
    w = RadialProfile(lambda r: np.asarray(r, dtype=float),
                      d1=lambda r: np.ones_like(np.asarray(r, dtype=float)),
                      d2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                      r_max=r_max, name="r")
    return WarpedSMMS(n=n, w=w, f=_const_profile(0.0, r_max), r_max=r_max,
                      closed=False, name="euclidean",
                      params={"n": n, "r_max": r_max})


def _build_sphere(n: int, H: float = 1.0, **params) -> WarpedSMMS:
    if H <= 0.0:
        raise ValueError(f"sphere requires H > 0, got {H}")
    r_max = math.pi / math.sqrt(H)
    return WarpedSMMS(n=n, w=_sn_profile(H, r_max), f=_const_profile(0.0, r_max),
                      r_max=r_max, closed=True, name="sphere",
                      params={"n": n, "H": H})


def _build_hyperbolic(n: int, H: float = -1.0, r_max: float | None = None,
                      **params) -> WarpedSMMS:
    if H >= 0.0:
        raise ValueError(f"hyperbolic requires H < 0, got {H}")
    r_max = float(r_max) if r_max is not None else 10.0 / math.sqrt(-H)
    return WarpedSMMS(n=n, w=_sn_profile(H, r_max), f=_const_profile(0.0, r_max),
                      r_max=r_max, closed=False, name="hyperbolic",
                      params={"n": n, "H": H, "r_max": r_max})


def _build_gaussian_soliton(n: int, c: float = 0.25, r_max: float = 10.0,
                            **params) -> WarpedSMMS:
    base = _build_euclidean(n, r_max)
    f = RadialProfile(lambda r: c * np.asarray(r, dtype=float) ** 2,
                      d1=lambda r: 2.0 * c * np.asarray(r, dtype=float),
                      d2=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0 * c),
                      r_max=r_max, name=f"{c}*r^2")
    return WarpedSMMS(n=n, w=base.w, f=f, r_max=r_max, closed=False,
                      name="gaussian_soliton", params={"n": n, "c": c, "r_max": r_max})


def _build_linear_drift(n: int, a: float = 0.5, base: str = "euclidean",
                        **base_params) -> WarpedSMMS:
    if a < 0.0:
        raise ValueError(f"linear_drift requires a >= 0, got {a}")
    if base == "linear_drift":
        raise ValueError("linear_drift cannot stack on itself")
    b = make_space(base, n=n, **base_params)
    f0 = b.f
    f = RadialProfile(lambda r: np.asarray(f0.eval(r)) - a * np.asarray(r, dtype=float),
                      d1=lambda r: np.asarray(f0.d1(r)) - a,
                      d2=lambda r: np.asarray(f0.d2(r)),
                      r_max=b.r_max, name=f"{f0.name}-{a}*r")
    return WarpedSMMS(n=n, w=b.w, f=f, r_max=b.r_max, closed=b.closed,
                      name="linear_drift",
                      params={"n": n, "a": a, "base": base, **base_params})


def _build_perturbed_sphere(n: int, H: float = 1.0, eps: float = 0.05,
                            omega: float = 3.0, **params) -> WarpedSMMS:
    if H <= 0.0:
        raise ValueError(f"perturbed_sphere requires H > 0, got {H}")
    r_max = math.pi / math.sqrt(H)

    def w_fn(r):
        r = np.asarray(r, dtype=float)
        return _model.sn(H, r) * (1.0 + eps * np.sin(omega * r) ** 2)

    def w_d1(r):
        r = np.asarray(r, dtype=float)
        p = 1.0 + eps * np.sin(omega * r) ** 2
        p1 = eps * omega * np.sin(2.0 * omega * r)
        return _model.sn_prime(H, r) * p + np.asarray(_model.sn(H, r)) * p1

    def w_d2(r):
        r = np.asarray(r, dtype=float)
        snv = np.asarray(_model.sn(H, r))
        sn1 = np.asarray(_model.sn_prime(H, r))
        p = 1.0 + eps * np.sin(omega * r) ** 2
        p1 = eps * omega * np.sin(2.0 * omega * r)
        p2 = 2.0 * eps * omega * omega * np.cos(2.0 * omega * r)
        return -H * snv * p + 2.0 * sn1 * p1 + snv * p2

    w = RadialProfile(w_fn, d1=w_d1, d2=w_d2, r_max=r_max,
                      name=f"sn_{H}*(1+{eps}sin^2({omega}r))")
    return WarpedSMMS(n=n, w=w, f=_const_profile(0.0, r_max), r_max=r_max,
                      closed=True, name="perturbed_sphere",
                      params={"n": n, "H": H, "eps": eps, "omega": omega})


def _build_custom(n: int, w=None, f=None, r_max: float = None,
                  closed: bool = False, **params) -> WarpedSMMS:
    if w is None or r_max is None:
        raise ValueError("custom space requires 'w' profile spec and 'r_max'")
    r_max = float(r_max)
    wp = w if isinstance(w, RadialProfile) else profile_from_spec(w, r_max)
    if f is None:
        fp = _const_profile(0.0, r_max)
    else:
        fp = f if isinstance(f, RadialProfile) else profile_from_spec(f, r_max)
    return WarpedSMMS(n=n, w=wp, f=fp, r_max=r_max, closed=bool(closed),
                      name="custom", params={"n": n, "r_max": r_max, "closed": closed})


_BUILDERS = {
    "euclidean": _build_euclidean,
    "sphere": _build_sphere,
    "hyperbolic": _build_hyperbolic,
    "gaussian_soliton": _build_gaussian_soliton,
    "linear_drift": _build_linear_drift,
    "perturbed_sphere": _build_perturbed_sphere,
    "custom": _build_custom,
}


def make_space(name: str, **params) -> WarpedSMMS:
    """Build a catalog space; invariants are checked at construction."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown space {name!r}; catalog: {sorted(_BUILDERS)}")
    if "n" not in params:
        raise ValueError(f"space {name!r} requires parameter 'n'")
    n = int(params.pop("n"))
    return _BUILDERS[name](n, **params)


# ---------------------------------------------------------------------------
# Profile specs for the CLI: poly / fourier / table.
# ---------------------------------------------------------------------------

def _natural_spline(xs: np.ndarray, ys: np.ndarray):
    """Second derivatives of the natural cubic spline through (xs, ys)."""
    m = len(xs)
    h = np.diff(xs)
    A = np.zeros((m, m))
    b = np.zeros(m)
    A[0, 0] = A[-1, -1] = 1.0
    for i in range(1, m - 1):
        A[i, i - 1] = h[i - 1]
        A[i, i] = 2.0 * (h[i - 1] + h[i])
        A[i, i + 1] = h[i]
        b[i] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1])
    return np.linalg.solve(A, b)


class _SplineProfile:
    def __init__(self, xs, ys):
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.m2 = _natural_spline(self.xs, self.ys)

    def _locate(self, r):
        i = np.clip(np.searchsorted(self.xs, r, side="right") - 1, 0, len(self.xs) - 2)
        return i

    def _pieces(self, r):
        r = np.asarray(r, dtype=float)
        i = self._locate(r)
        h = self.xs[i + 1] - self.xs[i]
        t = r - self.xs[i]
        u = self.xs[i + 1] - r
        return i, h, t, u

    def eval(self, r):
        i, h, t, u = self._pieces(r)
        return (self.m2[i] * u ** 3 + self.m2[i + 1] * t ** 3) / (6 * h) \
            + (self.ys[i] / h - self.m2[i] * h / 6) * u \
            + (self.ys[i + 1] / h - self.m2[i + 1] * h / 6) * t

    def d1(self, r):
        i, h, t, u = self._pieces(r)
        return (-self.m2[i] * u ** 2 + self.m2[i + 1] * t ** 2) / (2 * h) \
            - (self.ys[i] / h - self.m2[i] * h / 6) \
            + (self.ys[i + 1] / h - self.m2[i + 1] * h / 6)

    def d2(self, r):
        i, h, t, u = self._pieces(r)
        return (self.m2[i] * u + self.m2[i + 1] * t) / h


def profile_from_spec(spec: dict, r_max: float) -> RadialProfile:
    """Interpret a CLI profile spec.

    ``{"type": "poly", "coeffs": [c0, c1, ...]}`` gives sum c_i r^i;
    ``{"type": "fourier", "coeffs": [a0, a1, b1, a2, b2, ...]}`` a series in
    cos/sin(2 pi k r / r_max); ``{"type": "table", "nodes": [r0, v0, ...]}``
    a natural cubic spline through >= 8 strictly increasing nodes.
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError("profile spec must be a dict with a 'type' key")
    kind = spec["type"]
    if kind == "poly":
        coeffs = np.asarray(spec.get("coeffs", []), dtype=float)
        if coeffs.size == 0:
            raise ValueError("poly profile requires nonempty 'coeffs'")
        p = np.polynomial.Polynomial(coeffs)
        p1 = p.deriv(1)
        p2 = p.deriv(2)
        return RadialProfile(lambda r: p(np.asarray(r, dtype=float)),
                             d1=lambda r: p1(np.asarray(r, dtype=float)),
                             d2=lambda r: p2(np.asarray(r, dtype=float)),
                             r_max=r_max, name="poly")
    if kind == "fourier":
        coeffs = np.asarray(spec.get("coeffs", []), dtype=float)
        if coeffs.size == 0:
            raise ValueError("fourier profile requires nonempty 'coeffs'")
        a0 = coeffs[0]
        pairs = coeffs[1:]
        ks = np.arange(1, len(pairs) // 2 + len(pairs) % 2 + 1)
        a_k = pairs[0::2]
        b_k = np.zeros_like(a_k)
        b_k[: len(pairs[1::2])] = pairs[1::2]
        base = 2.0 * math.pi / r_max

        def ev(r, order=0):
            r = np.asarray(r, dtype=float)
            out = np.full_like(r, a0 if order == 0 else 0.0)
            for j, kk in enumerate(ks[: len(a_k)]):
                wkr = base * kk
                if order == 0:
                    out = out + a_k[j] * np.cos(wkr * r) + b_k[j] * np.sin(wkr * r)
                elif order == 1:
                    out = out + wkr * (-a_k[j] * np.sin(wkr * r) + b_k[j] * np.cos(wkr * r))
                else:
                    out = out - wkr ** 2 * (a_k[j] * np.cos(wkr * r) + b_k[j] * np.sin(wkr * r))
            return out

        return RadialProfile(lambda r: ev(r, 0), d1=lambda r: ev(r, 1),
                             d2=lambda r: ev(r, 2), r_max=r_max, name="fourier")
    if kind == "table":
        nodes = np.asarray(spec.get("nodes", []), dtype=float)
        if nodes.ndim == 2 and nodes.shape[1] == 2:
            xs, ys = nodes[:, 0], nodes[:, 1]
        else:
            if nodes.size % 2 != 0:
                raise ValueError("table nodes must be (r, value) pairs")
            xs, ys = nodes[0::2], nodes[1::2]
        if len(xs) < 8:
            raise ValueError(f"table profile requires >= 8 nodes, got {len(xs)}")
        if np.any(np.diff(xs) <= 0.0):
            raise ValueError("table nodes must be strictly increasing in r")
        sp = _SplineProfile(xs, ys)
        return RadialProfile(sp.eval, d1=sp.d1, d2=sp.d2, r_max=r_max, name="table")
    raise ValueError(f"unknown profile type {kind!r}")
