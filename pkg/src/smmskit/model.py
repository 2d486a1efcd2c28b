"""Constant-curvature model spaces and their drifted variants.

All comparison checks are phrased against these closed forms: the
generalized sine ``sn``, model mean curvature, and the (possibly drifted)
areas and volumes of geodesic spheres and balls.  Curvature ``H`` is a raw
real everywhere; the sign branch lives inside ``sn``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numkit import DEFAULT_TOL, Tolerance, quad_adaptive, sphere_area

__all__ = [
    "ModelSpace",
    "sn",
    "sn_prime",
    "conjugate_radius",
    "mean_curvature_model",
    "area_model",
    "volume_model",
    "c_const",
]

_CONJ_PAD = 1e-12


@dataclass(frozen=True)
class ModelSpace:
    """Weighted simply connected space of constant curvature.

    ``dim`` is the effective dimension (real: comparison against bounded
    potentials uses n + 4k), ``H`` the sectional curvature and ``drift``
    the radial measure slope a >= 0, i.e. weight e^(a r) relative to the
    unweighted model.
    """

    dim: float
    H: float
    drift: float = 0.0

    def __post_init__(self) -> None:
        if self.dim < 1.0:
            raise ValueError(f"model dimension must be >= 1, got {self.dim}")
        if self.drift < 0.0:
            raise ValueError(f"drift must be >= 0, got {self.drift}")

    @property
    def conjugate_radius(self) -> float:
        return conjugate_radius(self.H)


def conjugate_radius(H: float) -> float:
    """pi / sqrt(H) for H > 0, +inf otherwise."""
    return math.pi / math.sqrt(H) if H > 0.0 else math.inf


def sn(H: float, r):
    """Generalized sine: solution of sn'' + H sn = 0, sn(0)=0, sn'(0)=1."""
    if isinstance(r, (float, int)):
        r = float(r)
        if r < 0.0:
            raise ValueError("sn requires r >= 0")
        if H > 0.0:
            s = math.sqrt(H)
            return math.sin(s * r) / s
        if H < 0.0:
            s = math.sqrt(-H)
            return math.sinh(s * r) / s
        return r
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise ValueError("sn requires r >= 0")
    if H > 0.0:
        s = math.sqrt(H)
        out = np.sin(s * r) / s
    elif H < 0.0:
        s = math.sqrt(-H)
        out = np.sinh(s * r) / s
    else:
        out = r
    return out if out.ndim else float(out)


def sn_prime(H: float, r):
    """Derivative of ``sn`` in r."""
    if isinstance(r, (float, int)):
        r = float(r)
        if H > 0.0:
            return math.cos(math.sqrt(H) * r)
        if H < 0.0:
            return math.cosh(math.sqrt(-H) * r)
        return 1.0
    r = np.asarray(r, dtype=float)
    if H > 0.0:
        out = np.cos(math.sqrt(H) * r)
    elif H < 0.0:
        out = np.cosh(math.sqrt(-H) * r)
    else:
        out = np.ones_like(r)
    return out if out.ndim else float(out)


def _check_inside(H: float, r, what: str) -> None:
    if H > 0.0 and np.any(np.asarray(r) >= conjugate_radius(H) - _CONJ_PAD):
        raise ValueError(
            f"{what}: r reaches the conjugate radius pi/sqrt(H)="
            f"{conjugate_radius(H):.12g}"
        )


def mean_curvature_model(d: float, H: float, r):
    """Model mean curvature (d-1) sn'(r) / sn(r).

    Near the pole the cot/coth series (d-1)(1/r - H r/3 - H^2 r^3/45) is
    used to avoid 0/0; for H > 0 the conjugate radius is rejected.  Scalar
    input takes a math-only fast path (the ODE shooting hot loop).
    """
    if isinstance(r, (float, int)):
        r = float(r)
        if r <= 0.0:
            raise ValueError("mean_curvature_model requires r > 0")
        if H == 0.0:
            return (d - 1.0) / r
        if H > 0.0 and r >= math.pi / math.sqrt(H) - _CONJ_PAD:
            raise ValueError("mean_curvature_model: r reaches the conjugate radius")
        x = math.sqrt(abs(H)) * r
        if x < 1e-4:
            return (d - 1.0) * (1.0 / r - H * r / 3.0 - H * H * r ** 3 / 45.0)
        if H > 0.0:
            return (d - 1.0) * math.sqrt(H) * math.cos(x) / math.sin(x)
        return (d - 1.0) * math.sqrt(-H) * math.cosh(x) / math.sinh(x)

    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("mean_curvature_model requires r > 0")
    _check_inside(H, r, "mean_curvature_model")
    if H == 0.0:
        out = (d - 1.0) / r
        return out if out.ndim else float(out)
    x = math.sqrt(abs(H)) * r
    series = (d - 1.0) * (1.0 / r - H * r / 3.0 - H * H * r ** 3 / 45.0)
    safe_r = np.where(x < 1e-4, 1.0, r)
    direct = (d - 1.0) * sn_prime(H, safe_r) / sn(H, safe_r)
    out = np.where(x < 1e-4, series, direct)
    return out if out.ndim else float(out)


def area_model(m: ModelSpace, r):
    """Weighted area of the geodesic r-sphere: area(S^{d-1}) e^{a r} sn^{d-1}."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise ValueError("area_model requires r >= 0")
    if m.H > 0.0 and np.any(r > conjugate_radius(m.H) + _CONJ_PAD):
        raise ValueError("area_model: r beyond the conjugate radius")
    out = sphere_area(m.dim) * np.exp(m.drift * r) * sn(m.H, r) ** (m.dim - 1.0)
    return out if out.ndim else float(out)


def volume_model(m: ModelSpace, R: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Weighted volume of the geodesic R-ball (quadrature of ``area_model``)."""
    R = float(R)
    if R < 0.0:
        raise ValueError("volume_model requires R >= 0")
    if m.H > 0.0 and R > conjugate_radius(m.H) + _CONJ_PAD:
        raise ValueError("volume_model: R beyond the conjugate radius")
    if R == 0.0:
        return 0.0
    value, _ = quad_adaptive(lambda t: area_model(m, t), 0.0, R, tol)
    return value


def c_const(n: int, k: float, H: float | None = None) -> float:
    """Sphere-area ratio area(S^{n+4k-1}) / area(S^{n-1}); 1 exactly at k=0."""
    if n < 2:
        raise ValueError(f"c_const requires n >= 2, got {n}")
    if k < 0.0:
        raise ValueError(f"c_const requires k >= 0, got {k}")
    return sphere_area(n + 4.0 * k) / sphere_area(n)
