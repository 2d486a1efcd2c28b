"""First Dirichlet eigenvalues by shooting, and the constructive Cheng check.

The model eigenproblem is phi'' + (m_H + a) phi' + lambda phi = 0 with
phi(0) = 1 and phi(R) = 0; the same solver handles a radial ball in a
warped space with coefficient m_f.  The pole is a regular singular point,
so integration starts at r0 = 1e-6 R from the series
phi(r0) = 1 - lambda r0^2 / (2n), phi'(r0) = -lambda r0 / n.

The first eigenvalue is bracketed by whether phi vanishes at or before R:
lambda_lo = 0 keeps phi positive; lambda_hi doubles from pi^2/R^2 until a
zero appears, then bisection converges.  An interior zero at a candidate
lambda is bracket information (lambda too large), not an error.

The Cheng threshold makes the proof constant explicit:
C = 4 (V^a_H(R)/V^a_H(r_half))^{1/2} with r_half the first radius where the
model eigenfunction reaches 1/2, and epsilon is the smaller of the largest
value for which Q <= lambda + C eps sqrt(Q) still forces Q <= (1 + delta)
lambda, and the doubling threshold at alpha = 4 in drift mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .comparison import doubling_epsilon, require_admissible
from .model import ModelSpace, mean_curvature_model, volume_model
from .numkit import (KernelError, Tolerance, integrate_ode, quad_adaptive)
from .smms import (WarpedSMMS, integral_rho, mean_curvature_f,
                   potential_bounds, weighted_area)

__all__ = [
    "EigenResult",
    "ChengReport",
    "EigenBracketError",
    "model_eigenvalue",
    "smms_radial_eigenvalue",
    "rayleigh_quotient_transplant",
    "cheng_constants",
    "cheng_epsilon",
    "check_cheng_estimate",
]

EIGEN_TOL = Tolerance(abs_tol=1e-10, rel_tol=1e-10, max_steps=100_000)
_ODE_TOL = Tolerance(abs_tol=1e-12, rel_tol=1e-11, max_steps=200_000)


class EigenBracketError(KernelError):
    """No sign change found below the eigenvalue search cap."""


@dataclass(frozen=True)
class EigenResult:
    """Converged first Dirichlet eigenvalue of a radial ball.

    ``samples`` holds (r, phi) rows with phi(0) = 1; ``residual`` is
    |phi(R)| at the converged eigenvalue, ``bracket`` the final bisection
    interval and ``r_half`` the first radius with phi = 1/2.  The search is
    restricted to radial eigenfunctions (the first eigenfunction is radial
    for radial data).
    """

    lam: float
    residual: float
    samples: np.ndarray
    bracket: tuple
    r_half: float
    radial_only: bool = True

    def to_dict(self) -> dict:
        return {
            "theorem_id": "EIGEN",
            "params": {"lambda": float(self.lam), "r_half": float(self.r_half)},
            "units": {"lambda": "1/length^2", "r_half": "length"},
            "residual": float(self.residual),
            "bracket": [float(self.bracket[0]), float(self.bracket[1])],
            "radial_only": self.radial_only,
            "pass": True,
            "verdict": "PASS",
            "min_margin": float(self.residual),
        }

    def samples_csv(self) -> str:
        lines = ["r,phi"]
        for r, phi in self.samples:
            lines.append(f"{r:.17g},{phi:.17g}")
        return "\n".join(lines) + "\n"


def _shoot(coeff, n: int, lam: float, R: float, ode_tol: Tolerance):
    """Integrate the radial eigenfunction ODE at trial eigenvalue ``lam``."""
    r0 = 1e-6 * R
    phi0 = 1.0 - lam * r0 * r0 / (2.0 * n)
    dphi0 = -lam * r0 / n

    def rhs(t, y):
        return np.array([y[1], -coeff(t) * y[1] - lam * y[0]])

    return integrate_ode(rhs, r0, np.array([phi0, dphi0]), R, ode_tol,
                         max_step=R / 32.0)


def _first_eigenvalue(coeff, n: int, R: float, tol: Tolerance):
    """Bisection on 'phi has a zero at or before R' over trial lambdas."""
    lam_lo = 0.0
    lam_hi = math.pi ** 2 / R ** 2
    cap = lam_hi * 2.0 ** 40

    def has_zero(lam: float) -> bool:
        traj = _shoot(coeff, n, lam, R, _ODE_TOL)
        return bool(np.any(traj.ys[:, 0] <= 0.0))

    while not has_zero(lam_hi):
        lam_lo = lam_hi
        lam_hi *= 2.0
        if lam_hi > cap:
            raise EigenBracketError(
                f"no Dirichlet zero below lambda cap {cap:.6g}")

    while lam_hi - lam_lo > tol.rel_tol * lam_hi:
        mid = 0.5 * (lam_lo + lam_hi)
        if has_zero(mid):
            lam_hi = mid
        else:
            lam_lo = mid

    lam = 0.5 * (lam_lo + lam_hi)
    traj = _shoot(coeff, n, lam, R, _ODE_TOL)
    return lam, (lam_lo, lam_hi), traj


def _sample_result(lam, bracket, traj, R: float, n_samples: int = 129) -> EigenResult:
    rs = np.linspace(0.0, R, n_samples)
    phis = np.empty(n_samples)
    phis[0] = 1.0
    t0 = traj.t0
    for i in range(1, n_samples):
        phis[i] = 1.0 if rs[i] <= t0 else float(traj.at(rs[i])[0])
    residual = abs(float(traj.terminal()[0]))

    # First radius with phi = 1/2 (phi decreases from 1 toward 0).
    below = phis <= 0.5
    idx = int(np.argmax(below)) if below.any() else n_samples - 1
    idx = max(idx, 1)
    lo, hi = rs[idx - 1], rs[idx]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if float(traj.at(mid)[0]) > 0.5:
            lo = mid
        else:
            hi = mid
    r_half = 0.5 * (lo + hi)

    return EigenResult(lam=float(lam), residual=residual,
                       samples=np.column_stack([rs, phis]),
                       bracket=(float(bracket[0]), float(bracket[1])),
                       r_half=float(r_half))


# Pure and deterministic, so memoization only removes repeated solves
# (parameter sweeps re-ask for the same model eigenvalue constantly).
@lru_cache(maxsize=256)
def model_eigenvalue(n: int, a: float, H: float, R: float,
                     tol: Tolerance = EIGEN_TOL) -> EigenResult:
    """First Dirichlet eigenvalue of the drifted model ball B(O, R)."""
    if R <= 0.0:
        raise ValueError(f"R must be > 0, got {R}")
    if a < 0.0:
        raise ValueError(f"drift a must be >= 0, got {a}")
    require_admissible("VOL_B", H, R)

    def coeff(t: float) -> float:
        return mean_curvature_model(float(n), H, t) + a

    lam, bracket, traj = _first_eigenvalue(coeff, n, R, tol)
    return _sample_result(lam, bracket, traj, R)


def smms_radial_eigenvalue(s: WarpedSMMS, R: float,
                           tol: Tolerance = EIGEN_TOL) -> EigenResult:
    """First Dirichlet eigenvalue of the weighted Laplacian on B(pole, R),
    within the radial class (equal to the true first eigenvalue for radial
    potentials)."""
    if not 0.0 < R < s.r_max:
        raise ValueError(f"require 0 < R < r_max={s.r_max}, got {R}")

    def coeff(t: float) -> float:
        return float(mean_curvature_f(s, t))

    lam, bracket, traj = _first_eigenvalue(coeff, s.n, R, tol)
    return _sample_result(lam, bracket, traj, R)


def rayleigh_quotient_transplant(s: WarpedSMMS, n: int, a: float, H: float,
                                 R: float, tol: Tolerance = EIGEN_TOL) -> float:
    """Rayleigh quotient on ``s`` of the transplanted model eigenfunction.

    Q = int phi'^2 A_f dr / int phi^2 A_f dr with phi the model
    eigenfunction of B(O, R) in the drifted model; by min-max Q bounds the
    radial ball eigenvalue of ``s`` from above.
    """
    if R >= s.r_max:
        raise ValueError(f"require R < r_max={s.r_max}, got {R}")
    res = model_eigenvalue(n, a, H, R, tol)
    traj = _shoot(lambda t: mean_curvature_model(float(n), H, t) + a,
                  n, res.lam, R, _ODE_TOL)
    t0 = traj.t0

    def phi(t: float) -> float:
        return 1.0 if t <= t0 else float(traj.at(t)[0])

    def dphi(t: float) -> float:
        return 0.0 if t <= t0 else float(traj.at(t)[1])

    qtol = Tolerance(abs_tol=1e-11, rel_tol=1e-10)
    num, _ = quad_adaptive(lambda t: dphi(t) ** 2 * float(weighted_area(s, t)),
                           0.0, R, qtol)
    den, _ = quad_adaptive(lambda t: phi(t) ** 2 * float(weighted_area(s, t)),
                           0.0, R, qtol)
    return num / den


@dataclass(frozen=True)
class ChengConstants:
    """Ingredients of the constructive eigenvalue threshold."""

    lam_model: float
    r_half: float
    C: float
    eps_quadratic: float
    eps_doubling: float
    epsilon: float


def cheng_constants(n: int, a: float, H: float, R: float, delta: float,
                    tol: Tolerance = EIGEN_TOL) -> ChengConstants:
    if delta <= 0.0:
        raise ValueError(f"delta must be > 0, got {delta}")
    res = model_eigenvalue(n, a, H, R, tol)
    mspace = ModelSpace(dim=float(n), H=H, drift=a)
    vol_R = volume_model(mspace, R)
    vol_half = volume_model(mspace, res.r_half)
    C = 4.0 * math.sqrt(vol_R / vol_half)
    eps_quadratic = delta * math.sqrt(res.lam) / (C * math.sqrt(1.0 + delta))
    eps_doubling = doubling_epsilon(n, H, R, alpha=4.0, a=a).epsilon
    return ChengConstants(lam_model=res.lam, r_half=res.r_half, C=C,
                          eps_quadratic=eps_quadratic,
                          eps_doubling=eps_doubling,
                          epsilon=min(eps_quadratic, eps_doubling))


def cheng_epsilon(n: int, a: float, H: float, R: float, delta: float,
                  tol: Tolerance = EIGEN_TOL) -> float:
    """Excess threshold below which the ball eigenvalue is (1+delta)-close
    to the model eigenvalue."""
    return cheng_constants(n, a, H, R, delta, tol).epsilon


@dataclass(frozen=True)
class ChengReport:
    """Outcome of the eigenvalue closeness check."""

    lam_ball: float
    lam_model: float
    delta: float
    epsilon: float
    l: float
    ratio: float
    passed: bool
    not_applicable: bool = False
    reason: str = ""
    mode: str = "radial"

    @property
    def verdict(self) -> str:
        if self.not_applicable:
            return "NOT-APPLICABLE"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "theorem_id": "CHENG",
            "params": {"lambda_ball": float(self.lam_ball),
                       "lambda_model": float(self.lam_model),
                       "delta": float(self.delta),
                       "epsilon": float(self.epsilon),
                       "l": float(self.l)},
            "units": {"lambda_ball": "1/length^2", "lambda_model": "1/length^2",
                      "delta": "dimensionless", "epsilon": "1/length",
                      "l": "1/length"},
            "ratio": float(self.ratio),
            "pass": bool(self.passed),
            "verdict": self.verdict,
            "mode": self.mode,
            "reason": self.reason,
            "min_margin": float((1.0 + self.delta) - self.ratio),
        }


def check_cheng_estimate(s: WarpedSMMS, H: float, a: float | None, R: float,
                         delta: float, mode: str = "radial",
                         tol: Tolerance = EIGEN_TOL) -> ChengReport:
    """lambda(B(pole, R)) <= (1 + delta) lambda_model, gated on l <= epsilon."""
    pb = potential_bounds(s)
    if a is None:
        a = pb.a
    elif a < pb.a - 1e-9:
        raise ValueError(f"a={a} is below the space's drift bound {pb.a}")
    eps = cheng_epsilon(s.n, a, H, R, delta, tol)
    l = integral_rho(s, H, s.r_max, mode)
    lam_model = model_eigenvalue(s.n, a, H, R, tol).lam
    lam_ball = smms_radial_eigenvalue(s, R, tol).lam
    ratio = lam_ball / lam_model
    if l > eps + 1e-12:
        return ChengReport(lam_ball=lam_ball, lam_model=lam_model, delta=delta,
                           epsilon=eps, l=l, ratio=ratio, passed=False,
                           not_applicable=True, mode=mode,
                           reason=f"excess integral l={l:.6g} exceeds epsilon={eps:.6g}")
    passed = ratio <= 1.0 + delta + 1e-8
    return ChengReport(lam_ball=lam_ball, lam_model=lam_model, delta=delta,
                       epsilon=eps, l=l, ratio=ratio, passed=passed, mode=mode)
