"""Warped-space catalog, curvature quantities, excess integrals, measures."""

import math

import numpy as np
import pytest

from conftest import perturbed_euclidean
from smmskit.model import area_model, ModelSpace
from smmskit.smms import (RadialProfile, CATALOG, bakry_emery_radial,
                          integral_rho, make_space, mean_curvature_f,
                          potential_bounds, profile_from_spec, rho,
                          ricci_f_smallest_eigenvalue, ricci_radial,
                          sample_curvature, weighted_area, weighted_volume)

INTERIOR = np.linspace(0.2, 2.8, 40)


class TestCatalog:
    def test_euclidean(self):
        s = make_space("euclidean", n=3)
        assert not s.closed
        for r in INTERIOR:
            assert abs(ricci_radial(s, r)) < 1e-14

    def test_sphere(self):
        s = make_space("sphere", n=3, H=1.0)
        assert s.closed and s.r_max == math.pi
        for r in INTERIOR:
            assert abs(ricci_radial(s, r) - 2.0) < 1e-12

    def test_hyperbolic(self):
        s = make_space("hyperbolic", n=4, H=-1.0)
        for r in INTERIOR:
            assert abs(ricci_radial(s, r) + 3.0) < 1e-12

    def test_gaussian_soliton_is_einstein(self):
        # f = r^2/4 on flat space: Ric_f = g/2 in every direction.
        s = make_space("gaussian_soliton", n=3, c=0.25)
        for r in INTERIOR:
            assert abs(bakry_emery_radial(s, r) - 0.5) < 1e-12
            assert abs(ricci_f_smallest_eigenvalue(s, r) - 0.5) < 1e-12

    def test_linear_drift_stacks_on_base(self):
        s = make_space("linear_drift", n=3, a=0.7, base="euclidean")
        for r in INTERIOR:
            assert abs(bakry_emery_radial(s, r)) < 1e-12
            assert abs(mean_curvature_f(s, r) - (2.0 / r + 0.7)) < 1e-12

    def test_perturbed_sphere_closes(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        assert s.closed
        assert abs(s.w.eval(s.r_max)) < 1e-12
        assert abs(s.w.d1(s.r_max) + 1.0) < 1e-12

    def test_perturbed_sphere_bad_omega_rejected(self):
        with pytest.raises(ValueError):
            make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=2.5)

    def test_unknown_space(self):
        with pytest.raises(ValueError):
            make_space("torus", n=3)

    def test_missing_dimension(self):
        with pytest.raises(ValueError):
            make_space("euclidean")

    def test_nonpositive_warping_rejected(self):
        with pytest.raises(ValueError):
            make_space("custom", n=3,
                       w={"type": "poly", "coeffs": [0.0, 1.0, -0.5]},
                       r_max=4.0)

    def test_catalog_listing_complete(self):
        assert set(CATALOG) == {"euclidean", "sphere", "hyperbolic",
                                "gaussian_soliton", "linear_drift",
                                "perturbed_sphere", "custom"}


class TestCurvature:
    def test_sphere_einstein(self):
        s = make_space("sphere", n=3, H=1.0)
        for r in (0.5, 1.5, 2.5):
            assert abs(bakry_emery_radial(s, r) - 2.0) < 1e-12
            assert abs(ricci_f_smallest_eigenvalue(s, r) - 2.0) < 1e-10

    def test_soliton_mean_curvature(self):
        s = make_space("gaussian_soliton", n=3, c=0.25)
        for r in (0.5, 1.0, 2.0):
            assert abs(mean_curvature_f(s, r) - (2.0 / r - r / 2.0)) < 1e-12

    def test_sphere_equator_mean_curvature(self):
        s = make_space("sphere", n=3, H=1.0)
        assert abs(mean_curvature_f(s, math.pi / 2)) < 1e-12

    def test_domain_validation(self):
        s = make_space("sphere", n=3, H=1.0)
        with pytest.raises(ValueError):
            ricci_radial(s, 0.0)
        with pytest.raises(ValueError):
            ricci_radial(s, math.pi)
        with pytest.raises(ValueError):
            mean_curvature_f(s, -0.2)

    def test_riccati_identity(self):
        # m' = -m^2/(n-1) - Ric(d_r, d_r) holds exactly on warped products.
        spaces = [
            make_space("sphere", n=3, H=1.0),
            make_space("hyperbolic", n=4, H=-1.0),
            make_space("perturbed_sphere", n=3, H=1.0, eps=0.08, omega=2.0),
            perturbed_euclidean(3, 0.05, 3.0),
        ]
        h = 1e-6
        for s in spaces:
            for r in np.linspace(0.3, 0.8 * s.r_max, 11):
                m = lambda t: mean_curvature_f(s, t) + float(s.f.d1(t))
                lhs = (m(r + h) - m(r - h)) / (2 * h)
                rhs = -m(r) ** 2 / (s.n - 1) - ricci_radial(s, r)
                assert abs(lhs - rhs) <= 1e-5 * (1.0 + abs(rhs))


class TestRho:
    def test_vanishes_on_matching_model(self):
        s = make_space("sphere", n=3, H=1.0)
        for r in (0.3, 1.2, 2.9):
            assert rho(s, 1.0, r) == 0.0

    def test_flat_space_positive_curvature_target(self):
        s = make_space("euclidean", n=3)
        for r in INTERIOR:
            assert abs(rho(s, 1.0, r) - 2.0) < 1e-14

    def test_soliton_threshold(self):
        s = make_space("gaussian_soliton", n=3, c=0.25)
        assert rho(s, 0.25, 1.0) == 0.0          # (n-1)H = 1/2 = Ric_f
        assert abs(rho(s, 0.3, 1.0) - 0.1) < 1e-12

    def test_full_dominates_radial(self):
        spaces = [make_space("perturbed_sphere", n=3, H=1.0, eps=0.07, omega=2.0),
                  perturbed_euclidean(4, 0.06, 2.5, amp=0.1, nu=1.5),
                  make_space("linear_drift", n=3, a=0.5, base="euclidean")]
        for s in spaces:
            for r in np.linspace(0.2, 0.9 * s.r_max, 17):
                assert rho(s, 1.0, r, "full") >= rho(s, 1.0, r, "radial") - 1e-14

    def test_zero_iff_bakry_emery_dominates(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        for r in np.linspace(0.2, 2.9, 25):
            zero = rho(s, 1.0, r) == 0.0
            dominates = bakry_emery_radial(s, r) >= 2.0 - 1e-14
            assert zero == dominates

    def test_unknown_mode(self):
        s = make_space("euclidean", n=3)
        with pytest.raises(ValueError):
            rho(s, 1.0, 1.0, mode="sideways")


class TestIntegralRho:
    def test_constant_excess(self):
        s = make_space("euclidean", n=3)
        assert abs(integral_rho(s, 1.0, 2.0) - 4.0) < 1e-9

    def test_zero_excess(self):
        s = make_space("sphere", n=3, H=1.0)
        assert integral_rho(s, 1.0, s.r_max) == 0.0

    def test_riemann_sum_oracle(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        got = integral_rho(s, 1.0, math.pi)
        ts = (np.arange(1_000_000) + 0.5) * (math.pi / 1_000_000)
        from smmskit.smms import _rho_clamped
        oracle = float(np.sum(_rho_clamped(s, 1.0, ts, "radial"))) * math.pi / 1_000_000
        assert abs(got - oracle) <= 1e-6 * oracle

    def test_truncates_at_r_max(self):
        s = make_space("sphere", n=3, H=1.0)
        assert integral_rho(s, 2.0, 50.0) == pytest.approx(
            integral_rho(s, 2.0, s.r_max), rel=1e-12)


class TestPotentialBounds:
    def test_zero_potential(self):
        pb = potential_bounds(make_space("euclidean", n=3))
        assert pb.k == 0.0 and pb.a == 0.0 and pb.grad == 0.0

    def test_linear_extrema(self):
        s = make_space("linear_drift", n=3, a=0.3, base="euclidean", r_max=2.0)
        pb = potential_bounds(s)
        assert abs(pb.k - 0.6) < 1e-12
        assert abs(pb.a - 0.3) < 1e-12

    def test_soliton_increasing(self):
        s = make_space("gaussian_soliton", n=3, c=0.25, r_max=2.0)
        pb = potential_bounds(s)
        assert abs(pb.k - 1.0) < 1e-12
        assert pb.a == 0.0
        assert abs(pb.grad - 1.0) < 1e-12


class TestMeasures:
    def test_euclidean_area_volume(self):
        s = make_space("euclidean", n=3)
        for r in (0.5, 1.0, 2.0):
            assert abs(weighted_area(s, r) - 4 * math.pi * r ** 2) < 1e-10
            assert abs(weighted_volume(s, r) - 4 * math.pi * r ** 3 / 3) < 1e-9

    def test_round_sphere_total_volume(self):
        s = make_space("sphere", n=3, H=1.0)
        assert abs(weighted_volume(s, math.pi) - 2 * math.pi ** 2) < 1e-9

    def test_drift_hand_integral(self):
        # 2 pi int_0^1 t e^t dt = 2 pi.
        s = make_space("linear_drift", n=2, a=1.0, base="euclidean", r_max=5.0)
        assert abs(weighted_volume(s, 1.0) - 2 * math.pi) < 1e-9

    def test_fundamental_theorem(self):
        s = make_space("gaussian_soliton", n=3, c=0.1)
        h = 1e-5
        for R in (0.5, 1.5, 2.5):
            dv = (weighted_volume(s, R + h) - weighted_volume(s, R - h)) / (2 * h)
            assert abs(dv - weighted_area(s, R)) <= 1e-6 * weighted_area(s, R)

    def test_matches_model_on_space_forms(self):
        for name, H in (("euclidean", 0.0), ("sphere", 1.0), ("hyperbolic", -1.0)):
            kwargs = {"n": 3} if name == "euclidean" else {"n": 3, "H": H}
            s = make_space(name, **kwargs)
            m = ModelSpace(3.0, H)
            for r in np.linspace(0.1, 0.9 * s.r_max, 12):
                assert abs(weighted_area(s, r) - area_model(m, r)) \
                    <= 1e-9 * area_model(m, r)


class TestSampleCurvature:
    def test_fields_consistent(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        c = sample_curvature(s, 1.0, 1.3, "full")
        assert c.rho >= (s.n - 1) * 1.0 - c.ric_f_radial - 1e-12
        assert c.lambda_min <= c.ric_f_radial + 1e-12
        assert abs(c.m_f - (c.m - float(s.f.d1(1.3)))) < 1e-12

    def test_rho_integral_nondecreasing(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        vals = [sample_curvature(s, 1.0, r).rho_integral for r in (0.5, 1.0, 2.0, 3.0)]
        assert np.all(np.diff(vals) >= -1e-12)


class TestProfiles:
    def test_fd_fallback_accuracy(self):
        p = RadialProfile(lambda r: np.sin(np.asarray(r, dtype=float)), r_max=3.0)
        for r in (1e-5, 0.5, 1.5, 2.9999):
            assert abs(p.d1(r) - math.cos(r)) < 1e-7
            assert abs(p.d2(r) + math.sin(r)) < 1e-5

    def test_analytic_d2_matches_differences(self):
        s = make_space("perturbed_sphere", n=3, H=1.0, eps=0.05, omega=3.0)
        h = 1e-4
        for r in np.linspace(0.3, 2.8, 9):
            fd = (s.w.eval(r + h) - 2 * s.w.eval(r) + s.w.eval(r - h)) / h ** 2
            assert abs(fd - s.w.d2(r)) <= 1e-6 * (1.0 + abs(s.w.d2(r)))

    def test_poly_profile(self):
        p = profile_from_spec({"type": "poly", "coeffs": [0.0, 1.0, 0.0, -0.1]}, 2.0)
        assert abs(p.eval(1.5) - (1.5 - 0.1 * 1.5 ** 3)) < 1e-14
        assert abs(p.d1(1.5) - (1.0 - 0.3 * 1.5 ** 2)) < 1e-14
        assert abs(p.d2(1.5) - (-0.6 * 1.5)) < 1e-14

    def test_fourier_profile(self):
        p = profile_from_spec({"type": "fourier", "coeffs": [0.2, 0.1, 0.05]}, 2 * math.pi)
        r = 0.8
        want = 0.2 + 0.1 * math.cos(r) + 0.05 * math.sin(r)
        assert abs(p.eval(r) - want) < 1e-14
        assert abs(p.d1(r) - (-0.1 * math.sin(r) + 0.05 * math.cos(r))) < 1e-14

    def test_table_profile_spline(self):
        rs = np.linspace(0.0, 3.0, 16)
        nodes = [v for pair in zip(rs, np.sin(rs)) for v in pair]
        p = profile_from_spec({"type": "table", "nodes": nodes}, 3.0)
        for r in (0.7, 1.4, 2.6):
            assert abs(p.eval(r) - math.sin(r)) < 5e-4
            assert abs(p.d1(r) - math.cos(r)) < 5e-3

    def test_table_requires_eight_nodes(self):
        with pytest.raises(ValueError):
            profile_from_spec({"type": "table", "nodes": [0, 0, 1, 1, 2, 2]}, 2.0)

    def test_unknown_profile_type(self):
        with pytest.raises(ValueError):
            profile_from_spec({"type": "chebyshev", "coeffs": [1.0]}, 1.0)
