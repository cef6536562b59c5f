"""Multistart Newton solver against closed-form root sets.

The expected critical points below were derived by hand-eliminating the
gradient systems (monomial substitutions and a resultant step for the
corrected Hirzebruch potential), so the solver is checked against algebra it
does not share.
"""

import cmath
import math
import random
from fractions import Fraction

import pytest

from conftest import fd_log_gradient
from toricmirror.catalog import (
    hirzebruch2_kahler,
    p1_times_p1,
    projective_line,
    projective_plane,
)
from toricmirror.critical import (
    SolverOptions,
    find_critical_points,
    gradient,
    moduli_from_polytope,
)
from toricmirror.documents import critical_report_to_document, canonical_json
from toricmirror.errors import NoConvergence, ZeroCoordinate
from toricmirror.gw import GWProvider
from toricmirror.kahler import KahlerData
from toricmirror.laurent import LaurentPoly, QPoly
from toricmirror.potential import corrected_potential, hori_vafa

T001 = math.log(100.0)  # q = 0.01
RAT_T = Fraction(46051701859880914, 10**16)  # rational stand-in for ln(100)


def line_setup():
    fan = projective_line()
    k = KahlerData(fan, ["0", "-t"])
    return k, hori_vafa(fan, k), {"t": RAT_T}


def plane_setup():
    fan = projective_plane()
    k = KahlerData(fan, ["0", "0", "-t"])
    return k, hori_vafa(fan, k), {"t": RAT_T}


def product_setup():
    fan = p1_times_p1()
    k = KahlerData(fan, ["0", "-ta", "0", "-tb"])
    return k, hori_vafa(fan, k), {"ta": RAT_T, "tb": RAT_T}


def f2_setup():
    k = hirzebruch2_kahler()
    W = corrected_potential(k.fan, k, GWProvider(k), 2)
    return k, W, {"t1": RAT_T, "t2": RAT_T}


def solve(k, W, params, **overrides):
    t = [float(a.subs(params)) for a in k.basis_areas()]
    options = SolverOptions(
        moduli_per_coord=moduli_from_polytope(k, params), **overrides
    )
    return find_critical_points(W, t, options), t


def assert_point_sets_match(report, expected, tol=1e-9):
    assert len(report.points) == len(expected)
    unmatched = list(expected)
    for point in report.points:
        best = min(unmatched,
                   key=lambda e: sum(abs(a - b) for a, b in zip(point, e)))
        assert sum(abs(a - b) for a, b in zip(point, best)) < tol
        unmatched.remove(best)


class TestGradient:
    def test_line_critical_point(self):
        k, W, _ = line_setup()
        g = gradient(W, [0.1], [T001])
        assert abs(g[0]) < 1e-15

    def test_product_monomial(self):
        W = LaurentPoly.monomial((1, 1), QPoly.constant(0, 1))
        assert gradient(W, [1.0, 1.0], []) == (1.0, 1.0)

    def test_zero_coordinate(self):
        W = LaurentPoly.monomial((1,), QPoly.constant(0, 1))
        with pytest.raises(ZeroCoordinate):
            gradient(W, [0.0], [])

    def test_matches_finite_differences(self):
        rng = random.Random(12)
        k, W, _ = f2_setup()
        kp, Wp, _ = plane_setup()
        for _ in range(60):
            for poly, n, t in ((W, 2, [T001, T001]), (Wp, 2, [T001])):
                z = [cmath.rect(rng.uniform(0.3, 2.0), rng.uniform(0, 2 * math.pi))
                     for _ in range(n)]
                exact = gradient(poly, z, t)
                approx = fd_log_gradient(poly, z, t)
                err = max(abs(a - b) for a, b in zip(exact, approx))
                scale = max(1.0, max(abs(g) for g in exact))
                assert err / scale < 1e-6


class TestRootCounts:
    def test_line_two_points(self):
        k, W, params = line_setup()
        report, t = solve(k, W, params)
        assert_point_sets_match(report, [(-0.1,), (0.1,)])
        assert sorted(v.real for v in report.values) == pytest.approx([-0.2, 0.2])
        assert all(r < 1e-9 for r in report.residuals)

    def test_plane_three_points_at_q_one(self):
        # t = 0 collapses the moment polytope, so seed moduli explicitly
        fan = projective_plane()
        k = KahlerData(fan, ["0", "0", "-t"])
        W = hori_vafa(fan, k)
        report = find_critical_points(
            W, [0.0], SolverOptions(moduli_per_coord=((0.5, 1.0, 2.0),) * 2)
        )
        cube_roots = [cmath.exp(2j * math.pi * j / 3) for j in range(3)]
        expected = [(z, z) for z in cube_roots]
        assert_point_sets_match(report, expected)
        values = sorted((v.real, v.imag) for v in report.values)
        oracle = sorted(((3 * z).real, (3 * z).imag) for z in cube_roots)
        for got, want in zip(values, oracle):
            assert got == pytest.approx(want, abs=1e-9)

    def test_plane_three_points(self):
        k, W, params = plane_setup()
        report, _ = solve(k, W, params)
        zeta = 0.01 ** (1 / 3)
        expected = [(zeta * w, zeta * w)
                    for w in (cmath.exp(2j * math.pi * j / 3) for j in range(3))]
        assert_point_sets_match(report, expected, tol=1e-8)

    def test_product_four_points(self):
        k, W, params = product_setup()
        report, _ = solve(k, W, params)
        expected = [(sa * 0.1, sb * 0.1) for sa in (1, -1) for sb in (1, -1)]
        assert_point_sets_match(report, expected)

    def test_corrected_f2_four_points(self):
        k, W, params = f2_setup()
        report, _ = solve(k, W, params)
        q1 = q2 = 0.01
        expected = []
        for s in (1, -1):
            for sign in (1, -1):
                z2 = sign * math.sqrt(q2) * (1 + s * math.sqrt(q1))
                z1 = s * math.sqrt(q1) * q2 / z2
                expected.append((z1, z2))
        assert_point_sets_match(report, expected)
        assert all(r < 1e-9 for r in report.residuals)

    def test_counts_match_euler_characteristics(self):
        # critical point count = number of maximal cones for these cases
        for setup in (line_setup, plane_setup, product_setup, f2_setup):
            k, W, params = setup()
            report, _ = solve(k, W, params)
            assert report.deduped == len(k.fan.maximal_cones)


class TestSolverBehavior:
    def test_deterministic_reports(self):
        k, W, params = f2_setup()
        report1, _ = solve(k, W, params)
        report2, _ = solve(k, W, params)
        doc1 = canonical_json(critical_report_to_document(report1, {"t1": T001}))
        doc2 = canonical_json(critical_report_to_document(report2, {"t1": T001}))
        assert doc1 == doc2

    def test_counts_stable_under_tolerance(self):
        for setup in (line_setup, plane_setup, product_setup, f2_setup):
            k, W, params = setup()
            counts = set()
            for tol in (1e-10, 1e-12):
                report, _ = solve(k, W, params, tol=tol)
                counts.add(report.deduped)
            assert len(counts) == 1

    def test_residuals_below_tolerance(self):
        k, W, params = f2_setup()
        report, t = solve(k, W, params)
        for point, resid in zip(report.points, report.residuals):
            assert resid <= report.options.tol
            recomputed = gradient(W, point, t)
            assert math.sqrt(sum(abs(g) ** 2 for g in recomputed)) <= report.options.tol

    def test_no_convergence_when_no_roots(self):
        # a single monomial has no critical point on the torus; its gradient
        # decays toward the boundary, so this also guards the step-size gate
        # against reporting the valley flow as a root
        W = LaurentPoly.monomial((1,), QPoly.constant(0, 1))
        with pytest.raises(NoConvergence):
            find_critical_points(W, [])

    def test_constant_rejected(self):
        W = LaurentPoly.monomial((0,), QPoly.constant(0, 1))
        with pytest.raises(ValueError):
            find_critical_points(W, [])

    def test_stats_accounting(self):
        k, W, params = line_setup()
        report, _ = solve(k, W, params)
        assert report.attempted >= report.converged >= report.deduped
        assert report.deduped == len(report.points) == len(report.values)
