import random
from fractions import Fraction

import pytest

from jetdiff.genericity import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    axis_ox_disposition_check,
    curve_smooth_check,
    full_genericity_audit,
    infinity_disposition_check,
    line_y0_disposition_check,
    no_triple_check,
    pair_transversality_check,
    shear,
)
from jetdiff.jetbuilder import XY, SurfacePair
from jetdiff.polyring import ExactPoly, poly_diff, poly_parse
from jetdiff.sampling import random_surface_pair

X = ExactPoly.variable(XY, "x")
Y = ExactPoly.variable(XY, "y")
ONE = ExactPoly.const(XY, 1)


class TestShear:
    def test_x_maps_to_x_plus_sy(self):
        assert shear(X, 1) == X + Y

    def test_y_untouched(self):
        assert shear(Y, 7) == Y

    def test_square(self):
        assert shear(X * X, 1) == poly_parse("x^2 + 2*x*y + y^2", XY)

    def test_degree_preserved(self, rng):
        from conftest import random_poly
        for _ in range(10):
            p = random_poly(rng, 4)
            if p.is_zero():
                continue
            assert shear(p, Fraction(3, 5)).total_degree() == p.total_degree()


class TestPairTransversality:
    def test_two_lines_pass(self):
        report = pair_transversality_check(Y - X, Y + X)
        assert report.passed and report.verdict == PASS
        assert report.resultant_degree == 1 == report.degree_product

    def test_tangency_fails(self):
        report = pair_transversality_check(Y - X * X, Y)
        assert not report.passed and report.verdict == FAIL

    def test_common_factor_fails(self):
        p = (Y - X) * (Y + X * X)
        q = (Y - X) * (Y + ONE)
        report = pair_transversality_check(p, q)
        assert report.verdict == FAIL and report.resultant_degree == -1

    def test_intersection_at_infinity_fails(self):
        # parallel-asymptote hyperbolas meet on the line at infinity
        report = pair_transversality_check(X * Y - ONE, X * Y - ONE - ONE)
        assert report.verdict == FAIL and not report.all_affine

    def test_random_cubics_pass(self):
        rng = random.Random(1234)
        passes = 0
        for _ in range(5):
            surf = random_surface_pair(rng, 3, 3)
            if pair_transversality_check(surf.r, surf.s).passed:
                passes += 1
        assert passes >= 4

    def test_shear_invariance(self):
        rng = random.Random(555)
        surf = random_surface_pair(rng, 3, 3)
        base = pair_transversality_check(surf.r, surf.s).passed
        for s in (Fraction(1), Fraction(-2, 3), Fraction(5, 7)):
            assert pair_transversality_check(shear(surf.r, s), shear(surf.s, s)).passed == base

    def test_bezout_consistency(self):
        rng = random.Random(77)
        for _ in range(4):
            surf = random_surface_pair(rng, 2, 3)
            report = pair_transversality_check(surf.r, surf.s)
            if report.passed:
                assert report.resultant_degree == surf.d * surf.e

    def test_d_e_minus_one_count(self):
        rng = random.Random(4321)
        surf = random_surface_pair(rng, 3, 3)
        report = pair_transversality_check(surf.r, poly_diff(surf.s, "x"))
        assert report.passed
        assert report.resultant_degree == 3 * 2
        assert report.squarefree

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(ValueError):
            pair_transversality_check(ONE, Y)
        with pytest.raises(ValueError):
            pair_transversality_check(ExactPoly.zero(XY), Y)


class TestCurveSmoothness:
    def test_smooth_conic(self):
        assert curve_smooth_check(poly_parse("x^2 + y^2 - 1", XY))

    def test_cuspidal_cubic(self):
        assert not curve_smooth_check(poly_parse("y^2 - x^3", XY))

    def test_smooth_elliptic(self):
        assert curve_smooth_check(poly_parse("y^2 - x^3 - x - 1", XY))

    def test_nodal_cubic(self):
        assert not curve_smooth_check(poly_parse("y^2 - x^2*(x + 1)", XY))

    def test_repeated_component(self):
        assert not curve_smooth_check(poly_parse("(x + y)^2", XY))

    def test_random_dense_curves_smooth(self):
        rng = random.Random(99)
        smooth = 0
        for _ in range(5):
            surf = random_surface_pair(rng, 3, 3)
            if curve_smooth_check(surf.r):
                smooth += 1
        assert smooth >= 4


class TestNoTriple:
    def test_lines_missing_origin(self):
        assert no_triple_check(Y - X, Y + X, Y - ONE)

    def test_lines_through_origin(self):
        assert not no_triple_check(Y - X, Y + X, Y)

    def test_random_trios(self):
        rng = random.Random(31)
        hits = 0
        for _ in range(4):
            surf = random_surface_pair(rng, 3, 3)
            third = random_surface_pair(rng, 3, 3).r
            if no_triple_check(surf.r, surf.s, third):
                hits += 1
        assert hits >= 3

    def test_rational_triple_point_detected(self):
        # all three pass through (1, 2)
        p = poly_parse("y - 2*x", XY)
        q = poly_parse("y + x - 3", XY)
        r = poly_parse("y - x^2 - 1", XY)
        assert not no_triple_check(p, q, r)


class TestDispositions:
    def test_line_y0_fails_on_circle(self):
        # R_y = 2y vanishes identically on y = 0
        surf = SurfacePair.parse("x^2 + y^2 - 1", "x^2 + y^2 + x*y + y - 2")
        assert not line_y0_disposition_check(surf)

    def test_line_y0_fails_on_shared_root(self):
        # R_y(x,0) = x + 1 shares the root x = -1 with R(x,0) = x^2 - 1
        surf = SurfacePair.parse("x^2 + y^2 + x*y + y - 1", "x^2 + 3*y^2 + x*y + x - 5")
        assert not line_y0_disposition_check(surf)

    def test_line_y0_random_pass(self):
        rng = random.Random(2024)
        hits = 0
        for _ in range(5):
            surf = random_surface_pair(rng, 3, 4)
            if line_y0_disposition_check(surf):
                hits += 1
        assert hits >= 4

    def test_axis_ox(self):
        assert not axis_ox_disposition_check(SurfacePair.parse("y - x", "y + x"))
        assert axis_ox_disposition_check(SurfacePair.parse("y - x - 1", "y + x - 2"))

    def test_infinity_disposition(self):
        good = SurfacePair.parse("x^2 + y^2 - 1", "x^2 + x*y + y^2 - 2")
        assert infinity_disposition_check(good)
        # identical leading forms meet at infinity
        bad = SurfacePair.parse("x^2 + x*y + y^2 - 1", "x^2 + x*y + y^2 - 2")
        assert not infinity_disposition_check(bad)


class TestFullAudit:
    def test_random_pair_passes(self):
        rng = random.Random(42)
        surf = random_surface_pair(rng, 3, 3)
        report = full_genericity_audit(surf)
        assert report.passed and report.verdict == PASS
        assert len(report.checks) == 2 + 15 + 20 + 3
        assert len(report.optional_checks) == 6
        assert report.seed == 127

    def test_equal_pair_fails_with_witness(self):
        rng = random.Random(7)
        r = random_surface_pair(rng, 3, 3).r
        report = full_genericity_audit(SurfacePair(r, r))
        assert not report.passed and report.verdict == FAIL
        failing = {c.name: c for c in report.failing()}
        assert "pair_R_S" in failing
        assert failing["pair_R_S"].witness is not None

    def test_json_shape(self):
        rng = random.Random(64)
        surf = random_surface_pair(rng, 2, 2)
        body = full_genericity_audit(surf).to_json_dict()
        assert set(body) == {"seed", "verdict", "passed", "checks", "optional_checks"}
        for check in body["checks"]:
            assert check["verdict"] in (PASS, FAIL, INCONCLUSIVE)
