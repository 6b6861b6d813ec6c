import math

import pytest

from horokit.errors import RootSearchFailure
from horokit.flows import J_FRAME
from horokit.hyperbolic_core import INFINITY, BoundaryPoint, Geodesic, Point, busemann, dist
from horokit.lemma_lab import (
    estimate_thin_constant,
    inner_triangle,
    make_triangle,
    orthogonal_horocycle_time,
    sample_triangles,
    triangle_defect,
    verify_flow_lemmas,
    verify_inner_triangle,
    verify_reciprocal,
    verify_side_switch,
    vertex_distance,
)

ANGLES = [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2]


class TestTriangles:
    def test_straight_angle_has_no_defect(self):
        t = make_triangle(5.0, 5.0, math.pi)
        assert triangle_defect(t) == pytest.approx(0.0, abs=1e-9)
        assert vertex_distance(t) == pytest.approx(0.0, abs=1e-9)

    def test_sides_have_the_requested_lengths(self):
        t = make_triangle(2.0, 3.0, 1.0)
        assert dist(t.a, t.b) == pytest.approx(2.0)
        assert dist(t.a, t.c) == pytest.approx(3.0)

    def test_angle_filter(self):
        kept = sample_triangles(500, seed=5, angle_min=math.pi / 2)
        assert kept
        assert all(t.angle >= math.pi / 2 for t in kept)
        assert len(kept) < 500

    def test_longer_runs_extend_shorter_ones(self):
        short = sample_triangles(50, seed=9)
        long = sample_triangles(100, seed=9)
        assert len(short) == 50
        for s, t in zip(short, long):
            assert s.angle == t.angle
            assert s.ideal == t.ideal
            assert (s.b.x, s.b.y, s.c.x, s.c.y) == pytest.approx((t.b.x, t.b.y, t.c.x, t.c.y), rel=1e-12)


class TestThinConstant:
    def test_right_angle_defect_below_log_four(self):
        """For apex angles >= pi/2 the defect stays below -2 ln sin(pi/4) = ln 2."""
        est = estimate_thin_constant(math.pi / 2, 5000, seed=1)
        assert 0 < est.defect_estimate <= math.log(4.0)
        assert est.defect_estimate <= math.log(2.0) + 1e-9
        assert est.estimate == max(est.defect_estimate, est.distance_estimate)

    def test_monotone_in_the_angle(self):
        estimates = [estimate_thin_constant(a, 3000, seed=2).estimate for a in ANGLES]
        assert estimates == sorted(estimates, reverse=True)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            estimate_thin_constant(0.0, 10)
        with pytest.raises(ValueError):
            estimate_thin_constant(1.0, 0)


class TestReciprocal:
    def test_no_violations_against_fitted_constants(self):
        report = verify_reciprocal(1.0, 3000, seed=4)
        assert report.accepted > 0
        assert report.violations == []
        assert report.alpha_hat is not None and report.alpha_hat > 0

    def test_alpha_hat_shrinks_as_k_grows(self):
        tight = verify_reciprocal(0.5, 3000, seed=4)
        loose = verify_reciprocal(2.0, 3000, seed=4)
        assert loose.accepted >= tight.accepted
        assert loose.alpha_hat <= tight.alpha_hat


class TestInnerTriangle:
    def test_symmetric_pair_at_infinity(self):
        """p, q = -1 + i, 1 + i meet their geodesic's top (0, sqrt 2)."""
        a, b, g = inner_triangle(INFINITY, Point(-1.0, 1.0), Point(1.0, 1.0))
        assert (g.x, g.y) == pytest.approx((0.0, math.sqrt(2.0)))
        assert (a.x, a.y) == pytest.approx((1.0, 1 + math.sqrt(2.0)))
        assert (b.x, b.y) == pytest.approx((-1.0, 1 + math.sqrt(2.0)))
        assert busemann(INFINITY, a, b) == pytest.approx(0.0, abs=1e-9)

    def test_coincident_points(self):
        p = Point(0.3, 0.7)
        assert inner_triangle(BoundaryPoint.real(1.0), p, p) == (p, p, p)

    def test_seeded_run(self):
        est = verify_inner_triangle(200, seed=6)
        assert est.accepted == 200
        assert est.chain_error <= 1e-8
        assert est.estimate > 0


class TestFlowLemmas:
    def test_orthogonal_time(self):
        """The ray of h^s J is x = -s, so it meets a semicircle centred at 2 at s = -2."""
        axis = Geodesic(BoundaryPoint.real(0.0), BoundaryPoint.real(4.0))
        assert orthogonal_horocycle_time(J_FRAME, axis) == pytest.approx(-2.0)
        with pytest.raises(RootSearchFailure):
            orthogonal_horocycle_time(J_FRAME, Geodesic(BoundaryPoint.real(99.0), BoundaryPoint.real(101.0)), 10.0)

    def test_sandwiches_hold(self):
        report = verify_flow_lemmas(200, seed=3, alpha0=math.pi / 3)
        assert report.accepted > 0
        assert report.iv_iw_violations == 0
        assert report.upper_violations == 0
        assert report.max_iv_iw <= math.asinh(1 / math.tan(math.pi / 3)) + 1e-9
        assert set(report.c2_by_threshold) == {0.0, 1.0, 2.0, 3.0}

    def test_orthogonal_axes_share_the_crossing(self):
        report = verify_flow_lemmas(50, seed=3, alpha0=math.pi / 2, thin_samples=1000)
        assert report.max_iv_iw <= 1e-9


class TestSideSwitch:
    def test_seeded_run(self):
        report = verify_side_switch(200, seed=8)
        assert report.accepted > 0
        assert 0.0 <= report.switched_fraction <= 1.0
        assert report.mean_iterations >= 1.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            verify_side_switch(0)


class TestFullRuns:
    """Seeded runs at the sample counts the constants are quoted for."""

    def test_right_angle_defect(self):
        est = estimate_thin_constant(math.pi / 2, 100_000)
        assert est.defect_estimate <= math.log(4.0) + 1e-6

    def test_inner_triangle_chain(self):
        est = verify_inner_triangle(10_000)
        assert est.accepted == 10_000
        assert est.chain_error <= 1e-8

    @pytest.mark.parametrize("alpha0", [math.pi / 6, math.pi / 3, math.pi / 2])
    def test_crossing_distance_below_thin_constant(self, alpha0):
        report = verify_flow_lemmas(10_000, alpha0=alpha0)
        assert report.accepted > 0
        assert report.iv_iw_violations == 0
        assert report.max_iv_iw <= report.c_hat + 1e-9
        assert report.upper_violations == 0
