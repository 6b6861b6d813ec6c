import math

import numpy as np
import pytest

from horokit.config import CounterexampleConfig
from horokit.counterexample import build
from horokit.criteria import (
    Side,
    attained_depth,
    census,
    census_points,
    density_gap,
    horoball_of,
    in_cone,
    in_horoball_half,
    limit_set_targets,
    radial_witnesses,
)
from horokit.errors import EmptyTargets, PingPongUnverified
from horokit.flows import J_FRAME, Frame, basepoint, endpoints, geodesic_flow, horocycle_flow, random_frame, ray_distance, translate
from horokit.hyperbolic_core import INFINITY, BoundaryPoint, Geodesic, Point, dist_to_geodesic
from horokit.isometry import apply, attracting_fixed_point, frame_matrix
from horokit.schottky import enumerate_orbit, evaluate, word_count


class TestHalves:
    """Around J the deep horoball at D = 1 is y >= e and H+ is its x <= 0 half."""

    def test_plus_half(self):
        p = Point(-0.5, 4.0)
        assert in_horoball_half(J_FRAME, 1.0, p, Side.PLUS)
        assert not in_horoball_half(J_FRAME, 1.0, p, Side.MINUS)

    def test_minus_half(self):
        p = Point(0.5, 4.0)
        assert in_horoball_half(J_FRAME, 1.0, p, Side.MINUS)
        assert not in_horoball_half(J_FRAME, 1.0, p, Side.PLUS)

    def test_dividing_ray_is_in_both(self):
        p = Point(0.0, 3.0)
        assert in_horoball_half(J_FRAME, 1.0, p, Side.PLUS)
        assert in_horoball_half(J_FRAME, 1.0, p, Side.MINUS)

    def test_outside_the_horoball(self):
        for side in Side:
            assert not in_horoball_half(J_FRAME, 1.0, Point(0.0, 0.5), side)
            assert not in_horoball_half(J_FRAME, 1.0, Point(-0.5, 2.0), side)

    def test_horocycle_flow_enters_the_plus_half(self):
        """h^s v for s >= 0 sits on the boundary of Hor+(v)."""
        for s in (0.0, 0.5, 3.0):
            f = horocycle_flow(J_FRAME, s)
            assert in_horoball_half(J_FRAME, 0.0, Point(-s, 1.0), Side.PLUS)
            assert endpoints(f)[0] == INFINITY


    @pytest.mark.parametrize("D", [0.0, 0.5, 2.0])
    def test_flow_orbits_fill_the_halves(self, D):
        """Basepoints of h^s g^-(t+D) v with t >= 0 lie in Hor+(g^-D v) for s >= 0 and in Hor- for s <= 0."""
        rng = np.random.default_rng(17)
        for v in [J_FRAME] + [random_frame(rng) for _ in range(5)]:
            for t in np.linspace(0.0, 4.0, 9):
                deeper = geodesic_flow(v, -(float(t) + D))
                for s in np.linspace(0.0, 20.0, 13):
                    assert in_horoball_half(v, D, basepoint(horocycle_flow(deeper, float(s))), Side.PLUS)
                    assert in_horoball_half(v, D, basepoint(horocycle_flow(deeper, -float(s))), Side.MINUS)


class TestCone:
    def test_horoball_of_j(self):
        h = horoball_of(J_FRAME)
        assert h.base == INFINITY
        assert h.anchor.y == pytest.approx(1.0)

    def test_membership(self):
        assert in_cone(J_FRAME, 0.1, Point(0.0, 5.0))
        assert not in_cone(J_FRAME, 0.5, Point(3.0, 2.0))
        assert in_cone(J_FRAME, 1.5, Point(3.0, 2.0))
        assert not in_cone(J_FRAME, 10.0, Point(0.0, 0.5))

    def test_ray_distance_is_axis_distance_above_the_horocycle(self):
        """For y >= 1 the nearest point of (0, inf) has height |p| >= 1, so it lies on J's ray."""
        rng = np.random.default_rng(29)
        axis = Geodesic(BoundaryPoint.real(0.0), INFINITY)
        xs = rng.uniform(-50.0, 50.0, 10_000)
        ys = np.exp(rng.uniform(0.0, math.log(100.0), 10_000))
        for x, y in zip(xs, ys):
            p = Point(float(x), float(y))
            assert ray_distance(J_FRAME, p) == pytest.approx(dist_to_geodesic(p, axis), abs=1e-12)


class TestCensus:
    def test_census_points(self):
        """One point per half, one inside the cone, one outside the horoball."""
        points = [Point(-10.0, 5.0), Point(10.0, 5.0), Point(0.1, 5.0), Point(0.0, 0.5)]
        c = census_points(points, J_FRAME, D=1.0, R=1.0)
        assert (c.plus_count, c.minus_count, c.horoball_count, c.tie_count, c.n_points) == (1, 1, 2, 0, 4)

    def test_census_over_an_orbit(self, two_pair_spec):
        c = census(two_pair_spec, J_FRAME, D=0.0, R=0.5, max_len=2)
        assert c.n_points == word_count(2, 2)
        assert c.max_len == 2
        assert c.plus_count + c.minus_count - c.tie_count <= c.n_points

    def test_census_needs_ping_pong(self, overlapping_spec):
        with pytest.raises(PingPongUnverified):
            census(overlapping_spec, J_FRAME, D=1.0, R=1.0, max_len=1)

    def test_attained_depth(self, two_pair_spec):
        assert attained_depth(two_pair_spec, J_FRAME, 2) >= 0.0

    def test_census_is_equivariant(self, two_pair_spec):
        """Moving the frame and the points by the same element leaves every count unchanged."""
        rng = np.random.default_rng(23)
        cloud = [Point(float(x), math.exp(float(y))) for x, y in zip(rng.uniform(-3, 3, 300), rng.uniform(-0.7, 3.0, 300))]
        points = [o.point for o in enumerate_orbit(two_pair_spec, 2)] + cloud
        reference = census_points(points, J_FRAME, D=0.5, R=0.5)
        assert reference.plus_count > 0
        assert reference.minus_count > 0
        for g in (evaluate(two_pair_spec, (1, -2)), random_frame(rng).m):
            moved = census_points([apply(g, p) for p in points], translate(g, J_FRAME), D=0.5, R=0.5)
            assert moved == reference

    def test_counts_grow_with_word_length(self, two_pair_spec):
        """v is based over the attracting point of gamma_1, which the orbit approaches."""
        v = Frame(frame_matrix(attracting_fixed_point(two_pair_spec.pairs[0].gamma), INFINITY))
        counts = [census(two_pair_spec, v, D=0.0, R=0.0, max_len=L) for L in range(4)]
        for name in ("plus_count", "minus_count", "horoball_count", "tie_count", "n_points"):
            values = [getattr(c, name) for c in counts]
            assert values == sorted(values)
        assert counts[-1].n_points == word_count(2, 3)


class TestDensity:
    def test_empty_targets(self, two_pair_spec):
        with pytest.raises(EmptyTargets):
            density_gap(two_pair_spec, J_FRAME, [], (0.0, 4.0), 5, 1)

    def test_only_the_matching_half_reaches_the_target(self, two_pair_spec):
        target = horocycle_flow(J_FRAME, 2.0)
        plus = density_gap(two_pair_spec, J_FRAME, [target], (0.0, 4.0), 5, 0)
        minus = density_gap(two_pair_spec, J_FRAME, [target], (-4.0, 0.0), 5, 0)
        assert plus <= 1e-9
        assert minus > 0.1

    def test_gap_shrinks_with_word_length(self, two_pair_spec):
        targets = limit_set_targets(two_pair_spec, 2, 3)
        gaps = [density_gap(two_pair_spec, J_FRAME, targets, (-4.0, 4.0), 9, L) for L in range(3)]
        assert gaps == sorted(gaps, reverse=True)

    def test_one_sided_contrast_on_the_construction(self):
        """Every image of h^2 v under a generator sits in a disk at distance >= asinh(1/2) from the s <= 0 grid."""
        spec = build(CounterexampleConfig(n_max=5))
        target = horocycle_flow(J_FRAME, 2.0)
        plus = density_gap(spec, J_FRAME, [target], (0.0, 4.0), 5, 1)
        minus = density_gap(spec, J_FRAME, [target], (-4.0, 0.0), 5, 1)
        assert plus <= 1e-9
        assert minus > 0.4

    def test_radial_witness_at_time_zero(self, two_pair_spec):
        """The ray of J starts at i, an orbit point."""
        witnesses = radial_witnesses(two_pair_spec, J_FRAME, R0=0.1, t_max=2.0, max_len=1, t_steps=4)
        assert witnesses[0] == 0.0
        assert all(0.0 <= t <= 2.0 for t in witnesses)

    def test_limit_set_targets(self, two_pair_spec):
        frames = limit_set_targets(two_pair_spec, 2, 3)
        assert len(frames) == 3
        for f in frames:
            minus, plus = endpoints(f)
            assert not math.isclose(minus.x, plus.x)
