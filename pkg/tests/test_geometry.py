import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lumigather.geometry import (
    DegenerateConfiguration,
    Point,
    SegmentPair,
    Tolerance,
    after_rp,
    convex_hull,
    distance,
    edge_on_border,
    is_clean,
    is_regular_polygon,
    lds_endpoints,
    lds_set,
    midpoint,
    on_circle,
    single_endpoints,
    smallest_enclosing_circle,
)
from oracles import brute_hull_vertices, brute_lds, brute_sec

SQUARE = [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]
EQUI = [Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)]


def regular(k, r=1.0, phase=0.0, c=(0.0, 0.0)):
    return [Point(c[0] + r * math.cos(phase + 2 * math.pi * i / k),
                  c[1] + r * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
point_sets = st.lists(st.tuples(coord, coord).map(lambda t: Point(*t)), min_size=2, max_size=10)


def _spread(pts):
    d = [distance(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    return min(d) > 1e-3


class TestPlumbing:
    def test_midpoint_and_distance(self):
        assert midpoint(Point(0, 0), Point(2, 0)) == Point(1, 0)
        assert distance(Point(0, 0), Point(3, 4)) == 5
        p = Point(1.5, -2.25)
        assert midpoint(p, p) == p

    def test_distance_symmetric(self):
        a, b = Point(0.3, 7), Point(-2, 1e3)
        assert distance(a, b) == distance(b, a)


class TestConvexHull:
    def test_square_with_center(self):
        assert set(convex_hull(SQUARE + [Point(0.5, 0.5)])) == set(SQUARE)

    def test_collinear(self):
        assert set(convex_hull([Point(0, 0), Point(0.4, 0), Point(1, 0)])) == {Point(0, 0), Point(1, 0)}

    def test_single_cluster(self):
        assert convex_hull([Point(2, 2), Point(2, 2 + 1e-12)]) == [Point(2, 2)]

    def test_counter_clockwise(self):
        hull = convex_hull(SQUARE)
        area = sum(a.x * b.y - b.x * a.y for a, b in zip(hull, hull[1:] + hull[:1]))
        assert area > 0

    def test_matches_brute_force_on_random_octets(self):
        rng = random.Random(7)
        for _ in range(200):
            pts = [Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(8)]
            assert set(convex_hull(pts)) == brute_hull_vertices(pts)


class TestSEC:
    def test_equilateral(self):
        c = smallest_enclosing_circle(EQUI)
        assert c.center.x == pytest.approx(0.5)
        assert c.center.y == pytest.approx(math.sqrt(3) / 6)
        assert c.radius == pytest.approx(1 / math.sqrt(3))

    def test_two_points(self):
        c = smallest_enclosing_circle([Point(1, 1), Point(4, 5)])
        assert c.radius == pytest.approx(2.5)
        assert c.center == pytest.approx(Point(2.5, 3))

    def test_single_point(self):
        c = smallest_enclosing_circle([Point(3, 3)])
        assert c.radius == 0 and c.center == Point(3, 3)

    @settings(max_examples=200, deadline=None)
    @given(point_sets)
    def test_matches_pairs_and_triples(self, pts):
        c = smallest_enclosing_circle(pts)
        center, radius = brute_sec(pts)
        assert all(distance(p, c.center) <= c.radius + 1e-9 for p in pts)
        assert c.radius == pytest.approx(radius, rel=1e-7, abs=1e-9)


class TestLDS:
    def test_square_diagonals(self):
        assert set(lds_set(SQUARE)) == {SegmentPair.of(Point(0, 0), Point(1, 1)),
                                        SegmentPair.of(Point(1, 0), Point(0, 1))}

    def test_equilateral_all_edges(self):
        assert len(lds_set(EQUI)) == 3

    def test_collinear(self):
        assert lds_set([Point(0, 0), Point(0.4, 0), Point(1, 0)]) == [SegmentPair.of(Point(0, 0), Point(1, 0))]

    def test_coincident_is_degenerate(self):
        with pytest.raises(DegenerateConfiguration):
            lds_set([Point(1, 1), Point(1, 1)])

    @settings(max_examples=100, deadline=None)
    @given(point_sets)
    def test_matches_brute_force(self, pts):
        assume(_spread(pts))
        got = {frozenset((tuple(s.a), tuple(s.b))) for s in lds_set(pts)}
        assert got == brute_lds(pts)


class TestRegularPolygon:
    def test_square(self):
        assert is_regular_polygon(convex_hull(SQUARE))

    def test_right_triangle(self):
        assert not is_regular_polygon(convex_hull([Point(0, 0), Point(3, 0), Point(0, 4)]))

    def test_perturbed_pentagon(self):
        tol = Tolerance()
        pent = regular(5)
        edge = distance(pent[0], pent[1])
        assert is_regular_polygon(convex_hull(pent))
        pent[2] = Point(pent[2].x + 10 * tol.eps_rel * edge, pent[2].y)
        assert not is_regular_polygon(convex_hull(pent))

    def test_segment_counts_as_regular(self):
        assert is_regular_polygon([Point(0, 0), Point(1, 0)])


class TestSingleEndpoints:
    def test_equilateral_has_none(self):
        assert single_endpoints(EQUI) == []

    def test_square_all(self):
        assert set(single_endpoints(SQUARE)) == set(SQUARE)

    def test_unique_longest_side(self):
        tri = [Point(0, 0), Point(5, 0), Point(2, 1)]
        segs = lds_set(tri)
        counts = {p: sum(s.has_endpoint(p) for s in segs) for p in tri}
        assert set(single_endpoints(tri)) == {p for p, c in counts.items() if c == 1}
        assert set(single_endpoints(tri)) == {Point(0, 0), Point(5, 0)}


class TestBorderPredicates:
    def test_square_edge_on_border(self):
        assert edge_on_border(SQUARE)
        assert edge_on_border(SQUARE + [Point(0.5, 0.5)])

    def test_obtuse_triangle(self):
        tri = [Point(0, 0), Point(4, 0), Point(1, 0.5)]
        sec = smallest_enclosing_circle(tri)
        expected = all(on_circle(p, sec) for p in lds_endpoints(lds_set(tri)))
        assert edge_on_border(tri) == expected

    def test_off_border_endpoint(self):
        # LDS (0,0)-(1.9,0.3) has (1.9,0.3) inside a SEC pinned by a wide triangle
        pts = [Point(-1, 0), Point(0.5, 1.2), Point(0.5, -1.2), Point(1.15, 0)]
        sec = smallest_enclosing_circle(pts)
        ends = lds_endpoints(lds_set(pts))
        assert edge_on_border(pts) == all(on_circle(p, sec) for p in ends)

    def test_clean(self):
        assert is_clean(SQUARE + [Point(0.5, 0.5)])
        assert not is_clean(SQUARE + [Point(0.3, 0.6)])
        assert is_clean(regular(6))

    def test_after_rp(self):
        c = Point(2.0, -1.0)
        pent = regular(5, r=3.0, c=c)
        assert after_rp([c] + pent[:3]) == c
        assert after_rp(SQUARE + [Point(0.5, 0.5)]) == Point(0.5, 0.5)
        assert after_rp([Point(0, 0), Point(4, 0), Point(1, 3)]) is None


def _lds_checks(pts):
    tol = Tolerance()
    segs = lds_set(pts, tol)
    sec = smallest_enclosing_circle(pts, tol)
    diam = 2 * sec.radius
    hull = convex_hull(pts, tol)
    for s in segs:
        assert s.length <= diam * (1 + tol.eps_rel)
        assert s.a in hull and s.b in hull
    for s in segs:
        for t in segs:
            if len({s.a, s.b, t.a, t.b}) == 4:
                # vertex-disjoint LDSs cross
                assert _segments_intersect(s, t)
    if edge_on_border(pts, tol):
        for p in lds_endpoints(segs):
            assert sum(s.has_endpoint(p) for s in segs) <= 2
        for s in segs:
            assert s.length > diam / 2
        if not is_regular_polygon(hull, tol):
            assert single_endpoints(pts, tol)


def _segments_intersect(s, t):
    def cr(o, a, b):
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    d1, d2 = cr(s.a, s.b, t.a), cr(s.a, s.b, t.b)
    d3, d4 = cr(t.a, t.b, s.a), cr(t.a, t.b, s.b)
    eps = 1e-9 * s.length * t.length
    return d1 * d2 <= eps * eps and d3 * d4 <= eps * eps


class TestLdsProperties:
    @settings(max_examples=200, deadline=None)
    @given(point_sets)
    def test_random_sets(self, pts):
        assume(_spread(pts))
        _lds_checks(pts)

    @pytest.mark.parametrize("k", range(3, 9))
    def test_regular_polygons(self, k):
        _lds_checks(regular(k, r=2.0, phase=0.3))

    def test_rectangle_and_kite(self):
        _lds_checks([Point(0, 0), Point(3, 0), Point(3, 1), Point(0, 1)])
        _lds_checks(regular(6)[:5])


class TestCovariance:
    @settings(max_examples=100, deadline=None)
    @given(point_sets, st.floats(0, 2 * math.pi), st.floats(0.1, 10), coord, coord)
    def test_hull_and_lds_transform(self, pts, theta, s, tx, ty):
        assume(_spread(pts))
        c, si = math.cos(theta), math.sin(theta)

        def f(p):
            return Point(s * (c * p.x - si * p.y) + tx, s * (si * p.x + c * p.y) + ty)

        moved = [f(p) for p in pts]
        hull = {f(p) for p in convex_hull(pts)}
        got = set(convex_hull(moved))
        assert len(hull) == len(got)
        for p in got:
            assert min(distance(p, q) for q in hull) < 1e-6
        assert len(lds_set(pts)) == len(lds_set(moved))
        sec0, sec1 = smallest_enclosing_circle(pts), smallest_enclosing_circle(moved)
        assert distance(f(sec0.center), sec1.center) <= 1e-7 * max(1.0, sec1.radius)
        assert sec1.radius == pytest.approx(s * sec0.radius, rel=1e-7)
