"""Planar primitives and the configuration predicates used by the gathering
algorithms: convex hull, smallest enclosing circle, longest-distance segments
and the border/center predicates built on them.

Everything here is a pure function over tuples of floats.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float


@dataclass(frozen=True)
class SegmentPair:
    """Unordered segment; endpoints are stored in lexicographic order."""

    a: Point
    b: Point

    @classmethod
    def of(cls, p: Point, q: Point) -> "SegmentPair":
        return cls(p, q) if p <= q else cls(q, p)

    @property
    def length(self) -> float:
        return distance(self.a, self.b)

    def has_endpoint(self, p: Point) -> bool:
        return p == self.a or p == self.b

    def other(self, p: Point) -> Point:
        return self.b if p == self.a else self.a


@dataclass(frozen=True)
class Tolerance:
    eps_pos: float = 1e-9
    eps_rel: float = 1e-9


DEFAULT_TOL = Tolerance()


class DegenerateConfiguration(ValueError):
    """All points coincide, so there is no longest-distance segment."""


def distance(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def midpoint(a: Point, b: Point) -> Point:
    return Point((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)


def cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def toward(p: Point, q: Point, length: float) -> Point:
    """The point at distance ``length`` from p along the ray p->q."""
    d = distance(p, q)
    if d == 0.0:
        return Point(p[0], p[1])
    t = length / d
    return Point(p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def same_point(a: Point, b: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
    return distance(a, b) <= tol.eps_pos


def close_lengths(a: float, b: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(a - b) <= tol.eps_rel * max(abs(a), abs(b)) + tol.eps_pos * 1e-3


def distinct_points(points: Iterable[Point], tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Greedy eps_pos clustering; the first point of each cluster represents it."""
    reps: list[Point] = []
    for p in points:
        p = Point(float(p[0]), float(p[1]))
        if not any(same_point(p, r, tol) for r in reps):
            reps.append(p)
    return reps


def find_rep(p: Point, reps: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Optional[Point]:
    for r in reps:
        if same_point(p, r, tol):
            return r
    return None


def _left_turn(o: Point, a: Point, b: Point, tol: Tolerance) -> bool:
    # strictly convex turn; near-collinear triples count as straight
    c = cross(o, a, b)
    return c > tol.eps_rel * distance(o, a) * distance(o, b)


def convex_hull(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Counter-clockwise hull vertices, collinear and near-flat vertices dropped.

    Collinear input gives its two extreme points; a single cluster gives one.
    """
    pts = sorted(distinct_points(points, tol))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # exact chain first, then prune vertices whose turn is within tolerance
    changed = True
    while changed and len(hull) > 2:
        changed = False
        for i in range(len(hull)):
            a, o, b = hull[i - 1], hull[i], hull[(i + 1) % len(hull)]
            if not _left_turn(a, o, b, tol):
                del hull[i]
                changed = True
                break
    if len(hull) == 2:
        # keep the farthest pair when pruning collapsed the hull to a segment
        a, b = max(((p, q) for i, p in enumerate(pts) for q in pts[i + 1:]),
                   key=lambda pq: distance(*pq))
        hull = sorted([a, b])
    return hull


def on_hull_boundary(p: Point, hull: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    """True if p is a hull vertex or lies on a hull edge."""
    if any(same_point(p, v, tol) for v in hull):
        return True
    k = len(hull)
    if k < 2:
        return False
    for i in range(k if k > 2 else 1):
        a, b = hull[i], hull[(i + 1) % k]
        ab = distance(a, b)
        if ab == 0.0:
            continue
        if abs(cross(a, b, p)) / ab <= tol.eps_pos + tol.eps_rel * ab:
            t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (ab * ab)
            if -tol.eps_rel <= t <= 1 + tol.eps_rel:
                return True
    return False


def are_collinear(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    return len(convex_hull(points, tol)) <= 2


# -- smallest enclosing circle ----------------------------------------------

def _in_circle(p: Point, c: Optional[Circle], tol: Tolerance) -> bool:
    if c is None:
        return False
    return distance(p, c.center) <= c.radius * (1 + 1e-12) + tol.eps_pos * 1e-3


def _diameter_circle(a: Point, b: Point) -> Circle:
    c = midpoint(a, b)
    return Circle(c, max(distance(c, a), distance(c, b)))


def circumcircle(a: Point, b: Point, c: Point) -> Optional[Circle]:
    """Circle through three points, or None if they are collinear."""
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
    center = Point(x, y)
    return Circle(center, max(distance(center, a), distance(center, b), distance(center, c)))


def _circle_two(points: Sequence[Point], p: Point, q: Point, tol: Tolerance) -> Circle:
    circ = _diameter_circle(p, q)
    left: Optional[Circle] = None
    right: Optional[Circle] = None
    for r in points:
        if _in_circle(r, circ, tol):
            continue
        side = cross(p, q, r)
        c = circumcircle(p, q, r)
        if c is None:
            continue
        off = cross(p, q, c.center)
        if side > 0 and (left is None or off > cross(p, q, left.center)):
            left = c
        elif side < 0 and (right is None or off < cross(p, q, right.center)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _circle_one(points: Sequence[Point], p: Point, tol: Tolerance) -> Circle:
    c = Circle(p, 0.0)
    for i, q in enumerate(points):
        if not _in_circle(q, c, tol):
            if c.radius == 0.0:
                c = _diameter_circle(p, q)
            else:
                c = _circle_two(points[: i + 1], p, q, tol)
    return c


def smallest_enclosing_circle(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Circle:
    """Randomized incremental minimal enclosing circle.

    The shuffle uses a fixed seed so results are reproducible.
    """
    pts = distinct_points(points, tol)
    if not pts:
        raise ValueError("smallest_enclosing_circle needs at least one point")
    random.Random(0x5EC).shuffle(pts)
    c: Optional[Circle] = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(p, c, tol):
            c = _circle_one(pts[: i + 1], p, tol)
    assert c is not None
    return c


def on_circle(p: Point, c: Circle, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(distance(p, c.center) - c.radius) <= tol.eps_rel * c.radius + tol.eps_pos


# -- longest distance segments ---------------------------------------------

def lds_set(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> list[SegmentPair]:
    """All pairs realizing the maximum pairwise distance (within eps_rel)."""
    pts = distinct_points(points, tol)
    if len(pts) < 2:
        raise DegenerateConfiguration("all points coincide")
    pairs = [(distance(p, q), p, q) for i, p in enumerate(pts) for q in pts[i + 1:]]
    d_max = max(d for d, _, _ in pairs)
    segs = {SegmentPair.of(p, q) for d, p, q in pairs if d >= d_max * (1 - tol.eps_rel)}
    return sorted(segs, key=lambda s: (s.a, s.b))


def lds_endpoints(segs: Iterable[SegmentPair]) -> list[Point]:
    out: list[Point] = []
    for s in segs:
        for p in (s.a, s.b):
            if p not in out:
                out.append(p)
    return out


def lds_degree(p: Point, segs: Iterable[SegmentPair]) -> int:
    return sum(1 for s in segs if s.has_endpoint(p))


def is_regular_polygon(hull: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Equal edges and equal interior angles; a 2-vertex hull counts as regular."""
    k = len(hull)
    if k == 2:
        return True
    if k < 2:
        return False
    edges = [distance(hull[i], hull[(i + 1) % k]) for i in range(k)]
    if not all(close_lengths(e, edges[0], tol) for e in edges):
        return False
    angles = []
    for i in range(k):
        a, o, b = hull[i - 1], hull[i], hull[(i + 1) % k]
        v1 = (a[0] - o[0], a[1] - o[1])
        v2 = (b[0] - o[0], b[1] - o[1])
        angles.append(math.atan2(abs(v1[0] * v2[1] - v1[1] * v2[0]), v1[0] * v2[0] + v1[1] * v2[1]))
    return all(abs(a - angles[0]) <= tol.eps_rel * math.pi for a in angles)


def single_endpoints(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    segs = lds_set(points, tol)
    return [p for p in lds_endpoints(segs) if lds_degree(p, segs) == 1]


def edge_on_border(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    sec = smallest_enclosing_circle(points, tol)
    return all(on_circle(p, sec, tol) for p in lds_endpoints(lds_set(points, tol)))


def is_clean(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    sec = smallest_enclosing_circle(points, tol)
    slack = tol.eps_pos + tol.eps_rel * sec.radius
    return all(distance(p, sec.center) <= slack or on_circle(p, sec, tol)
               for p in distinct_points(points, tol))


def after_rp(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Optional[Point]:
    """The unique occupied point p such that every other point lies on one
    circle centred at p, or None if there is no such point or several."""
    pts = distinct_points(points, tol)
    if len(pts) < 2:
        return None
    found = []
    for p in pts:
        radii = [distance(p, q) for q in pts if q != p]
        if all(close_lengths(r, radii[0], tol) for r in radii):
            found.append(p)
    return found[0] if len(found) == 1 else None
