"""Compute functions for the gathering algorithms.

Every function here maps a ``Snapshot`` (plus constants carried on it) to a
``ComputeOutput`` in the observer's own frame.  They never see robot ids,
global coordinates or other robots' frames.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .adversary import SchedulerKind
from .geometry import (
    DegenerateConfiguration,
    Point,
    Tolerance,
    after_rp,
    are_collinear,
    close_lengths,
    convex_hull,
    distance,
    distinct_points,
    edge_on_border,
    find_rep,
    is_clean,
    is_regular_polygon,
    lds_set,
    midpoint,
    on_circle,
    on_hull_boundary,
    same_point,
    single_endpoints,
    smallest_enclosing_circle,
    toward,
)
from .model import A, B, C, M, T, ColorId, ComputeOutput, Configuration, LightModel, ObservationPolicy, Snapshot, View

ORIGIN = Point(0.0, 0.0)


class PreconditionViolation(RuntimeError):
    """The snapshot is outside the input shapes the algorithm is defined on."""


def local_tol(points: Sequence[Point]) -> Tolerance:
    # scale-covariant tolerance so decisions agree across frames
    extent = max((math.hypot(p[0], p[1]) for p in points), default=0.0)
    return Tolerance(eps_pos=1e-9 * extent if extent > 0 else 1e-12, eps_rel=1e-9)


def _go(dest: Point, light: Optional[ColorId] = None) -> ComputeOutput:
    return ComputeOutput(light, Point(float(dest[0]), float(dest[1])))


def _stay(light: Optional[ColorId] = None) -> ComputeOutput:
    return ComputeOutput.stay(light)


def _view_at(snap: Snapshot, p: Point) -> frozenset[ColorId]:
    for loc in snap.locations:
        if loc.pos == p:
            return loc.view
    return frozenset()


@dataclass
class Line:
    """Collinear snapshot seen from the observer: LDS endpoints and interior."""

    points: list[Point]
    near: Point
    far: Point
    tol: Tolerance
    at_endpoint: bool

    @property
    def length(self) -> float:
        return distance(self.near, self.far)

    @property
    def mid(self) -> Point:
        return midpoint(self.near, self.far)

    def interior(self) -> list[Point]:
        return [p for p in self.points if p != self.near and p != self.far]

    def symmetric_three(self) -> bool:
        inner = self.interior()
        return (len(self.points) == 3 and len(inner) == 1
                and close_lengths(distance(self.near, inner[0]), distance(inner[0], self.far), self.tol))


def line_view(points: Sequence[Point], tol: Optional[Tolerance] = None) -> Optional[Line]:
    """p_n/p_f for a collinear point set, or None if it is not collinear.

    The observer sits at the origin.  When it is interior and exactly halfway,
    the tie goes to the lexicographically smaller endpoint in its own frame.
    """
    pts = list(points)
    tol = tol or local_tol(pts)
    if len(pts) < 2 or not are_collinear(pts, tol):
        return None
    seg = lds_set(pts, tol)[0]
    if seg.a == ORIGIN or seg.b == ORIGIN:
        near = ORIGIN
        return Line(pts, near, seg.other(near), tol, True)
    da, db = distance(ORIGIN, seg.a), distance(ORIGIN, seg.b)
    if close_lengths(da, db, tol):
        near, far = min(seg.a, seg.b), max(seg.a, seg.b)
    else:
        near, far = (seg.a, seg.b) if da < db else (seg.b, seg.a)
    return Line(pts, near, far, tol, False)


def _require_line(snap: Snapshot) -> Line:
    line = line_view(snap.points)
    if line is None:
        raise PreconditionViolation("snapshot is not collinear")
    return line


# -- full light -------------------------------------------------------------

def full_light_gather(snap: Snapshot) -> ComputeOutput:
    pts = snap.points
    own = snap.own_light
    if own is None:
        raise PreconditionViolation("full light needs the own color")
    if len(pts) == 1:
        return _stay()
    line = _require_line(snap)
    p_a = {loc.pos for loc in snap.locations if A in loc.view}
    p_b = {loc.pos for loc in snap.locations if B in loc.view}
    (p_a if own == A else p_b).add(ORIGIN)
    colors = snap.colors()
    if colors == {A}:
        if len(p_a) == 1:
            return _stay()
        if len(p_a) == 2:
            return _go(line.mid, B)
        return _stay() if line.at_endpoint else _go(line.near)
    if colors == {B}:
        return _stay(A) if line.at_endpoint else _stay()
    if own == A:
        if len(p_a) == 1:
            return _stay()
        ends = {line.near, line.far}
        if p_a == ends and len(p_b) == 1 and same_point(next(iter(p_b)), line.mid, line.tol):
            return _go(line.mid, B)
        return _stay()
    if len(p_a) == 1:
        return _go(next(iter(p_a)))
    return _go(line.mid)


# -- external light ---------------------------------------------------------

def _two_or_symmetric_three(line: Optional[Line]) -> bool:
    return line is not None and (len(line.points) == 2 or line.symmetric_three())


def ext_light_gather_3(snap: Snapshot) -> ComputeOutput:
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    line = line_view(pts)
    if not _two_or_symmetric_three(line):
        raise PreconditionViolation("needs a 2-point or symmetric 3-point configuration")
    assert line is not None
    if len(pts) == 2:
        far = _view_at(snap, line.far)
        if C in far:
            return _go(line.far, C)
        if far == {A}:
            return _go(line.mid, B)
        if far == {B}:
            return _stay(C)
        return _stay()
    p_m = line.interior()[0]
    if not line.at_endpoint:
        return _stay(B)
    far, mid = _view_at(snap, line.far), _view_at(snap, p_m)
    if far == {B} and mid == {B}:
        return _stay(C)
    if far & {A, C} and mid == {B}:
        return _go(p_m, B)
    return _stay()


def ext_light_gather_2(snap: Snapshot) -> ComputeOutput:
    pts = snap.points
    if snap.own_location_occupied_by_others is None:
        raise PreconditionViolation("needs local-awareness")
    if len(pts) == 1:
        return _stay()
    line = line_view(pts)
    if not _two_or_symmetric_three(line):
        raise PreconditionViolation("needs a 2-point or symmetric 3-point configuration")
    assert line is not None
    if len(pts) == 2:
        with_b = [loc.pos for loc in snap.locations if B in loc.view]
        if with_b:
            return _go(with_b[0], B)
        if not snap.own_location_occupied_by_others:
            return _stay()
        return _go(line.mid, B)
    p_m = line.interior()[0]
    if A in _view_at(snap, p_m) and not line.at_endpoint:
        return _stay(B)
    return _go(p_m, B)


def reduce_to_three(snap: Snapshot) -> ComputeOutput:
    """Move to the nearest of p_n, the midpoint and p_f; quarter-point ties go to the midpoint."""
    line = _require_line(snap)
    if line.at_endpoint:
        return _stay()
    d_end = distance(ORIGIN, line.near)
    d_mid = distance(ORIGIN, line.mid)
    if d_mid <= d_end or close_lengths(d_mid, d_end, line.tol):
        return _go(line.mid)
    return _go(line.near)


# -- CENT / ROUND-ROBIN -----------------------------------------------------

def cent_ext_light_gather(snap: Snapshot) -> ComputeOutput:
    targets = [loc.pos for loc in snap.locations if T in loc.view]
    if not targets:
        return _stay(T)
    if len(targets) == 1:
        return _go(targets[0], M)
    return _stay(M)


def cent_ext_light_gather_arbitrary(snap: Snapshot) -> ComputeOutput:
    """Variant for arbitrary view with rigid moves: followers adopt T on the way."""
    targets = [loc.pos for loc in snap.locations if T in loc.view]
    if not targets:
        return _stay(T)
    if len(targets) == 1:
        return _go(targets[0], T)
    return _stay(M)


def rr_int_light_gather(snap: Snapshot) -> ComputeOutput:
    own = snap.own_light
    if own is None:
        raise PreconditionViolation("internal light needs the own color")
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    line = _require_line(snap)
    if own == A:
        if _two_or_symmetric_three(line):
            return _go(line.mid, B)
        return _stay() if line.at_endpoint else _go(line.near)
    if len(pts) == 2:
        return _go(line.far)
    return _go(line.mid)


# -- internal light, distance-preserving family -----------------------------

def _need(value: Optional[float], name: str) -> float:
    if value is None:
        raise PreconditionViolation(f"algorithm needs {name}")
    return value


def _ge(x: float, y: float, tol: Tolerance) -> bool:
    return x >= y or close_lengths(x, y, tol)


def _lt(x: float, y: float, tol: Tolerance) -> bool:
    return not _ge(x, y, tol)


def int_light_gather(snap: Snapshot) -> ComputeOutput:
    D = _need(snap.D, "D")
    own = snap.own_light
    if own is None:
        raise PreconditionViolation("internal light needs the own color")
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    line = _require_line(snap)
    d, tol = line.length, line.tol
    if _ge(d, D / 4, tol) and _lt(d, D / 2, tol):
        if _two_or_symmetric_three(line) and own == A:
            return _go(line.mid, B)
        return _stay()
    if own == A:
        return _go(line.far)
    return _stay()


def _ordered(line: Line) -> list[Point]:
    """Points along the segment from near to far."""
    return sorted(line.points, key=lambda p: distance(line.near, p))


def is_a3p(points: Sequence[Point], D: float, tol: Optional[Tolerance] = None) -> bool:
    line = line_view(points, tol)
    if line is None or len(line.points) != 3:
        return False
    p, m, q = _ordered(line)
    a, b = distance(p, m), distance(m, q)
    return (not close_lengths(a, b, line.tol) and _ge(D / 2, min(a, b), line.tol)
            and _lt(D / 4, max(a, b), line.tol))


def is_a4p(points: Sequence[Point], D: float, tol: Optional[Tolerance] = None) -> bool:
    line = line_view(points, tol)
    if line is None or len(line.points) != 4:
        return False
    p, m1, m2, q = _ordered(line)
    a, mid, b = distance(p, m1), distance(m1, m2), distance(m2, q)
    t = line.tol
    return (close_lengths(a, b, t) and not close_lengths(a, mid, t)
            and _ge(D / 2, a, t) and _ge(D / 2, b, t) and _ge(mid, D / 4, t))


def reduce_distance_lds(snap: Snapshot) -> ComputeOutput:
    D = _need(snap.D, "D")
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    line = _require_line(snap)
    d, tol = line.length, line.tol
    if len(pts) == 2:
        if not _ge(d, D / 2, tol):
            return _stay()
        if d > 1.5 * D and not close_lengths(d, 1.5 * D, tol):
            step = D / 2
        elif _ge(d, 9 * D / 8, tol):
            step = D / 12
        else:
            step = d / 2 - 3 * D / 16
        return _go(toward(ORIGIN, line.far, step))
    # the A3P/A4P shapes are recognised whatever the current LDS length
    if is_a3p(pts, D, tol):
        p_m = line.interior()[0]
        if line.at_endpoint and distance(ORIGIN, p_m) < distance(p_m, line.far):
            return _go(p_m)
        return _stay()
    if is_a4p(pts, D, tol):
        if line.at_endpoint:
            return _go(_ordered(line)[1])
        return _stay()
    return _stay()


def _angle(c: Point, p: Point) -> float:
    return math.atan2(p[1] - c[1], p[0] - c[0])


def _on_circle_at(c: Point, r: float, theta: float) -> Point:
    return Point(c[0] + r * math.cos(theta), c[1] + r * math.sin(theta))


def _arc_step(center: Point, radius: float, start: Point, target: Point, sweep: float,
              delta: float) -> Point:
    """Next chord stop from ``start`` toward ``target`` along the circle.

    ``sweep`` is the signed angle still to travel.  Stops are at most delta
    apart and lie on the circle; the target itself is returned once in reach.
    """
    if distance(start, target) <= delta:
        return target
    step = 2 * math.asin(min(1.0, delta / (2 * radius)))
    return _on_circle_at(center, radius, _angle(center, start) + math.copysign(step, sweep))


def reduce_num_lds(snap: Snapshot) -> ComputeOutput:
    delta = _need(snap.delta, "delta")
    pts = snap.points
    tol = local_tol(pts)
    sec = smallest_enclosing_circle(pts, tol)
    ring = [p for p in pts if on_circle(p, sec, tol)]
    if len(ring) < 2 or not any(p == ORIGIN for p in ring):
        return _stay()
    ring.sort(key=lambda p: _angle(sec.center, p))
    g = len(ring)
    gaps = [distance(ring[j], ring[(j + 1) % g]) for j in range(g)]
    shortest = min(gaps)
    for j, p in enumerate(ring):
        if p == ORIGIN and close_lengths(gaps[j], shortest, tol):
            q = ring[(j + 1) % g]
            sweep = (_angle(sec.center, q) - _angle(sec.center, p)) % (2 * math.pi)
            return _go(_arc_step(sec.center, sec.radius, p, q, sweep, delta))
    return _stay()


def make_diameter(snap: Snapshot) -> ComputeOutput:
    delta = _need(snap.delta, "delta")
    pts = snap.points
    tol = local_tol(pts)
    if not any(p == ORIGIN for p in single_endpoints(pts, tol)):
        return _stay()
    seg = next(s for s in lds_set(pts, tol) if s.has_endpoint(ORIGIN))
    q = seg.other(ORIGIN)
    sec = smallest_enclosing_circle(pts, tol)
    c = sec.center
    target = Point(2 * c[0] - q[0], 2 * c[1] - q[1])
    # travel the arc that does not contain q
    alpha = (_angle(c, ORIGIN) - _angle(c, q) + math.pi) % (2 * math.pi) - math.pi
    sweep = math.copysign(math.pi - abs(alpha), alpha)
    return _go(_arc_step(c, sec.radius, ORIGIN, target, sweep, delta))


def make_edge_on_border(snap: Snapshot) -> ComputeOutput:
    pts = snap.points
    tol = local_tol(pts)
    sec = smallest_enclosing_circle(pts, tol)
    if on_circle(ORIGIN, sec, tol):
        return _stay()
    for seg in lds_set(pts, tol):
        if seg.has_endpoint(ORIGIN) and on_circle(seg.other(ORIGIN), sec, tol):
            q = seg.other(ORIGIN)
            length = distance(ORIGIN, q)
            ux, uy = -q[0] / length, -q[1] / length
            cx, cy = -sec.center[0], -sec.center[1]
            b = ux * cx + uy * cy
            disc = b * b - (cx * cx + cy * cy - sec.radius ** 2)
            t = -b + math.sqrt(max(0.0, disc))
            return _go(Point(t * ux, t * uy))
    return _stay()


def _is_vertex(p: Point, hull: Sequence[Point]) -> bool:
    return any(p == v for v in hull)


def elect_lds_preserving_distance(snap: Snapshot) -> ComputeOutput:
    D = _need(snap.D, "D")
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    tol = local_tol(pts)
    segs = lds_set(pts, tol)
    if len(segs) == 1:
        line = segs[0]
        if line.has_endpoint(ORIGIN):
            return _stay()
        da, db = distance(ORIGIN, line.a), distance(ORIGIN, line.b)
        if close_lengths(da, db, tol):
            return _go(min(line.a, line.b))
        return _go(line.a if da < db else line.b)
    hull = convex_hull(pts, tol)
    sec = smallest_enclosing_circle(pts, tol)
    ctr, diam = sec.center, 2 * sec.radius
    me_vertex = _is_vertex(ORIGIN, hull)
    if is_regular_polygon(hull, tol):
        if not is_clean(pts, tol):
            return _stay() if me_vertex else _go(ctr)
        if _ge(D, diam, tol):
            return _go(ctr)
        if me_vertex:
            return _go(toward(ctr, ORIGIN, D / 2))
        return _stay()
    p = after_rp(pts, tol)
    if p is not None and _ge(D, diam, tol):
        return _go(p)
    endpoints = {e for s in segs for e in (s.a, s.b)}
    if edge_on_border(pts, tol):
        if any(close_lengths(s.length, diam, tol) for s in segs):
            if all(q in endpoints or same_point(q, ctr, tol) for q in pts):
                return reduce_num_lds(snap)
            if ORIGIN not in endpoints:
                return _go(ctr)
            return _stay()
        return make_diameter(snap)
    return make_edge_on_border(snap)


# -- hull contraction election ----------------------------------------------

def _rotationally_symmetric(hull: Sequence[Point], tol: Tolerance) -> Optional[Point]:
    """Centre of rotational symmetry of the hull vertices, if they have one."""
    m = len(hull)
    if m < 2:
        return None
    g = Point(sum(p[0] for p in hull) / m, sum(p[1] for p in hull) / m)
    size = max(distance(g, p) for p in hull)
    slack = Tolerance(eps_pos=max(tol.eps_pos, 1e-9 * size), eps_rel=tol.eps_rel)
    for k in range(2, m + 1):
        if m % k:
            continue
        c, s = math.cos(2 * math.pi / k), math.sin(2 * math.pi / k)
        rotated = [Point(g[0] + c * (p[0] - g[0]) - s * (p[1] - g[1]),
                         g[1] + s * (p[0] - g[0]) + c * (p[1] - g[1])) for p in hull]
        if all(find_rep(r, hull, slack) is not None for r in rotated):
            return g
    return None


def _elect(snap: Snapshot, chirality: bool) -> ComputeOutput:
    pts = snap.points
    if len(pts) == 1:
        return _stay()
    tol = local_tol(pts)
    hull = convex_hull(pts, tol)
    if len(hull) <= 2:
        return _stay()
    center = _rotationally_symmetric(hull, tol)
    me_vertex = _is_vertex(ORIGIN, hull)
    if center is not None:
        contractible = all(_is_vertex(p, hull) or same_point(p, center, tol) for p in pts)
        if contractible or not me_vertex:
            return _go(center)
        return _stay()
    inside = [p for p in pts if not on_hull_boundary(p, hull, tol)]
    if inside:
        if ORIGIN in inside:
            return _go(min(hull, key=lambda v: (distance(ORIGIN, v), v)))
        return _stay()
    m = len(hull)
    edges = [distance(hull[j], hull[(j + 1) % m]) for j in range(m)]
    shortest = min(edges)
    short = [j for j in range(m) if close_lengths(edges[j], shortest, tol)]
    if not chirality:
        if not me_vertex:
            return _stay()
        j = hull.index(ORIGIN)
        options = [hull[(j + 1) % m] for jj in short if jj == j]
        options += [hull[j - 1] for jj in short if (jj + 1) % m == j]
        return _go(min(options)) if options else _stay()
    for j in short:
        a, b = hull[j], hull[(j + 1) % m]
        if a == ORIGIN or (not me_vertex and on_hull_boundary(ORIGIN, [a, b], tol)):
            return _go(b)
    return _stay()


def elect_one_lds(snap: Snapshot) -> ComputeOutput:
    """Hull contraction toward a collinear configuration; needs chirality under SSYNC."""
    return _elect(snap, chirality=True)


def elect_one_lds_cent(snap: Snapshot) -> ComputeOutput:
    """Single-active-robot variant that works without a shared handedness."""
    return _elect(snap, chirality=False)


# -- phase dispatch ---------------------------------------------------------

def pipeline_phase(points: Sequence[Point], D: float, tol: Optional[Tolerance] = None) -> int:
    """Which of the three internal-light routines (4, 5 or 6) a shape belongs to; 0 if gathered."""
    tol = tol or local_tol(points)
    pts = distinct_points(list(points), tol)
    if len(pts) <= 1:
        return 0
    line = line_view(pts, tol)
    if line is not None:
        d = line.length
        if len(pts) == 2:
            return 4 if _lt(d, D / 2, tol) else 5
        if line.symmetric_three() and _ge(d, D / 4, tol) and _lt(d, D / 2, tol):
            return 4
        if is_a3p(pts, D, tol) or is_a4p(pts, D, tol):
            return 5
    return 6


def internal_pipeline_dispatch(snap: Snapshot) -> ComputeOutput:
    D = _need(snap.D, "D")
    phase = pipeline_phase(snap.points, D)
    if phase == 0:
        return _stay()
    if phase == 4:
        return int_light_gather(snap)
    if phase == 5:
        return reduce_distance_lds(snap)
    return elect_lds_preserving_distance(snap)


def _collinear(snap: Snapshot) -> bool:
    return len(snap.points) == 1 or line_view(snap.points) is not None


def with_election(gather: Callable[[Snapshot], ComputeOutput],
                  elect: Callable[[Snapshot], ComputeOutput] = elect_one_lds,
                  prepare: Optional[Callable[[Snapshot], ComputeOutput]] = None,
                  ready: Optional[Callable[[Snapshot], bool]] = None) -> Callable[[Snapshot], ComputeOutput]:
    """Run ``elect`` until the snapshot is collinear, then ``prepare`` until ``ready``, then ``gather``."""

    def compute(snap: Snapshot) -> ComputeOutput:
        if not _collinear(snap):
            return elect(snap)
        if prepare is not None and ready is not None and not ready(snap):
            return prepare(snap)
        return gather(snap)

    compute.__name__ = f"{gather.__name__}_from_any"
    return compute


def _three_ready(snap: Snapshot) -> bool:
    return len(snap.points) == 1 or _two_or_symmetric_three(line_view(snap.points))


# -- registry ---------------------------------------------------------------

SSYNC_FAMILY = (SchedulerKind.FSYNC, SchedulerKind.SSYNC, SchedulerKind.CENT,
                SchedulerKind.KBOUNDED, SchedulerKind.ROUND_ROBIN)
CENT_FAMILY = (SchedulerKind.CENT, SchedulerKind.ROUND_ROBIN)


@dataclass(frozen=True)
class AlgorithmSpec:
    name: str
    palette: tuple[str, ...]
    policy: ObservationPolicy
    compute: Callable[[Snapshot], ComputeOutput]
    requires_rigid: bool = False
    needs_delta: bool = False
    needs_D: bool = False
    schedulers: tuple[SchedulerKind, ...] = SSYNC_FAMILY
    initial_light: Optional[ColorId] = A
    requires_distinct: bool = False
    min_robots: int = 1
    label_scheme: Optional[str] = None
    notes: str = ""

    @property
    def palette_size(self) -> int:
        return len(self.palette)


def _spec(*args, **kw) -> AlgorithmSpec:
    return AlgorithmSpec(*args, **kw)


_FULL = ObservationPolicy(LightModel.FULL, View.SET, local_aware=False, chirality=True)
_EXT = ObservationPolicy(LightModel.EXTERNAL, View.SET, local_aware=False, chirality=True)
_EXT_AWARE = ObservationPolicy(LightModel.EXTERNAL, View.SET, local_aware=True, chirality=True)
_INT = ObservationPolicy(LightModel.INTERNAL, View.SET, local_aware=False, chirality=True)
_INT_FREE = ObservationPolicy(LightModel.INTERNAL, View.SET, local_aware=False, chirality=False)
_NONE = ObservationPolicy(LightModel.NONE, View.SET, local_aware=False, chirality=True)
_NONE_FREE = ObservationPolicy(LightModel.NONE, View.SET, local_aware=False, chirality=False)
_EXT_FREE = ObservationPolicy(LightModel.EXTERNAL, View.SET, local_aware=False, chirality=False)
_EXT_ARB = ObservationPolicy(LightModel.EXTERNAL, View.ARBITRARY, local_aware=False, chirality=False)

REGISTRY: dict[str, AlgorithmSpec] = {s.name: s for s in [
    _spec("full-light", ("A", "B"), _FULL, with_election(full_light_gather), label_scheme="full"),
    _spec("ext-light-3", ("A", "B", "C"), _EXT,
          with_election(ext_light_gather_3, prepare=reduce_to_three, ready=_three_ready),
          requires_rigid=True, label_scheme="ext3"),
    _spec("ext-light-2", ("A", "B"), _EXT_AWARE,
          with_election(ext_light_gather_2, prepare=reduce_to_three, ready=_three_ready),
          requires_rigid=True, min_robots=3),
    _spec("int-light", ("A", "B"), _INT, internal_pipeline_dispatch,
          needs_delta=True, needs_D=True),
    _spec("int-light-gather", ("A", "B"), _INT, int_light_gather, needs_D=True),
    _spec("reduce-distance-lds", ("A",), _NONE, reduce_distance_lds, needs_D=True, initial_light=None),
    _spec("elect-lds-preserving-distance", ("A",), _NONE, elect_lds_preserving_distance,
          needs_delta=True, needs_D=True, initial_light=None),
    _spec("elect-one-lds", ("A",), _NONE, elect_one_lds, initial_light=None),
    _spec("elect-one-lds-cent", ("A",), _NONE_FREE, elect_one_lds_cent, schedulers=CENT_FAMILY,
          initial_light=None),
    _spec("cent-ext-light", ("T", "M"), _EXT_FREE, cent_ext_light_gather, schedulers=CENT_FAMILY,
          initial_light=None),
    _spec("cent-ext-light-arbitrary", ("T", "M"), _EXT_ARB, cent_ext_light_gather_arbitrary,
          requires_rigid=True, schedulers=CENT_FAMILY, initial_light=None, requires_distinct=True),
    _spec("rr-int-light", ("A", "B"), _INT_FREE, with_election(rr_int_light_gather, elect_one_lds_cent),
          requires_rigid=True, schedulers=(SchedulerKind.ROUND_ROBIN,)),
]}


def get_algorithm(name: str) -> AlgorithmSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; known: {sorted(REGISTRY)}") from None
