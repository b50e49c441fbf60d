"""Seeded geometry self-test: fast routines against brute force, plus structural properties.

Shipped with the package so the CLI can check an installation; the unit
tests keep their own separate oracles.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .geometry import (
    Circle,
    Point,
    Tolerance,
    convex_hull,
    distinct_points,
    edge_on_border,
    is_regular_polygon,
    lds_set,
    on_circle,
    single_endpoints,
    smallest_enclosing_circle,
)


def oracle_sec(pts: Sequence[Point]) -> tuple[Point, float]:
    """Smallest enclosing circle among every pair-diameter and triple circumcircle."""
    if len(pts) == 1:
        return pts[0], 0.0
    cands = [(Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), math.dist(a, b) / 2)
             for a, b in itertools.combinations(pts, 2)]
    for a, b, c in itertools.combinations(pts, 3):
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-12:
            continue
        sa, sb, sc = a[0] ** 2 + a[1] ** 2, b[0] ** 2 + b[1] ** 2, c[0] ** 2 + c[1] ** 2
        ux = (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d
        uy = (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d
        cands.append((Point(ux, uy), math.dist((ux, uy), a)))
    fits = [(r, c) for c, r in cands if all(math.dist(c, p) <= r * (1 + 1e-10) + 1e-12 for p in pts)]
    r, c = min(fits)
    return c, r


def oracle_hull(pts: Sequence[Point]) -> set[Point]:
    """Extreme points: a point is a vertex unless some other pair or triple covers it."""
    def cr(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        on_seg = any(cr(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                     and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
                     for a, b in itertools.combinations(others, 2))
        in_tri = any(cr(a, b, c) != 0 and not (
            min(cr(a, b, p), cr(b, c, p), cr(c, a, p)) < 0 < max(cr(a, b, p), cr(b, c, p), cr(c, a, p)))
            for a, b, c in itertools.combinations(others, 3))
        if not (on_seg or in_tri):
            out.add(p)
    return out


def _cross_or_touch(s, t) -> bool:
    def cr(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    eps = 1e-9 * s.length * t.length
    return (cr(s.a, s.b, t.a) * cr(s.a, s.b, t.b) <= eps * eps
            and cr(t.a, t.b, s.a) * cr(t.a, t.b, s.b) <= eps * eps)


@dataclass
class SelftestReport:
    cases: int = 0
    degenerate: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


SecFn = Callable[[Sequence[Point], Tolerance], Circle]


def check_instance(pts: Sequence[Point], sec_fn: SecFn = smallest_enclosing_circle,
                   tol: Tolerance = Tolerance()) -> list[str]:
    """Problems found on one point set; empty when everything agrees."""
    pts = distinct_points(pts, tol)
    if len(pts) < 2:
        return []
    errs = []
    sec = sec_fn(pts, tol)
    c, r = oracle_sec(pts)
    if math.dist(sec.center, c) > 1e-7 or abs(sec.radius - r) > 1e-7 * max(r, 1e-300):
        errs.append(f"SEC {sec} vs oracle ({c}, {r})")
    if any(math.dist(sec.center, p) > sec.radius + tol.eps_pos for p in pts):
        errs.append("SEC does not enclose every point")
    hull = convex_hull(pts, tol)
    if set(hull) != oracle_hull(pts):
        errs.append("hull vertices differ from extreme points")
    segs = lds_set(pts, tol)
    diam = 2 * r
    for s in segs:
        if s.length > diam * (1 + tol.eps_rel):
            errs.append("LDS longer than the SEC diameter")
        if s.a not in hull or s.b not in hull:
            errs.append("LDS endpoint not a hull vertex")
    for s, t in itertools.combinations(segs, 2):
        if len({s.a, s.b, t.a, t.b}) == 4 and not _cross_or_touch(s, t):
            errs.append("vertex-disjoint LDSs do not cross")
    if edge_on_border(pts, tol):
        ends = {e for s in segs for e in (s.a, s.b)}
        if any(sum(s.has_endpoint(p) for s in segs) > 2 for p in ends):
            errs.append("endpoint with more than two LDSs on the circle")
        if any(not s.length > diam / 2 for s in segs):
            errs.append("LDS on the circle not longer than the radius")
        if not is_regular_polygon(hull, tol) and not single_endpoints(pts, tol):
            errs.append("non-regular hull without a single endpoint")
    return errs


def random_cases(count: int, seed: int = 0, n_range: tuple[int, int] = (2, 12),
                 box: float = 100.0) -> list[list[Point]]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(*n_range)
        if k % 10 == 9:
            # cocircular sets exercise the tie-heavy paths
            phase = rng.uniform(0, 2 * math.pi)
            step = 2 * math.pi / n
            out.append([Point(50 * math.cos(phase + j * step), 50 * math.sin(phase + j * step))
                        for j in range(n)])
        else:
            out.append([Point(rng.uniform(-box, box), rng.uniform(-box, box)) for _ in range(n)])
    return out


def run_selftest(count: int = 1000, seed: int = 0, sec_fn: Optional[SecFn] = None,
                 n_range: tuple[int, int] = (2, 12)) -> SelftestReport:
    report = SelftestReport()
    for i, pts in enumerate(random_cases(count, seed, n_range)):
        report.cases += 1
        if len(distinct_points(pts)) < 2:
            report.degenerate += 1
            continue
        for msg in check_instance(pts, sec_fn or smallest_enclosing_circle):
            report.failures.append(f"case {i}: {msg}")
    return report


def shrunk_sec(pts: Sequence[Point], tol: Tolerance) -> Circle:
    """Deliberately wrong circle (radius short by 10 eps) for fault-injection runs."""
    sec = smallest_enclosing_circle(pts, tol)
    return Circle(sec.center, sec.radius - 10 * tol.eps_pos)
