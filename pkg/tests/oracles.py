"""Brute-force reference implementations used only by the tests."""
import itertools
import math


def _circ(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-12:
        return None
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    return (ux, uy), math.dist((ux, uy), a)


def brute_sec(points):
    """Smallest circle among all pair-diameter and triple circumcircles that
    encloses every point."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    if len(pts) == 1:
        return pts[0], 0.0
    cands = []
    for a, b in itertools.combinations(pts, 2):
        cands.append((((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), math.dist(a, b) / 2))
    for a, b, c in itertools.combinations(pts, 3):
        r = _circ(a, b, c)
        if r is not None:
            cands.append(r)
    best = None
    for center, radius in cands:
        if all(math.dist(center, p) <= radius * (1 + 1e-10) + 1e-12 for p in pts):
            if best is None or radius < best[1]:
                best = (center, radius)
    return best


def brute_hull_vertices(points):
    """p is a vertex iff no triangle/segment of other points contains it,
    checked by exhaustive half-plane tests."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    if len(pts) <= 1:
        return set(pts)

    def cr(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def in_seg(p, a, b):
        return cr(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])

    def in_tri(p, a, b, c):
        d1, d2, d3 = cr(a, b, p), cr(b, c, p), cr(c, a, p)
        neg = d1 < 0 or d2 < 0 or d3 < 0
        pos = d1 > 0 or d2 > 0 or d3 > 0
        return not (neg and pos)

    verts = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = any(in_seg(p, a, b) for a, b in itertools.combinations(others, 2))
        if not covered:
            covered = any(cr(a, b, c) != 0 and in_tri(p, a, b, c)
                          for a, b, c in itertools.combinations(others, 3))
        if not covered:
            verts.add(p)
    return verts


def brute_lds(points, rel=1e-9):
    pts = list(dict.fromkeys(tuple(p) for p in points))
    best = max(math.dist(a, b) for a, b in itertools.combinations(pts, 2))
    return {frozenset((a, b)) for a, b in itertools.combinations(pts, 2)
            if math.dist(a, b) >= best * (1 - rel)}
