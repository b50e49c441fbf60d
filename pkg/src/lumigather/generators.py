"""Seeded initial-configuration generators.

Each generator rejects and resamples until its shape holds, giving up after
``cap`` attempts so an impossible request fails loudly.
"""
from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .geometry import Point, are_collinear, distance, distinct_points, lds_set
from .model import A, Configuration

RESAMPLE_CAP = 10_000


class GeneratorExhausted(RuntimeError):
    pass


def _retry(make, ok, cap: int):
    for _ in range(cap):
        cfg = make()
        if ok(cfg):
            return cfg
    raise GeneratorExhausted(f"no valid configuration after {cap} attempts")


def on_lds(n: int, rng: random.Random, length: float, light: int = A, stack: float = 0.2,
           cap: int = RESAMPLE_CAP) -> Configuration:
    """n robots on one segment of the given length; both ends occupied; some robots share spots."""
    if n < 2:
        raise ValueError("on_lds needs at least two robots")

    def make() -> Configuration:
        theta = rng.uniform(0, 2 * math.pi)
        ox, oy = rng.uniform(-50, 50), rng.uniform(-50, 50)
        ux, uy = math.cos(theta), math.sin(theta)
        ts = [0.0, 1.0]
        for _ in range(n - 2):
            ts.append(rng.choice(ts) if rng.random() < stack else rng.random())
        rng.shuffle(ts)
        pts = [(ox + t * length * ux, oy + t * length * uy) for t in ts]
        return Configuration.build(pts, [light] * n)

    return _retry(make, is_on_lds, cap)


def is_on_lds(cfg: Configuration) -> bool:
    pts = distinct_points(cfg.positions)
    return len(pts) >= 2 and are_collinear(pts) and len(lds_set(pts)) == 1


def d_distant(n: int, rng: random.Random, D: float, spread: Optional[float] = None,
              stack: float = 0.15, cap: int = RESAMPLE_CAP) -> Configuration:
    """Random points whose distinct locations are pairwise at least D apart."""
    spread = spread if spread is not None else D * max(2.0, 1.5 * math.sqrt(n))

    def make() -> Configuration:
        pts: list[tuple[float, float]] = []
        for _ in range(n):
            if pts and rng.random() < stack:
                pts.append(rng.choice(pts))
            else:
                pts.append((rng.uniform(0, spread), rng.uniform(0, spread)))
        return Configuration.build(pts)

    def ok(cfg: Configuration) -> bool:
        locs = distinct_points(cfg.positions)
        return len(locs) >= 2 and is_d_distant(locs, D)

    return _retry(make, ok, cap)


def is_d_distant(points: Sequence[Point], D: float) -> bool:
    locs = distinct_points(points)
    return all(distance(p, q) >= D for i, p in enumerate(locs) for q in locs[i + 1:])


def arbitrary(n: int, rng: random.Random, palette: int = 1, spread: float = 100.0,
              distinct: bool = False, stack: float = 0.1, cap: int = RESAMPLE_CAP) -> Configuration:
    """Uniform positions with uniformly random lights from ``range(palette)``."""

    def make() -> Configuration:
        pts: list[tuple[float, float]] = []
        for _ in range(n):
            if pts and not distinct and rng.random() < stack:
                pts.append(rng.choice(pts))
            else:
                pts.append((rng.uniform(-spread, spread), rng.uniform(-spread, spread)))
        return Configuration.build(pts, [rng.randrange(palette) for _ in range(n)])

    def ok(cfg: Configuration) -> bool:
        return not distinct or len(distinct_points(cfg.positions)) == n

    return _retry(make, ok, cap)


def explicit(points: Sequence[Sequence[float]], lights: Optional[Sequence[int]] = None) -> Configuration:
    return Configuration.build(points, lights)
