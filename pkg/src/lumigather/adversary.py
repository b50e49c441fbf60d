"""Schedulers, fairness enforcement, non-rigid movement and frame/view choices.

One seeded ``random.Random`` drives every adversarial decision of a run, so a
(strategy, seed) pair replays exactly.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import DEFAULT_TOL, DegenerateConfiguration, Point, Tolerance, distance, lds_set, same_point
from .model import ColorId, Configuration, Frame, ObservationPolicy


class SchedulerKind(enum.Enum):
    FSYNC = "fsync"
    SSYNC = "ssync"
    CENT = "cent"
    KBOUNDED = "kbounded"
    ROUND_ROBIN = "round-robin"


@dataclass(frozen=True)
class Scheduler:
    kind: SchedulerKind
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def single(self) -> bool:
        return self.kind in (SchedulerKind.CENT, SchedulerKind.ROUND_ROBIN)


@dataclass(frozen=True)
class MovementModel:
    rigid: bool = True
    delta: Optional[float] = None
    delta_known: bool = False

    def __post_init__(self) -> None:
        if not self.rigid and not (self.delta is not None and self.delta > 0):
            raise ValueError("non-rigid movement needs delta > 0")


ACTIVATIONS = ("all", "random", "endpoint-splitter")
MOVEMENTS = ("reach", "random", "min-step")
FRAMES = ("identity", "worst")
VIEWS = ("first", "random")


class AdversaryStrategy:
    """Stateful adversary for a single run.

    ``window`` is the fairness window W: every robot is activated at least once
    in any W consecutive rounds.  It defaults to 2n and is raised to n when a
    one-robot-per-round scheduler needs that much room.
    """

    def __init__(self, scheduler: Scheduler, n: int, seed: int = 0, activation: str = "random",
                 movement: str = "random", frames: str = "identity", views: str = "random",
                 window: Optional[int] = None, tol: Tolerance = DEFAULT_TOL) -> None:
        for name, value, allowed in (("activation", activation, ACTIVATIONS),
                                     ("movement", movement, MOVEMENTS),
                                     ("frames", frames, FRAMES), ("views", views, VIEWS)):
            if value not in allowed:
                raise ValueError(f"unknown {name} policy {value!r}; expected one of {allowed}")
        self.scheduler = scheduler
        self.n = n
        self.seed = seed
        self.activation = activation
        self.movement = movement
        self.frames = frames
        self.views = views
        w = window if window is not None else 2 * n
        if scheduler.single:
            w = max(w, n)
        self.window = max(1, w)
        self.tol = tol
        self.rng = random.Random(seed)
        self.history: list[frozenset[int]] = []
        self.notes: list[str] = []
        self._ids: list[int] = list(range(1, n + 1))
        self._idle = {i: 0 for i in self._ids}
        self._since = {r: {s: 0 for s in self._ids} for r in self._ids}
        self._rr = 0

    def clone(self, seed: Optional[int] = None) -> "AdversaryStrategy":
        """Fresh copy with the same settings, optionally reseeded."""
        return AdversaryStrategy(self.scheduler, self.n, self.seed if seed is None else seed,
                                 self.activation, self.movement, self.frames, self.views,
                                 self.window, self.tol)

    # -- activation ---------------------------------------------------------

    def set_ids(self, ids: Sequence[int]) -> None:
        self._ids = sorted(ids)
        self._idle = {i: 0 for i in self._ids}
        self._since = {r: {s: 0 for s in self._ids} for r in self._ids}

    def _proposal(self, config: Optional[Configuration]) -> set[int]:
        ids = self._ids
        if self.activation == "all":
            return set(ids)
        if self.activation == "endpoint-splitter" and config is not None:
            picked = self._split_endpoints(config)
            if picked:
                return picked
        chosen = {i for i in ids if self.rng.random() < 0.5}
        return chosen or {self.rng.choice(ids)}

    def _split_endpoints(self, config: Configuration) -> set[int]:
        try:
            segs = lds_set(config.positions, self.tol)
        except DegenerateConfiguration:
            return set()
        seg = segs[self.rng.randrange(len(segs))]
        end = seg.a if self.rng.random() < 0.5 else seg.b
        at_end = [r.id for r in config.robots if same_point(r.pos, end, self.tol)]
        ends = (seg.a, seg.b)
        inner = [r.id for r in config.robots if not any(same_point(r.pos, e, self.tol) for e in ends)]
        if self.rng.random() < 0.5:
            chosen = set(at_end)
        else:
            chosen = {i for i in at_end if self.rng.random() < 0.5} or {self.rng.choice(at_end)}
        chosen |= {i for i in inner if self.rng.random() < 0.5}
        return chosen

    def next_activation(self, config: Optional[Configuration] = None) -> frozenset[int]:
        kind = self.scheduler.kind
        ids = self._ids
        if kind is SchedulerKind.FSYNC:
            chosen = set(ids)
        elif kind is SchedulerKind.ROUND_ROBIN:
            chosen = {ids[self._rr % len(ids)]}
            self._rr += 1
        elif kind is SchedulerKind.CENT:
            chosen = self._cent_pick(config)
        else:
            chosen = self._proposal(config)
            starving = {i for i in ids if self._idle[i] >= self.window - 1}
            if starving - chosen:
                self.notes.append(f"round {len(self.history)}: forced {sorted(starving - chosen)}")
            chosen |= starving
            if kind is SchedulerKind.KBOUNDED:
                chosen = self._bound(chosen)
        result = frozenset(chosen)
        self._record(result)
        return result

    def _cent_pick(self, config: Optional[Configuration]) -> set[int]:
        # earliest-deadline-first: robot with idle c must run within W - c rounds
        urgent = sorted(self._ids, key=lambda i: (-self._idle[i], i))
        for j, i in enumerate(urgent, start=1):
            if self.window - self._idle[i] <= j:
                return {urgent[0]}
        proposal = sorted(self._proposal(config))
        return {self.rng.choice(proposal)}

    def _bound(self, chosen: set[int]) -> set[int]:
        k = self.scheduler.k
        changed = True
        while changed:
            changed = False
            for r in self._ids:
                if r in chosen:
                    continue
                if any(self._since[r][s] >= k for s in chosen if s != r):
                    chosen.add(r)
                    changed = True
        return chosen

    def _record(self, chosen: frozenset[int]) -> None:
        self.history.append(chosen)
        for i in self._ids:
            self._idle[i] = 0 if i in chosen else self._idle[i] + 1
        for r in self._ids:
            if r in chosen:
                for s in self._ids:
                    self._since[r][s] = 0
            else:
                for s in chosen:
                    self._since[r][s] += 1

    # -- movement -----------------------------------------------------------

    def resolve_movement(self, origin: Point, destination: Point, model: MovementModel) -> tuple[Point, bool]:
        """Where the robot actually stops, and whether it reached the destination."""
        length = distance(origin, destination)
        if model.rigid or length == 0.0 or length <= model.delta:  # type: ignore[operator]
            return destination, True
        delta = float(model.delta)  # type: ignore[arg-type]
        if self.movement == "reach":
            return destination, True
        if self.movement == "min-step":
            moved = delta
        else:
            if self.rng.random() < 0.5:
                return destination, True
            moved = delta + self.rng.random() * (length - delta)
        return stop_at(origin, destination, moved), False

    # -- frames and views ---------------------------------------------------

    def choose_frame(self, policy: ObservationPolicy, origin: Point) -> Frame:
        if self.frames == "identity":
            return Frame(origin=origin)
        rotation = self.rng.uniform(0.0, 2 * math.pi)
        scale = math.exp(self.rng.uniform(math.log(0.1), math.log(10.0)))
        reflect = (not policy.chirality) and self.rng.random() < 0.5
        return Frame(rotation, scale, reflect, origin)

    def view_choice(self, _pos: Point, colors: tuple[ColorId, ...]) -> ColorId:
        if self.views == "first" or len(colors) == 1:
            return colors[0]
        return colors[self.rng.randrange(len(colors))]


def stop_at(origin: Point, destination: Point, moved: float) -> Point:
    """Point at distance ``moved`` from origin toward destination, never past it."""
    length = distance(origin, destination)
    if moved >= length:
        return destination
    t = moved / length
    return Point(origin[0] + (destination[0] - origin[0]) * t, origin[1] + (destination[1] - origin[1]) * t)


def next_activation(strategy: AdversaryStrategy, config: Optional[Configuration] = None) -> frozenset[int]:
    return strategy.next_activation(config)


def resolve_movement(origin: Point, destination: Point, model: MovementModel,
                     strategy: AdversaryStrategy) -> Point:
    return strategy.resolve_movement(origin, destination, model)[0]


def choose_frame(strategy: AdversaryStrategy, policy: ObservationPolicy, origin: Point = Point(0.0, 0.0)) -> Frame:
    return strategy.choose_frame(policy, origin)
