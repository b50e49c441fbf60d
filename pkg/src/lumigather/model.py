"""Robots, configurations, observation policies, local frames and snapshots.

A snapshot is what an anonymous robot sees: distinct locations in its own
frame, each with the colors it is allowed to perceive there.  Robot ids live
in the configuration for bookkeeping but never reach a snapshot.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .geometry import DEFAULT_TOL, Point, Tolerance, same_point

ColorId = int

A, B, C = 0, 1, 2
T, M = 0, 1


class LightModel(enum.Enum):
    FULL = "full"
    EXTERNAL = "external"
    INTERNAL = "internal"
    NONE = "none"


class View(enum.Enum):
    SET = "set"
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class RobotState:
    id: int
    pos: Point
    light: ColorId


@dataclass(frozen=True)
class Configuration:
    robots: tuple[RobotState, ...]
    round: int = 0

    def __post_init__(self) -> None:
        if not self.robots:
            raise ValueError("a configuration needs at least one robot")
        ids = [r.id for r in self.robots]
        if len(set(ids)) != len(ids):
            raise ValueError("robot ids must be unique")

    @classmethod
    def build(cls, points: Sequence[Sequence[float]], lights: Optional[Sequence[int]] = None,
              round: int = 0) -> "Configuration":
        lights = lights if lights is not None else [0] * len(points)
        return cls(tuple(RobotState(i + 1, Point(float(p[0]), float(p[1])), int(c))
                         for i, (p, c) in enumerate(zip(points, lights))), round)

    def robot(self, robot_id: int) -> RobotState:
        for r in self.robots:
            if r.id == robot_id:
                return r
        raise KeyError(f"unknown robot id {robot_id}")

    @property
    def positions(self) -> list[Point]:
        return [r.pos for r in self.robots]

    @property
    def n(self) -> int:
        return len(self.robots)


@dataclass(frozen=True)
class ObservationPolicy:
    light_model: LightModel
    view: View = View.SET
    local_aware: bool = False
    chirality: bool = False

    @property
    def sees_others(self) -> bool:
        return self.light_model in (LightModel.FULL, LightModel.EXTERNAL)

    @property
    def sees_self(self) -> bool:
        return self.light_model in (LightModel.FULL, LightModel.INTERNAL)


@dataclass(frozen=True)
class Frame:
    """Local coordinates: translate to origin, mirror y if reflect, rotate, scale."""

    rotation: float = 0.0
    scale: float = 1.0
    reflect: bool = False
    origin: Point = Point(0.0, 0.0)

    def __post_init__(self) -> None:
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("frame scale must be finite and positive")

    def to_local(self, p: Point) -> Point:
        x, y = p[0] - self.origin[0], p[1] - self.origin[1]
        if self.reflect:
            y = -y
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return Point(self.scale * (c * x - s * y), self.scale * (s * x + c * y))

    def to_global(self, p: Point) -> Point:
        x, y = p[0] / self.scale, p[1] / self.scale
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        x, y = c * x + s * y, -s * x + c * y
        if self.reflect:
            y = -y
        return Point(x + self.origin[0], y + self.origin[1])


def to_local(frame: Frame, p: Point) -> Point:
    return frame.to_local(p)


def to_global(frame: Frame, p: Point) -> Point:
    return frame.to_global(p)


@dataclass(frozen=True)
class Location:
    pos: Point
    view: frozenset[ColorId]


@dataclass(frozen=True)
class Snapshot:
    """A robot's observation.  ``locations[0]`` is always its own position (0, 0).

    ``delta`` and ``D`` are the movement and spacing constants expressed in
    the observer's own unit; they are None unless the algorithm may read them.
    """

    locations: tuple[Location, ...]
    own_light: Optional[ColorId] = None
    own_location_occupied_by_others: Optional[bool] = None
    delta: Optional[float] = None
    D: Optional[float] = None

    @property
    def points(self) -> list[Point]:
        return [loc.pos for loc in self.locations]

    @property
    def own(self) -> Location:
        return self.locations[0]

    def colors(self) -> frozenset[ColorId]:
        """Union of all visible colors plus the own light when visible."""
        out: set[ColorId] = set()
        for loc in self.locations:
            out |= loc.view
        if self.own_light is not None:
            out.add(self.own_light)
        return frozenset(out)

    def digest(self) -> str:
        parts = [f"{loc.pos.x!r},{loc.pos.y!r}:{sorted(loc.view)}" for loc in self.locations]
        return f"{self.own_light}|{self.own_location_occupied_by_others}|" + ";".join(parts)


@dataclass(frozen=True)
class ComputeOutput:
    """``new_light`` None means the light is left unchanged."""

    new_light: Optional[ColorId]
    destination: Point

    @classmethod
    def stay(cls, light: Optional[ColorId] = None) -> "ComputeOutput":
        return cls(light, Point(0.0, 0.0))


# (global position of the location, sorted candidate colors) -> chosen color
ViewChoice = Callable[[Point, tuple[ColorId, ...]], ColorId]


def _first_color(_pos: Point, colors: tuple[ColorId, ...]) -> ColorId:
    return colors[0]


@dataclass(frozen=True)
class Observation:
    """Snapshot plus the global representative of each location (engine-only)."""

    snapshot: Snapshot
    globals: tuple[Point, ...] = field(default_factory=tuple)


def observe(config: Configuration, robot_id: int, policy: ObservationPolicy, frame: Frame,
            view_choice: ViewChoice = _first_color, tol: Tolerance = DEFAULT_TOL,
            delta: Optional[float] = None, D: Optional[float] = None) -> Observation:
    me = config.robot(robot_id)
    if frame.reflect and policy.chirality:
        raise ValueError("reflecting frames are illegal under chirality")
    if not same_point(frame.origin, me.pos, tol):
        raise ValueError("frame origin must be the observer's position")
    reps: list[Point] = [me.pos]
    members: list[list[RobotState]] = [[]]
    for r in config.robots:
        if r.id == robot_id:
            continue
        for k, rep in enumerate(reps):
            if same_point(r.pos, rep, tol):
                members[k].append(r)
                break
        else:
            reps.append(r.pos)
            members.append([r])

    def view_of(k: int) -> frozenset[ColorId]:
        if not policy.sees_others:
            return frozenset()
        if k == 0 and not policy.local_aware:
            return frozenset()
        colors = tuple(sorted({r.light for r in members[k]}))
        if not colors:
            return frozenset()
        if policy.view is View.ARBITRARY:
            pick = view_choice(reps[k], colors)
            if pick not in colors:
                raise ValueError("arbitrary view must pick an observed color")
            return frozenset((pick,))
        return frozenset(colors)

    # other locations in local-coordinate order, so input order never leaks
    others = sorted(range(1, len(reps)), key=lambda k: frame.to_local(reps[k]))
    locs = [Location(Point(0.0, 0.0), view_of(0))]
    locs += [Location(frame.to_local(reps[k]), view_of(k)) for k in others]
    reps = [reps[0]] + [reps[k] for k in others]
    snap = Snapshot(
        locations=tuple(locs),
        own_light=me.light if policy.sees_self else None,
        own_location_occupied_by_others=bool(members[0]) if policy.local_aware else None,
        delta=None if delta is None else delta * frame.scale,
        D=None if D is None else D * frame.scale,
    )
    return Observation(snap, tuple(reps))


def derive_snapshot(config: Configuration, robot_id: int, policy: ObservationPolicy,
                    frame: Frame, view_choice: ViewChoice = _first_color,
                    tol: Tolerance = DEFAULT_TOL) -> Snapshot:
    return observe(config, robot_id, policy, frame, view_choice, tol).snapshot
