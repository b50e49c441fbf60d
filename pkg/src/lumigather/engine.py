"""Round loop, gathering detection, traces, color-configuration labels and conformance.

A round: the adversary picks the active set, every active robot observes the
same configuration through its own frame, computes, and all light writes and
moves are applied together.
"""
from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .adversary import AdversaryStrategy, MovementModel
from .algorithms import AlgorithmSpec, PreconditionViolation
from .geometry import (
    DegenerateConfiguration,
    Point,
    Tolerance,
    are_collinear,
    distance,
    distinct_points,
    lds_set,
    midpoint,
    same_point,
)
from .model import A, B, C, ColorId, ComputeOutput, Configuration, Frame, ObservationPolicy, RobotState, observe


class Status(str, enum.Enum):
    RUNNING = "running"
    GATHERED = "gathered"
    NOT_GATHERED = "not-gathered"
    ABORTED = "aborted"


def world_tol(points: Iterable[Point]) -> Tolerance:
    """Absolute position tolerance scaled to the coordinates in play."""
    extent = max((max(abs(p[0]), abs(p[1])) for p in points), default=0.0)
    return Tolerance(eps_pos=1e-9 * max(1.0, extent), eps_rel=1e-9)


def is_gathered(config: Configuration, tol: Optional[Tolerance] = None) -> bool:
    pts = config.positions
    tol = tol or world_tol(pts)
    return all(same_point(p, pts[0], tol) for p in pts)


def lds_length(config: Configuration) -> float:
    pts = config.positions
    return max((distance(p, q) for i, p in enumerate(pts) for q in pts[i + 1:]), default=0.0)


@dataclass(frozen=True)
class RobotStep:
    id: int
    frame: Frame
    digest: str
    output: ComputeOutput
    endpoint: Point
    reached: bool


@dataclass(frozen=True)
class RoundRecord:
    round: int
    activated: tuple[int, ...]
    steps: tuple[RobotStep, ...]
    config: Configuration
    label: str
    lds_length: float


@dataclass
class Trace:
    initial: Configuration
    records: list[RoundRecord] = field(default_factory=list)
    status: Status = Status.RUNNING
    diagnostic: Optional[str] = None
    header: dict[str, Any] = field(default_factory=dict)
    initial_label: str = ""

    @property
    def final(self) -> Configuration:
        return self.records[-1].config if self.records else self.initial

    @property
    def rounds(self) -> int:
        return len(self.records)

    @property
    def configs(self) -> list[Configuration]:
        return [self.initial] + [r.config for r in self.records]

    @property
    def labels(self) -> list[str]:
        return [self.initial_label] + [r.label for r in self.records]


# -- color-configuration labels ---------------------------------------------

GATHERED = "GATHERED"
SCHEMES = ("full", "ext3")
_ORDER = {"A": 0, "AC": 1, "B": 2}


def _class_full(colors: frozenset[ColorId]) -> str:
    return "A" if A in colors else "B"


def _class_ext3(colors: frozenset[ColorId]) -> str:
    if colors == {B}:
        return "B"
    if C in colors and colors <= {A, C}:
        return "AC"
    if colors <= {A, B}:
        return "A"
    return "X"


def classify_color_configuration(config: Configuration, tol: Optional[Tolerance] = None,
                                 scheme: str = "full") -> str:
    """Pattern of colors along the longest segment, e.g. ``ABA`` or ``AB_PLUS_A``.

    ``full`` treats a location as A when any robot there is A; ``ext3`` maps
    A/C mixtures to AC.  Endpoint order is canonical, so BA reads as AB.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown label scheme {scheme!r}")
    pts = config.positions
    tol = tol or world_tol(pts)
    locs = distinct_points(pts, tol)
    if len(locs) == 1:
        return GATHERED
    if not are_collinear(locs, tol):
        return "OTHER(non-collinear)"
    try:
        seg = lds_set(locs, tol)[0]
    except DegenerateConfiguration:
        return GATHERED
    colors: dict[Point, set[ColorId]] = {p: set() for p in locs}
    for r in config.robots:
        rep = next(p for p in locs if same_point(r.pos, p, tol))
        colors[rep].add(r.light)
    klass = _class_full if scheme == "full" else _class_ext3
    cls = {p: klass(frozenset(cs)) for p, cs in colors.items()}
    ends = sorted((cls[seg.a], cls[seg.b]), key=lambda c: _ORDER.get(c, 9))
    inner = [p for p in locs if not same_point(p, seg.a, tol) and not same_point(p, seg.b, tol)]
    inner_cls = {cls[p] for p in inner}
    mid = midpoint(seg.a, seg.b)
    mid_only = len(inner) == 1 and same_point(inner[0], mid, tol)
    pattern = f"OTHER({ends[0]}[{''.join(sorted(inner_cls))}]{ends[1]})"
    e = tuple(ends)
    if scheme == "full":
        if not inner:
            return {("A", "A"): "AA", ("A", "B"): "AB_STAR_B", ("B", "B"): "BB_STAR_B"}[e]
        if len(inner_cls) != 1:
            return pattern
        g = next(iter(inner_cls))
        if e == ("A", "A"):
            if g == "B":
                return "ABA" if mid_only else "AB_PLUS_A"
            return "AAA" if mid_only else "AA_STAR_A"
        if e == ("A", "B") and g == "B":
            return "AB_STAR_B"
        if e == ("B", "B") and g == "B":
            return "BBB" if mid_only else "BB_STAR_B"
        return pattern
    if not inner:
        return {("A", "A"): "AA", ("A", "B"): "AB", ("AC", "B"): "B_AC"}.get(e, pattern)
    if mid_only:
        g = cls[inner[0]]
        if e == ("A", "A"):
            return {"A": "AAA", "B": "ABA"}.get(g, pattern)
        if e in (("A", "B"), ("AC", "B")) and g == "B":
            return "BB_AC"
    return pattern


# -- transition relations ---------------------------------------------------

SAME, MINUS_DELTA, MINUS_2DELTA, A_DECREASES, NONE_TAG = (
    "same", "minus_delta", "minus_2delta", "A_count_decreases", "none")


@dataclass(frozen=True)
class TransitionRelation:
    name: str
    scheme: str
    edges: dict[tuple[str, str], tuple[str, str]]  # (from, to) -> (progress tag, rule name)

    @property
    def labels(self) -> set[str]:
        return {a for a, _ in self.edges} | {b for _, b in self.edges}


def _edges(rows: Sequence[tuple[Sequence[str], Sequence[str], str, str]]):
    out = {}
    for sources, targets, tag, rule in rows:
        for s in sources:
            for t in targets:
                out[(s, t)] = (tag, rule)
    return out


FULL_LIGHT_RELATION = TransitionRelation("full-light", "full", _edges([
    (["AA_STAR_A", "AAA"], ["AA"], SAME, "collapse-to-two"),
    (["AA"], [GATHERED], NONE_TAG, "two-gather"),
    (["AA"], ["BB_STAR_B", "BBB"], MINUS_2DELTA, "two-to-bb"),
    (["AA"], ["AB_STAR_B"], MINUS_DELTA, "two-to-ab-star-b"),
    (["AA"], ["ABA", "AB_PLUS_A"], SAME, "two-to-aba"),
    (["AB_PLUS_A"], ["ABA"], SAME, "ab-plus-a-to-aba"),
    (["BB_STAR_B", "BBB"], ["AA", "AB_PLUS_A", "ABA", "AB_STAR_B"], SAME, "bb-recolor"),
    (["BB_STAR_B", "BBB"], [GATHERED], NONE_TAG, "bb-gather"),
    (["ABA"], [GATHERED], NONE_TAG, "aba-gather"),
    (["ABA"], ["AB_PLUS_A"], A_DECREASES, "aba-shed-a"),
    (["ABA"], ["AB_STAR_B"], MINUS_DELTA, "aba-to-ab-star-b"),
    (["ABA"], ["BB_STAR_B", "BBB"], MINUS_2DELTA, "aba-to-bb"),
    (["AB_STAR_B"], [GATHERED], NONE_TAG, "ab-star-b-gather"),
]))

EXT3_RELATION = TransitionRelation("ext-light-3", "ext3", _edges([
    (["AA"], [GATHERED, "ABA", "AB"], NONE_TAG, "ext-aa"),
    (["AAA"], ["ABA"], NONE_TAG, "ext-aaa"),
    (["ABA"], ["AB", GATHERED], NONE_TAG, "ext-aba"),
    (["AB"], ["B_AC", "BB_AC"], NONE_TAG, "ext-ab"),
    (["BB_AC"], ["B_AC", "AB"], NONE_TAG, "ext-bb-ac"),
    (["B_AC"], [GATHERED], NONE_TAG, "ext-b-ac"),
]))

RELATIONS = {"full": FULL_LIGHT_RELATION, "ext3": EXT3_RELATION}


def endpoint_counts(config: Configuration, tol: Optional[Tolerance] = None) -> Counter:
    """Robots per light color sitting on an endpoint of some longest segment."""
    pts = config.positions
    tol = tol or world_tol(pts)
    try:
        ends = {e for s in lds_set(pts, tol) for e in (s.a, s.b)}
    except DegenerateConfiguration:
        return Counter(r.light for r in config.robots)
    return Counter(r.light for r in config.robots if any(same_point(r.pos, e, tol) for e in ends))


@dataclass
class Violation:
    round: int
    source: str
    target: str
    reason: str
    drop: float

    def __str__(self) -> str:
        return f"round {self.round}: {self.source} -> {self.target}: {self.reason} (drop {self.drop:.6g})"


def mixed_endpoint_potential(config: Configuration, tol: Optional[Tolerance] = None) -> Optional[int]:
    """None when every endpoint is single-colored; otherwise a count that full-light steps shrink.

    The count is the A robots on endpoints plus the B robots sharing an
    endpoint with some A robot.
    """
    pts = config.positions
    tol = tol or world_tol(pts)
    try:
        ends = distinct_points([e for s in lds_set(pts, tol) for e in (s.a, s.b)], tol)
    except DegenerateConfiguration:
        return None
    mixed, total = False, 0
    for e in ends:
        here = [r.light for r in config.robots if same_point(r.pos, e, tol)]
        has_a = A in here
        if has_a and any(c != A for c in here):
            mixed = True
        total += len(here) if has_a else 0
    return total if mixed else None


@dataclass
class ConformanceReport:
    relation: str
    violations: list[Violation] = field(default_factory=list)
    coverage: Counter = field(default_factory=Counter)
    relaxed: int = 0  # progress checks settled by the mixed-endpoint potential

    @property
    def ok(self) -> bool:
        return not self.violations


def check_conformance(trace: Trace, relation: TransitionRelation, delta: float) -> ConformanceReport:
    """Every label change must be an edge of ``relation`` and make its promised progress.

    The leading stretch before the first label of the relation (hull
    contraction, or reduction to the algorithm's input shape) is skipped.
    Sources with an endpoint shared by A and B robots fall outside the label
    definitions; there progress means the mixed-endpoint potential drops.
    The distance promises are capped at half the previous length: a robot
    heading for the midpoint of a segment shorter than 2*delta lands exactly.
    """
    report = ConformanceReport(relation.name)
    configs, labels = trace.configs, trace.labels
    if not labels[0]:
        labels = [classify_color_configuration(c, scheme=relation.scheme) for c in configs]
    domain = relation.labels
    start = 0
    while start < len(labels) and labels[start] not in domain:
        start += 1
    for t in range(start, len(labels) - 1):
        src, dst = labels[t], labels[t + 1]
        if src == dst:
            continue
        before, after = lds_length(configs[t]), lds_length(configs[t + 1])
        drop = before - after
        edge = relation.edges.get((src, dst))
        if edge is None:
            report.violations.append(Violation(t + 1, src, dst, "edge not in relation", drop))
            continue
        report.coverage[(src, dst)] += 1
        tag, rule = edge
        eps = world_tol(configs[t].positions).eps_pos
        need = min(delta, before / 2)
        if tag in (MINUS_DELTA, MINUS_2DELTA, A_DECREASES) and relation.scheme == "full":
            pot = mixed_endpoint_potential(configs[t])
            if pot is not None:
                now = mixed_endpoint_potential(configs[t + 1])
                now = endpoint_counts(configs[t + 1])[A] if now is None else now
                if now < pot or drop >= need - eps:
                    report.relaxed += 1
                else:
                    report.violations.append(Violation(t + 1, src, dst,
                                                       f"{rule}: mixed endpoints, potential {pot} -> {now}", drop))
                continue
        if tag == MINUS_DELTA and drop < need - eps:
            report.violations.append(Violation(t + 1, src, dst, f"{rule}: expected drop >= {need:.6g}", drop))
        elif tag == MINUS_2DELTA and drop < 2 * need - eps:
            report.violations.append(Violation(t + 1, src, dst, f"{rule}: expected drop >= {2 * need:.6g}", drop))
        elif tag == SAME and abs(drop) > eps:
            report.violations.append(Violation(t + 1, src, dst, f"{rule}: expected unchanged length", drop))
        elif tag == A_DECREASES:
            a0 = endpoint_counts(configs[t])[A]
            a1 = endpoint_counts(configs[t + 1])[A]
            if not a1 < a0 or abs(drop) > eps:
                report.violations.append(Violation(t + 1, src, dst,
                                                   f"{rule}: endpoint A count {a0} -> {a1}", drop))
    return report


# -- the round loop ---------------------------------------------------------

@dataclass
class Simulation:
    """Everything fixed for one run besides the initial configuration."""

    algorithm: AlgorithmSpec
    strategy: AdversaryStrategy
    movement: MovementModel = field(default_factory=MovementModel)
    policy: Optional[ObservationPolicy] = None
    delta: Optional[float] = None
    D: Optional[float] = None

    def __post_init__(self) -> None:
        self.policy = self.policy or self.algorithm.policy
        if self.delta is None and self.movement.delta is not None:
            self.delta = self.movement.delta

    def step(self, config: Configuration, activated: Iterable[int]) -> tuple[Configuration, RoundRecord]:
        return step(config, activated, self.algorithm, self.strategy, self.policy, self.movement,
                    self.delta, self.D)

    def run(self, initial: Configuration, max_rounds: int) -> Trace:
        return run(initial, self.algorithm, self.strategy, self.movement, max_rounds, self.policy,
                   self.delta, self.D)


class EngineAbort(RuntimeError):
    pass


def _snap(p: Point, candidates: Sequence[Point], tol: Tolerance) -> Point:
    for q in candidates:
        if same_point(p, q, tol):
            return q
    return p


def step(config: Configuration, activated: Iterable[int], algorithm: AlgorithmSpec,
         strategy: AdversaryStrategy, policy: Optional[ObservationPolicy] = None,
         movement: MovementModel = MovementModel(), delta: Optional[float] = None,
         D: Optional[float] = None) -> tuple[Configuration, RoundRecord]:
    """One atomic round.  Raises EngineAbort when a robot's input breaks the algorithm."""
    policy = policy or algorithm.policy
    active = tuple(sorted(set(activated)))
    tol = world_tol(config.positions)
    occupied = distinct_points(config.positions, tol)
    planned: list[Point] = []
    steps: list[RobotStep] = []
    seen_delta = delta if algorithm.needs_delta else None
    seen_D = D if algorithm.needs_D else None
    for rid in active:
        me = config.robot(rid)
        frame = strategy.choose_frame(policy, me.pos)
        obs = observe(config, rid, policy, frame, strategy.view_choice, tol, seen_delta, seen_D)
        try:
            out = algorithm.compute(obs.snapshot)
        except PreconditionViolation as exc:
            raise EngineAbort(f"round {config.round}, robot {rid}: {exc}") from exc
        exact = [g for loc, g in zip(obs.snapshot.locations, obs.globals) if loc.pos == out.destination]
        if exact:
            dest = exact[0]
        else:
            dest = _snap(frame.to_global(out.destination), occupied + planned, tol)
        planned.append(dest)
        end, reached = strategy.resolve_movement(me.pos, dest, movement)
        if not reached:
            end = _snap(end, occupied + planned, tol)
        steps.append(RobotStep(rid, frame, obs.snapshot.digest(), out, end, reached))
    moved = {s.id: s for s in steps}
    robots = []
    for r in config.robots:
        s = moved.get(r.id)
        if s is None:
            robots.append(r)
        else:
            light = r.light if s.output.new_light is None else s.output.new_light
            robots.append(RobotState(r.id, s.endpoint, light))
    new = Configuration(tuple(robots), config.round + 1)
    label = classify_color_configuration(new, scheme=algorithm.label_scheme or "full")
    return new, RoundRecord(config.round, active, tuple(steps), new, label, lds_length(new))


def run(initial: Configuration, algorithm: AlgorithmSpec, strategy: AdversaryStrategy,
        movement: MovementModel = MovementModel(), max_rounds: int = 10_000,
        policy: Optional[ObservationPolicy] = None, delta: Optional[float] = None,
        D: Optional[float] = None, header: Optional[dict[str, Any]] = None) -> Trace:
    if algorithm.requires_rigid and not movement.rigid:
        raise ValueError(f"{algorithm.name} needs rigid movement")
    if algorithm.needs_D and D is None:
        raise ValueError(f"{algorithm.name} needs D")
    if algorithm.needs_delta and delta is None:
        delta = movement.delta
        if delta is None:
            raise ValueError(f"{algorithm.name} needs delta")
    if strategy.scheduler.kind not in algorithm.schedulers:
        raise ValueError(f"{algorithm.name} does not run under {strategy.scheduler.kind.value}")
    strategy.set_ids([r.id for r in initial.robots])
    scheme = algorithm.label_scheme or "full"
    trace = Trace(initial, header=dict(header or {}),
                  initial_label=classify_color_configuration(initial, scheme=scheme))
    config = initial
    if is_gathered(config):
        trace.status = Status.GATHERED
        return trace
    for _ in range(max_rounds):
        active = strategy.next_activation(config)
        try:
            config, record = step(config, active, algorithm, strategy, policy, movement, delta, D)
        except EngineAbort as exc:
            trace.status = Status.ABORTED
            trace.diagnostic = str(exc)
            return trace
        trace.records.append(record)
        if is_gathered(config):
            trace.status = Status.GATHERED
            return trace
    trace.status = Status.NOT_GATHERED
    return trace


# -- metrics and serialization ----------------------------------------------

def metrics(trace: Trace) -> dict[str, Any]:
    configs = trace.configs
    series_len = [lds_length(c) for c in configs]
    counts = [endpoint_counts(c) for c in configs]
    colors = sorted({k for c in counts for k in c})
    return {
        "lds_length": series_len,
        "locations": [len(distinct_points(c.positions, world_tol(c.positions))) for c in configs],
        "endpoint_colors": {k: [c[k] for c in counts] for k in colors},
        "rounds_to_gather": trace.rounds if trace.status is Status.GATHERED else None,
    }


def _pt(p: Point) -> list[float]:
    return [float(p[0]), float(p[1])]


def trace_lines(trace: Trace) -> list[str]:
    """JSON-lines encoding: header, one record per round, footer.  Floats keep full precision."""
    dump = lambda obj: json.dumps(obj, sort_keys=True, separators=(",", ":"))  # noqa: E731
    lines = [dump({"kind": "header", **trace.header,
                   "initial": {"positions": [_pt(r.pos) for r in trace.initial.robots],
                               "lights": [r.light for r in trace.initial.robots],
                               "ids": [r.id for r in trace.initial.robots]},
                   "label": trace.initial_label})]
    for rec in trace.records:
        lines.append(dump({
            "kind": "round",
            "round": rec.round,
            "activated": list(rec.activated),
            "outputs": [{"id": s.id, "light": s.output.new_light, "dest": _pt(s.output.destination),
                         "end": _pt(s.endpoint), "reached": s.reached, "view": s.digest}
                        for s in rec.steps],
            "positions": [_pt(r.pos) for r in rec.config.robots],
            "lights": [r.light for r in rec.config.robots],
            "label": rec.label,
            "lds_length": rec.lds_length,
        }))
    lines.append(dump({"kind": "footer", "status": trace.status.value, "rounds": trace.rounds,
                       "diagnostic": trace.diagnostic}))
    return lines


def write_trace(trace: Trace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in trace_lines(trace):
            fh.write(line + "\n")


def read_trace(path) -> list[dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def trace_from_records(rows: Sequence[dict[str, Any]]) -> Trace:
    """Rebuild the configuration sequence of a written trace (enough for conformance and plots)."""
    head = rows[0]
    ids = head["initial"]["ids"]

    def cfg(positions, lights, rnd):
        return Configuration(tuple(RobotState(i, Point(*p), c) for i, p, c in zip(ids, positions, lights)), rnd)

    trace = Trace(cfg(head["initial"]["positions"], head["initial"]["lights"], 0),
                  header={k: v for k, v in head.items() if k not in ("kind", "initial", "label")},
                  initial_label=head.get("label", ""))
    for row in rows[1:]:
        if row["kind"] == "round":
            c = cfg(row["positions"], row["lights"], row["round"] + 1)
            trace.records.append(RoundRecord(row["round"], tuple(row["activated"]), (), c,
                                             row["label"], row["lds_length"]))
        elif row["kind"] == "footer":
            trace.status = Status(row["status"])
            trace.diagnostic = row.get("diagnostic")
    return trace
