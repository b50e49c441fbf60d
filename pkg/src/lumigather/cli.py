"""Command-line experiment runner.

    lumigather run --config exp.json [--seed N] [--check] [--out trace.jsonl]
    lumigather sweep --config exp.json [--out report.json]
    lumigather geom-selftest [--cases N]
    lumigather plot trace.jsonl --out picture.svg
    lumigather conformance trace.jsonl

Exit codes: 0 ok, 1 property failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional, Sequence

from . import engine, generators
from .adversary import ACTIVATIONS, FRAMES, MOVEMENTS, VIEWS, AdversaryStrategy, MovementModel, Scheduler, SchedulerKind
from .algorithms import REGISTRY, AlgorithmSpec, get_algorithm
from .geometry import distinct_points, lds_set, smallest_enclosing_circle
from .model import Configuration, LightModel, ObservationPolicy, View
from .selftest import run_selftest, shrunk_sec

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class MovementSpec:
    rigid: bool = True
    delta: Optional[float] = None
    delta_known: bool = False


@dataclass
class PolicySpec:
    light_model: str = "full"
    view: str = "set"
    local_aware: bool = False
    chirality: bool = False


@dataclass
class GeneratorSpec:
    kind: str = "on-lds"  # on-lds | d-distant | arbitrary | explicit
    length: Optional[list[float]] = None  # [lo, hi] initial LDS length, in world units
    D: Optional[float] = None
    palette: Optional[int] = None
    distinct: bool = False
    spread: Optional[float] = None
    points: Optional[list[list[float]]] = None
    lights: Optional[list[int]] = None


@dataclass
class AdversarySpec:
    activation: str = "random"
    movement: str = "random"
    frames: str = "worst"
    views: str = "random"


@dataclass
class ExperimentConfig:
    algorithm: str
    n: int = 4
    scheduler: str = "ssync"
    k: int = 1
    window: Optional[int] = None
    movement: MovementSpec = field(default_factory=MovementSpec)
    policy: Optional[PolicySpec] = None
    D: Optional[float] = None
    generator: GeneratorSpec = field(default_factory=GeneratorSpec)
    adversary: AdversarySpec = field(default_factory=AdversarySpec)
    seed: int = 0
    seeds: Optional[list[int]] = None  # [first, count] for sweeps
    max_rounds: Optional[int] = None
    trace_path: Optional[str] = None

    _NESTED = {"movement": MovementSpec, "policy": PolicySpec, "generator": GeneratorSpec,
               "adversary": AdversarySpec}

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(data)
        try:
            for name, sub in cls._NESTED.items():
                if isinstance(kw.get(name), dict):
                    kw[name] = sub(**kw[name])
            return cls(**kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON: {exc}") from None

    # -- validation and assembly -----------------------------------------

    def spec(self) -> AlgorithmSpec:
        try:
            return get_algorithm(self.algorithm)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None

    def scheduler_obj(self) -> Scheduler:
        try:
            return Scheduler(SchedulerKind(self.scheduler), self.k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def movement_obj(self) -> MovementModel:
        try:
            return MovementModel(self.movement.rigid, self.movement.delta, self.movement.delta_known)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def policy_obj(self) -> ObservationPolicy:
        spec = self.spec()
        if self.policy is None:
            return spec.policy
        try:
            pol = ObservationPolicy(LightModel(self.policy.light_model), View(self.policy.view),
                                    self.policy.local_aware, self.policy.chirality)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        need = spec.policy
        if (pol.light_model, pol.view, pol.local_aware) != (need.light_model, need.view, need.local_aware):
            raise ConfigError(f"{spec.name} needs {need.light_model.value}-light, {need.view.value}-view, "
                              f"local_aware={need.local_aware}")
        if need.chirality and not pol.chirality:
            raise ConfigError(f"{spec.name} needs chirality")
        return pol

    def validate(self) -> None:
        spec = self.spec()
        sched = self.scheduler_obj()
        mv = self.movement_obj()
        self.policy_obj()
        if sched.kind not in spec.schedulers:
            raise ConfigError(f"{spec.name} runs under {[s.value for s in spec.schedulers]}, not {self.scheduler}")
        if spec.requires_rigid and not mv.rigid:
            raise ConfigError(f"{spec.name} needs rigid movement")
        if spec.needs_delta and not (mv.delta_known and mv.delta):
            raise ConfigError(f"{spec.name} needs a known delta")
        if spec.needs_D:
            if self.D is None or self.D <= 0:
                raise ConfigError(f"{spec.name} needs D > 0")
            delta = mv.delta
            if delta is None or self.D > 2 * delta:
                raise ConfigError("D must not exceed 2*delta")
        if self.n < max(1, spec.min_robots) and self.generator.kind != "explicit":
            raise ConfigError(f"{spec.name} needs at least {spec.min_robots} robots")
        for name, value, allowed in (("activation", self.adversary.activation, ACTIVATIONS),
                                     ("movement", self.adversary.movement, MOVEMENTS),
                                     ("frames", self.adversary.frames, FRAMES),
                                     ("views", self.adversary.views, VIEWS)):
            if value not in allowed:
                raise ConfigError(f"adversary {name} must be one of {allowed}")
        if self.generator.kind not in ("on-lds", "d-distant", "arbitrary", "explicit"):
            raise ConfigError(f"unknown generator {self.generator.kind!r}")
        if self.generator.kind == "explicit" and not self.generator.points:
            raise ConfigError("explicit generator needs points")
        if self.generator.kind == "d-distant" and not (self.generator.D or self.D):
            raise ConfigError("d-distant generator needs D")

    def initial(self, seed: int) -> Configuration:
        spec, g = self.spec(), self.generator
        rng = random.Random(seed)
        delta = self.movement.delta or 1.0
        try:
            if g.kind == "explicit":
                cfg = generators.explicit(g.points, g.lights)
                if spec.initial_light is not None and g.lights is None:
                    cfg = Configuration.build(cfg.positions, [spec.initial_light] * cfg.n)
                return cfg
            if g.kind == "on-lds":
                lo, hi = g.length or [10 * delta, 100 * delta]
                return generators.on_lds(self.n, rng, rng.uniform(lo, hi), light=spec.initial_light or 0)
            if g.kind == "d-distant":
                cfg = generators.d_distant(self.n, rng, g.D or self.D, g.spread)
            else:
                cfg = generators.arbitrary(self.n, rng, palette=g.palette or 1,
                                           spread=g.spread or 100.0, distinct=g.distinct)
                if g.palette:
                    return cfg
            return Configuration.build(cfg.positions, [spec.initial_light or 0] * cfg.n)
        except (generators.GeneratorExhausted, ValueError) as exc:
            raise ConfigError(str(exc)) from None

    def strategy(self, seed: int) -> AdversaryStrategy:
        a = self.adversary
        return AdversaryStrategy(self.scheduler_obj(), self.n_for(seed), seed=seed, activation=a.activation,
                                 movement=a.movement, frames=a.frames, views=a.views, window=self.window)

    def n_for(self, seed: int) -> int:
        return len(self.generator.points) if self.generator.kind == "explicit" else self.n


def default_max_rounds(window: int, n: int, length: float, delta: Optional[float]) -> int:
    """200 * W * (n + ceil(d0 / delta)): generous for every implemented algorithm."""
    steps = math.ceil(length / delta) if delta else 1
    return 200 * window * (n + max(steps, 1))


def run_experiment(cfg: ExperimentConfig, seed: int) -> tuple[engine.Trace, Configuration]:
    cfg.validate()
    spec = cfg.spec()
    initial = cfg.initial(seed)
    strat = cfg.strategy(seed)
    mv = cfg.movement_obj()
    limit = cfg.max_rounds or default_max_rounds(strat.window, initial.n, engine.lds_length(initial), mv.delta)
    header = {"config": cfg.to_dict(), "seed": seed, "algorithm": spec.name, "delta": mv.delta,
              "D": cfg.D, "window": strat.window, "max_rounds": limit,
              "label_scheme": spec.label_scheme or "full"}
    trace = engine.run(initial, spec, strat, mv, limit, cfg.policy_obj(), mv.delta, cfg.D, header)
    return trace, initial


def conformance_for(trace: engine.Trace, scheme: Optional[str], delta: Optional[float]) -> Optional[engine.ConformanceReport]:
    if scheme not in engine.RELATIONS or not delta:
        return None
    return engine.check_conformance(trace, engine.RELATIONS[scheme], delta)


# -- subcommands --------------------------------------------------------------

def _load(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return ExperimentConfig.from_json(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def cmd_run(args) -> int:
    cfg = _load(args.config)
    if args.max_rounds:
        cfg.max_rounds = args.max_rounds
    seed = cfg.seed if args.seed is None else args.seed
    trace, _ = run_experiment(cfg, seed)
    out = args.out or cfg.trace_path
    if out:
        engine.write_trace(trace, out)
    spec = cfg.spec()
    summary: dict[str, Any] = {"algorithm": spec.name, "seed": seed, "status": trace.status.value,
                               "rounds": trace.rounds, "final_label": trace.labels[-1]}
    if trace.diagnostic:
        summary["diagnostic"] = trace.diagnostic
    code = EXIT_OK if trace.status is engine.Status.GATHERED else EXIT_FAIL
    if args.check:
        rep = conformance_for(trace, spec.label_scheme, cfg.movement.delta or 1.0)
        if rep is not None:
            summary["conformance"] = {"ok": rep.ok, "violations": [str(v) for v in rep.violations[:20]]}
            if not rep.ok:
                code = EXIT_FAIL
    print(json.dumps(summary, sort_keys=True))
    return code


def _sweep_one(payload: tuple[dict[str, Any], int, bool]) -> dict[str, Any]:
    data, seed, check = payload
    cfg = ExperimentConfig.from_dict(data)
    trace, _ = run_experiment(cfg, seed)
    row: dict[str, Any] = {"seed": seed, "status": trace.status.value, "rounds": trace.rounds}
    rep = conformance_for(trace, cfg.spec().label_scheme, cfg.movement.delta or 1.0)
    if rep is not None:
        row["edges"] = sorted(f"{a}->{b}" for (a, b) in rep.coverage.elements())
        row["violations"] = [str(v) for v in rep.violations]
    return row


def sweep(cfg: ExperimentConfig, seeds: Sequence[int], workers: int = 1, check: bool = False) -> dict[str, Any]:
    cfg.validate()
    payloads = [(cfg.to_dict(), s, check) for s in seeds]
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_one, payloads, chunksize=4))
    else:
        rows = [_sweep_one(p) for p in payloads]
    rows.sort(key=lambda r: r["seed"])
    gathered = [r for r in rows if r["status"] == engine.Status.GATHERED.value]
    rounds = [r["rounds"] for r in gathered]
    coverage: dict[str, int] = {}
    for r in rows:
        for e in r.get("edges", []):
            coverage[e] = coverage.get(e, 0) + 1
    return {
        "algorithm": cfg.algorithm,
        "runs": len(rows),
        "gather_rate": (len(gathered) / len(rows)) if rows else None,
        "rounds": ({"min": min(rounds), "median": statistics.median(rounds), "max": max(rounds)}
                   if rounds else None),
        "edge_coverage": dict(sorted(coverage.items())),
        "failures": [r for r in rows if r["status"] != engine.Status.GATHERED.value or r.get("violations")],
    }


def cmd_sweep(args) -> int:
    cfg = _load(args.config)
    if args.max_rounds:
        cfg.max_rounds = args.max_rounds
    first, count = cfg.seeds or [cfg.seed if args.seed is None else args.seed, 1]
    report = sweep(cfg, range(first, first + count), args.workers or (os.cpu_count() or 1), args.check)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_FAIL if report["failures"] else EXIT_OK


def cmd_geom_selftest(args) -> int:
    report = run_selftest(args.cases, args.seed or 0, shrunk_sec if args.inject_fault else None,
                          (args.min_n, args.max_n))
    print(json.dumps({"cases": report.cases, "degenerate": report.degenerate,
                      "failures": report.failures[:20], "ok": report.ok}, sort_keys=True))
    return EXIT_OK if report.ok else EXIT_FAIL


_SVG_COLORS = {0: "#1f77b4", 1: "#d62728", 2: "#2ca02c"}


def render_svg(rows: Sequence[dict[str, Any]], size: int = 600) -> str:
    """Trajectories coloured by light, plus the initial SEC and LDS endpoints."""
    head = next((r for r in rows if r.get("kind") == "header"), None)
    if head is None:
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
                f'viewBox="0 0 {size} {size}"></svg>\n')
    frames = [(head["initial"]["positions"], head["initial"]["lights"])]
    frames += [(r["positions"], r["lights"]) for r in rows if r.get("kind") == "round"]
    init = [tuple(p) for p in head["initial"]["positions"]]
    sec = smallest_enclosing_circle(init)
    xs = [p[0] for ps, _ in frames for p in ps] + [sec.center[0] - sec.radius, sec.center[0] + sec.radius]
    ys = [p[1] for ps, _ in frames for p in ps] + [sec.center[1] - sec.radius, sec.center[1] + sec.radius]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    margin = 20
    k = (size - 2 * margin) / span

    def tx(p) -> str:
        return f"{margin + (p[0] - lo_x) * k:.3f},{size - margin - (p[1] - lo_y) * k:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           '<rect width="100%" height="100%" fill="white"/>']
    cx, cy = tx(sec.center).split(",")
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{sec.radius * k:.3f}" fill="none" stroke="#999" '
               f'stroke-dasharray="4 3"/>')
    locs = distinct_points(init)
    if len(locs) >= 2:
        for s in lds_set(locs):
            for e in (s.a, s.b):
                ex, ey = tx(e).split(",")
                out.append(f'<rect x="{float(ex) - 4:.3f}" y="{float(ey) - 4:.3f}" width="8" height="8" '
                           f'fill="none" stroke="black"/>')
    n = len(init)
    for i in range(n):
        for t in range(len(frames) - 1):
            a, b = frames[t][0][i], frames[t + 1][0][i]
            if a != b:
                color = _SVG_COLORS.get(frames[t + 1][1][i], "#666")
                out.append(f'<polyline points="{tx(a)} {tx(b)}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        px, py = tx(frames[-1][0][i]).split(",")
        color = _SVG_COLORS.get(frames[-1][1][i], "#666")
        out.append(f'<circle cx="{px}" cy="{py}" r="3" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args) -> int:
    try:
        rows = engine.read_trace(args.trace)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read trace: {exc}") from None
    svg = render_svg(rows)
    out = args.out or os.path.splitext(args.trace)[0] + ".svg"
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    print(out)
    return EXIT_OK


def cmd_conformance(args) -> int:
    try:
        rows = engine.read_trace(args.trace)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read trace: {exc}") from None
    if not rows or rows[0].get("kind") != "header":
        raise ConfigError("trace has no header")
    trace = engine.trace_from_records(rows)
    head = rows[0]
    scheme = args.scheme or head.get("label_scheme")
    delta = args.delta or head.get("delta") or 1.0
    if scheme not in engine.RELATIONS:
        raise ConfigError(f"no transition relation for label scheme {scheme!r}")
    rep = engine.check_conformance(trace, engine.RELATIONS[scheme], delta)
    print(json.dumps({"relation": rep.relation, "ok": rep.ok, "relaxed": rep.relaxed,
                      "coverage": {f"{a}->{b}": c for (a, b), c in sorted(rep.coverage.items())},
                      "violations": [str(v) for v in rep.violations]}, sort_keys=True))
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lumigather", description="Luminous-robot gathering simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--check", action="store_true", help="also check the color transition relation")
        sp.add_argument("--out")
        sp.add_argument("--max-rounds", type=int)

    run_p = sub.add_parser("run", help="simulate one seeded run")
    common(run_p)
    run_p.set_defaults(func=cmd_run)
    sw = sub.add_parser("sweep", help="simulate a range of seeds")
    common(sw)
    sw.add_argument("--workers", type=int)
    sw.set_defaults(func=cmd_sweep)
    gs = sub.add_parser("geom-selftest", help="check geometry routines against brute force")
    gs.add_argument("--cases", type=int, default=1000)
    gs.add_argument("--seed", type=int)
    gs.add_argument("--min-n", type=int, default=2)
    gs.add_argument("--max-n", type=int, default=12)
    gs.add_argument("--inject-fault", action="store_true", help="use a shrunken circle to prove the check bites")
    gs.add_argument("--out")
    gs.set_defaults(func=cmd_geom_selftest)
    pl = sub.add_parser("plot", help="render a trace as SVG")
    pl.add_argument("trace")
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_plot)
    cf = sub.add_parser("conformance", help="check a trace against its transition relation")
    cf.add_argument("trace")
    cf.add_argument("--scheme", choices=sorted(engine.RELATIONS))
    cf.add_argument("--delta", type=float)
    cf.set_defaults(func=cmd_conformance)
    sub.add_parser("list", help="list algorithms").set_defaults(
        func=lambda a: print("\n".join(sorted(REGISTRY))) or EXIT_OK)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
