"""
Two colors, non-rigid moves, a semi-synchronous adversary
==========================================================

Robots start on one segment with every light set to A.  We watch the
color pattern along the segment change round by round and then check the
whole trace against the allowed pattern transitions.
"""
import random

from lumigather import engine, generators
from lumigather.adversary import AdversaryStrategy, MovementModel, Scheduler, SchedulerKind
from lumigather.algorithms import get_algorithm
from lumigather.cli import render_svg

delta = 1.0
rng = random.Random(7)
start = generators.on_lds(6, rng, length=25.0)

# the adversary stops every long move after exactly delta and hands each robot a random frame
strategy = AdversaryStrategy(Scheduler(SchedulerKind.SSYNC), start.n, seed=7,
                             movement="min-step", frames="worst")
trace = engine.run(start, get_algorithm("full-light"), strategy, MovementModel(rigid=False, delta=delta), 50_000)

print(f"status: {trace.status.value} after {trace.rounds} rounds")

# collapse repeated labels so only the changes show
changes = [trace.labels[0]]
for label in trace.labels[1:]:
    if label != changes[-1]:
        changes.append(label)
print("pattern changes:", " -> ".join(changes))

series = engine.metrics(trace)["lds_length"]
print("segment length every 5 rounds:", [round(x, 2) for x in series[::5]])

report = engine.check_conformance(trace, engine.FULL_LIGHT_RELATION, delta)
print("conforms:", report.ok, "| edges used:", sorted(f"{a}->{b}" for a, b in report.coverage))

engine.write_trace(trace, "full_light.jsonl")
with open("full_light.svg", "w") as fh:
    fh.write(render_svg(engine.read_trace("full_light.jsonl")))
print("wrote full_light.jsonl and full_light.svg")
