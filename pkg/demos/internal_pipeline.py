"""
Gathering with only an internal light
=====================================

Robots see nobody else's light, move non-rigidly, and know delta and the
spacing D.  Three routines hand off to each other: shrink the
configuration onto one longest segment (phase 6), cut that segment to
between D/4 and D/2 (phase 5), then meet (phase 4).
"""
import itertools
import random

from lumigather import engine, generators
from lumigather.adversary import AdversaryStrategy, MovementModel, Scheduler, SchedulerKind
from lumigather.algorithms import get_algorithm, pipeline_phase

delta, D = 1.0, 2.0
rng = random.Random(11)
start = generators.d_distant(6, rng, D)
print("start: every pair of distinct locations at least D apart:", generators.is_d_distant(start.positions, D))

strategy = AdversaryStrategy(Scheduler(SchedulerKind.SSYNC), start.n, seed=11, frames="worst")
trace = engine.run(start, get_algorithm("int-light"), strategy,
                   MovementModel(rigid=False, delta=delta, delta_known=True), 20_000, delta=delta, D=D)
print(f"status: {trace.status.value} after {trace.rounds} rounds")

phases = [pipeline_phase(c.positions, D) for c in trace.configs]
for phase, run in itertools.groupby(enumerate(phases), key=lambda x: x[1]):
    rounds = [t for t, _ in run]
    length = engine.lds_length(trace.configs[rounds[-1]])
    print(f"phase {phase}: rounds {rounds[0]}..{rounds[-1]}, longest segment at the end {length:.4f}")
