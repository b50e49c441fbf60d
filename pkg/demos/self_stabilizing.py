"""
Starting from any lights
========================

Under a centralized scheduler a single robot moves per round.  Lights start
random, yet the robots settle on one target location and everyone walks
there.  We print how many distinct target-colored locations exist over time.
"""
import random

from lumigather import engine, generators
from lumigather.adversary import AdversaryStrategy, MovementModel, Scheduler, SchedulerKind
from lumigather.algorithms import get_algorithm
from lumigather.geometry import distinct_points
from lumigather.model import T

rng = random.Random(3)
start = generators.arbitrary(7, rng, palette=2, spread=20.0)
strategy = AdversaryStrategy(Scheduler(SchedulerKind.CENT), start.n, seed=3, movement="min-step", frames="worst")
trace = engine.run(start, get_algorithm("cent-ext-light"), strategy, MovementModel(rigid=False, delta=1.0), 100_000)


def targets(config):
    return len(distinct_points([r.pos for r in config.robots if r.light == T]))


counts = [targets(c) for c in trace.configs]
print(f"status: {trace.status.value} after {trace.rounds} rounds")
print("target locations, first 20 rounds:", counts[:20])
first = counts.index(1) if 1 in counts else None
print("a single target appears at round", first, "and stays:", first is not None and set(counts[first:]) == {1})
