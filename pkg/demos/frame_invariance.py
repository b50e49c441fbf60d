"""
Same decision in every frame
============================

A robot's snapshot depends on its private frame (rotation, scale and, when
there is no shared handedness, a mirror).  Its decision, mapped back to
global coordinates, must not.
"""
from lumigather.algorithms import get_algorithm
from lumigather.model import Configuration, Frame, observe

config = Configuration.build([(0, 0), (1, 0.2), (4, 3), (0.5, 4)])
algorithm = get_algorithm("elect-one-lds-cent")
me = config.robot(1)

for rotation, scale, mirror in [(0.0, 1.0, False), (1.1, 3.0, False), (2.5, 0.2, True)]:
    frame = Frame(rotation, scale, mirror, me.pos)
    snap = observe(config, 1, algorithm.policy, frame).snapshot
    out = algorithm.compute(snap)
    world = frame.to_global(out.destination)
    print(f"frame rot={rotation:.1f} scale={scale} mirror={mirror}: local {tuple(round(v, 3) for v in out.destination)}"
          f" -> global {tuple(round(v, 6) for v in world)}")
