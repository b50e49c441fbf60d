import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lumigather.adversary import (
    AdversaryStrategy,
    MovementModel,
    Scheduler,
    SchedulerKind,
    choose_frame,
    resolve_movement,
)
from lumigather.geometry import Point, cross, distance
from lumigather.model import Configuration, LightModel, ObservationPolicy

SSYNC = Scheduler(SchedulerKind.SSYNC)


class TestActivation:
    def test_round_robin(self):
        s = AdversaryStrategy(Scheduler(SchedulerKind.ROUND_ROBIN), 3)
        assert [set(s.next_activation()) for _ in range(5)] == [{1}, {2}, {3}, {1}, {2}]

    def test_fsync(self):
        s = AdversaryStrategy(Scheduler(SchedulerKind.FSYNC), 5, seed=1)
        for _ in range(4):
            assert s.next_activation() == frozenset({1, 2, 3, 4, 5})

    def test_fairness_window_forces_starved_robot(self):
        s = AdversaryStrategy(SSYNC, 3, window=4)
        # replay a history where robot 2 sat out three rounds
        for chosen in ({1}, {3}, {1, 3}):
            s._record(frozenset(chosen))
        assert 2 in s.next_activation()

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 7), st.integers(0, 2**32), st.sampled_from(list(SchedulerKind)),
           st.integers(1, 3))
    def test_every_window_hits_every_robot(self, n, seed, kind, k):
        s = AdversaryStrategy(Scheduler(kind, k), n, seed=seed)
        rounds = [s.next_activation() for _ in range(s.window * n + 5)]
        assert all(rounds)
        for start in range(len(rounds) - s.window + 1):
            seen = set().union(*rounds[start:start + s.window])
            assert seen == set(range(1, n + 1))
        R = len(rounds)
        for i in range(1, n + 1):
            assert sum(i in r for r in rounds) >= R // s.window
        if kind in (SchedulerKind.CENT, SchedulerKind.ROUND_ROBIN):
            assert all(len(r) == 1 for r in rounds)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 2**32), st.integers(1, 3))
    def test_k_bounded(self, n, seed, k):
        s = AdversaryStrategy(Scheduler(SchedulerKind.KBOUNDED, k), n, seed=seed)
        rounds = [s.next_activation() for _ in range(60)]
        for r in range(1, n + 1):
            times = [t for t, act in enumerate(rounds) if r in act]
            bounds = [-1] + times
            for lo, hi in zip(bounds, bounds[1:]):
                for other in range(1, n + 1):
                    if other != r:
                        assert sum(other in rounds[t] for t in range(lo + 1, hi)) <= k

    def test_endpoint_splitter_touches_one_endpoint(self):
        cfg = Configuration.build([(0, 0), (0, 0), (1, 0), (3, 0), (3, 0)])
        s = AdversaryStrategy(SSYNC, 5, seed=4, activation="endpoint-splitter", window=100)
        for _ in range(30):
            act = s.next_activation(cfg)
            assert not ({1, 2} & act and {4, 5} & act)

    def test_seeded_reproducible(self):
        a = AdversaryStrategy(SSYNC, 6, seed=99)
        b = AdversaryStrategy(SSYNC, 6, seed=99)
        assert [a.next_activation() for _ in range(20)] == [b.next_activation() for _ in range(20)]


class TestMovement:
    O, FAR = Point(0, 0), Point(3, 0)

    def test_rigid(self):
        s = AdversaryStrategy(SSYNC, 2, movement="min-step")
        assert resolve_movement(self.O, Point(7, -2), MovementModel(rigid=True), s) == Point(7, -2)

    def test_short_segment_reaches(self):
        s = AdversaryStrategy(SSYNC, 2, movement="min-step")
        assert resolve_movement(self.O, Point(0.5, 0), MovementModel(False, 1.0), s) == Point(0.5, 0)

    def test_min_step_stops_at_delta(self):
        s = AdversaryStrategy(SSYNC, 2, movement="min-step")
        assert resolve_movement(self.O, self.FAR, MovementModel(False, 1.0), s) == Point(1.0, 0.0)

    def test_zero_move(self):
        s = AdversaryStrategy(SSYNC, 2, movement="random")
        assert resolve_movement(self.O, self.O, MovementModel(False, 1.0), s) == self.O

    def test_nonrigid_needs_delta(self):
        with pytest.raises(ValueError):
            MovementModel(rigid=False)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(-50, 50), st.floats(-50, 50), st.floats(0.01, 5), st.integers(0, 1000))
    def test_never_overshoots(self, x, y, delta, seed):
        s = AdversaryStrategy(SSYNC, 2, seed=seed, movement="random")
        dest = Point(x, y)
        got, _ = s.resolve_movement(self.O, dest, MovementModel(False, delta))
        length = distance(self.O, dest)
        moved = distance(self.O, got)
        assert moved <= length + 1e-12
        assert moved >= min(delta, length) - 1e-12
        assert abs(cross(self.O, dest, got)) <= 1e-9 * max(1.0, length) ** 2


class TestFrames:
    def test_identity(self):
        s = AdversaryStrategy(SSYNC, 2)
        f = choose_frame(s, ObservationPolicy(LightModel.FULL))
        assert (f.rotation, f.scale, f.reflect) == (0.0, 1.0, False)

    def test_chirality_never_reflects(self):
        s = AdversaryStrategy(SSYNC, 2, seed=5, frames="worst")
        pol = ObservationPolicy(LightModel.NONE, chirality=True)
        assert not any(choose_frame(s, pol).reflect for _ in range(200))

    def test_without_chirality_reflects_sometimes(self):
        s = AdversaryStrategy(SSYNC, 2, seed=5, frames="worst")
        pol = ObservationPolicy(LightModel.NONE, chirality=False)
        frames = [choose_frame(s, pol) for _ in range(200)]
        assert any(f.reflect for f in frames)
        assert all(0.1 <= f.scale <= 10 and 0 <= f.rotation <= 2 * math.pi for f in frames)

    def test_reproducible(self):
        pol = ObservationPolicy(LightModel.FULL)
        a = AdversaryStrategy(SSYNC, 2, seed=8, frames="worst")
        b = AdversaryStrategy(SSYNC, 2, seed=8, frames="worst")
        assert [choose_frame(a, pol) for _ in range(10)] == [choose_frame(b, pol) for _ in range(10)]
