import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lumigather.geometry import Point, distance
from lumigather.model import (
    A,
    B,
    Configuration,
    Frame,
    LightModel,
    ObservationPolicy,
    View,
    derive_snapshot,
    to_global,
    to_local,
)

FULL_SET = ObservationPolicy(LightModel.FULL, View.SET, local_aware=False)


def three_robots(observer_light=A):
    return Configuration.build([(0, 0), (1, 0), (1, 0)], [observer_light, A, B])


class TestSnapshot:
    def test_full_light_set_view(self):
        cfg = three_robots()
        snap = derive_snapshot(cfg, 1, FULL_SET, Frame(origin=Point(0, 0)))
        views = {loc.pos: loc.view for loc in snap.locations}
        assert views == {Point(0, 0): frozenset(), Point(1, 0): frozenset({A, B})}
        assert snap.own_light == A
        assert snap.own_location_occupied_by_others is None

    @pytest.mark.parametrize("pick", [A, B])
    def test_arbitrary_view_follows_adversary(self, pick):
        cfg = three_robots()
        policy = ObservationPolicy(LightModel.FULL, View.ARBITRARY)
        snap = derive_snapshot(cfg, 1, policy, Frame(origin=Point(0, 0)), lambda pos, cs: pick)
        assert snap.locations[1].view == frozenset({pick})

    def test_arbitrary_view_rejects_unseen_color(self):
        cfg = Configuration.build([(0, 0), (1, 0)], [A, A])
        policy = ObservationPolicy(LightModel.FULL, View.ARBITRARY)
        with pytest.raises(ValueError):
            derive_snapshot(cfg, 1, policy, Frame(origin=Point(0, 0)), lambda pos, cs: B)

    def test_local_aware_sees_colocated(self):
        cfg = Configuration.build([(0, 0), (0, 0), (1, 0)], [A, B, A])
        policy = ObservationPolicy(LightModel.EXTERNAL, View.SET, local_aware=True)
        snap = derive_snapshot(cfg, 1, policy, Frame(origin=Point(0, 0)))
        assert snap.own_location_occupied_by_others is True
        assert snap.own.view == frozenset({B})
        assert snap.own_light is None

    def test_local_aware_alone(self):
        cfg = Configuration.build([(0, 0), (1, 0)], [A, A])
        policy = ObservationPolicy(LightModel.EXTERNAL, View.SET, local_aware=True)
        snap = derive_snapshot(cfg, 1, policy, Frame(origin=Point(0, 0)))
        assert snap.own_location_occupied_by_others is False
        assert snap.own.view == frozenset()

    def test_unknown_robot(self):
        with pytest.raises(KeyError):
            derive_snapshot(three_robots(), 9, FULL_SET, Frame())

    def test_reflection_illegal_with_chirality(self):
        policy = ObservationPolicy(LightModel.NONE, chirality=True)
        with pytest.raises(ValueError):
            derive_snapshot(three_robots(), 1, policy, Frame(reflect=True))

    def test_observer_at_origin(self):
        cfg = Configuration.build([(3, 4), (1, 0)], [A, A])
        snap = derive_snapshot(cfg, 1, FULL_SET, Frame(rotation=1.0, scale=2.0, origin=Point(3, 4)))
        assert snap.own.pos == Point(0.0, 0.0)
        assert distance(snap.locations[1].pos, Point(0, 0)) == pytest.approx(2 * math.hypot(2, 4))

    def test_order_does_not_leak_ids(self):
        pts = [(0, 0), (5, 1), (2, 7), (-3, 2)]
        a = derive_snapshot(Configuration.build(pts), 1, FULL_SET, Frame())
        b = derive_snapshot(Configuration.build([pts[0]] + pts[:0:-1]), 1, FULL_SET, Frame())
        assert a == b


class TestMultiplicityBlindness:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 5), st.booleans())
    def test_local_unaware_single_color(self, k_here, k_there, arbitrary):
        """Stacking more robots anywhere never changes a local-unaware snapshot."""
        view = View.ARBITRARY if arbitrary else View.SET
        policy = ObservationPolicy(LightModel.FULL, view, local_aware=False)
        base = Configuration.build([(0, 0), (2, 1)], [A, A])
        stacked = Configuration.build([(0, 0)] * k_here + [(2, 1)] * k_there, [A] * (k_here + k_there))
        frame = Frame(origin=Point(0, 0))
        assert derive_snapshot(base, 1, policy, frame) == derive_snapshot(stacked, 1, policy, frame)

    def test_internal_equals_none_except_own_light(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(2, 6)
            pts = [(rng.choice([0, 1, 2]), rng.choice([0, 1])) for _ in range(n)]
            cfg = Configuration.build(pts, [rng.choice([A, B]) for _ in range(n)])
            frame = Frame(rng.uniform(0, 6), rng.uniform(0.5, 2), False, cfg.robot(1).pos)
            internal = derive_snapshot(cfg, 1, ObservationPolicy(LightModel.INTERNAL), frame)
            none = derive_snapshot(cfg, 1, ObservationPolicy(LightModel.NONE), frame)
            assert internal.own_light == cfg.robot(1).light
            assert none.own_light is None
            assert internal.locations == none.locations


class TestFrames:
    def test_identity(self):
        p = Point(1.25, -3.5)
        assert to_local(Frame(), p) == p and to_global(Frame(), p) == p

    def test_quarter_turn(self):
        f = Frame(rotation=math.pi / 2)
        q = to_local(f, Point(1, 0))
        assert q.x == pytest.approx(0, abs=1e-15) and q.y == pytest.approx(1)
        back = to_global(f, q)
        assert back.x == pytest.approx(1) and back.y == pytest.approx(0, abs=1e-15)

    def test_random_round_trip(self):
        rng = random.Random(11)
        frame = Frame(rng.uniform(0, 2 * math.pi), rng.uniform(0.1, 10), True,
                      Point(rng.uniform(-5, 5), rng.uniform(-5, 5)))
        for _ in range(100):
            p = Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
            assert distance(to_global(frame, to_local(frame, p)), p) <= 1e-12

    def test_bad_scale(self):
        with pytest.raises(ValueError):
            Frame(scale=0.0)

    def test_distances_scale(self):
        f = Frame(0.7, 3.0, True, Point(1, 1))
        a, b = Point(2, 5), Point(-1, 0)
        assert distance(f.to_local(a), f.to_local(b)) == pytest.approx(3 * distance(a, b))
