"""Exact solver tests: reduction fixpoint, branch-and-bound, and the
exhaustive oracle they must both agree with."""

import random

import pytest

from conftest import small_random_instance

from boxkernel.discretize import covers_all_points, covers_same_region
from boxkernel.errors import InvalidInputError, ResourceLimitError
from boxkernel.exact import (
    brute_force_kernel,
    exact_kernel,
    reduce_instance,
)
from boxkernel.geometry import Instance


def four_cycle_points_instance() -> Instance:
    """Four strips around a square, each point covered by exactly two.

    No unique coverers, no dominated boxes, no implied points -- the
    reduction must leave the whole 4-cycle as the live core.
    """
    return Instance.from_raw(
        2,
        [
            ((0, 0), (4, 1)),  # bottom: p0 p1
            ((3, 0), (4, 4)),  # right:  p1 p2
            ((0, 3), (4, 4)),  # top:    p2 p3
            ((0, 0), (1, 4)),  # left:   p3 p0
        ],
        points=[(0, 0), (4, 0), (4, 4), (0, 4)],
    )


# ---------------------------------------------------------------------------
# Fixtures solved purely by reduction
# ---------------------------------------------------------------------------


def test_t3_solved_by_forcing_alone(t3):
    red = reduce_instance(t3)
    assert set(red.forced) == {0, 1}
    assert red.live_points == ()  # forcing covered everything; no search left
    r = exact_kernel(t3)
    assert r.indices == (0, 1)
    assert r.certified
    assert r.stats["search_nodes"] == 0
    assert r.stats["mode"] == "region"
    assert r.stats["forced"] == 2


def test_w2_and_cross(w2, cross):
    assert exact_kernel(w2).indices == (0, 1)
    assert exact_kernel(cross).indices == (0, 1)


def test_dominated_boxes_are_dropped():
    inst = Instance.from_raw(
        2, [((0, 0), (4, 4)), ((1, 1), (3, 3)), ((0, 0), (2, 2))]
    )
    r = exact_kernel(inst)
    assert r.indices == (0,)
    red = reduce_instance(inst)
    assert set(red.forced) <= {0}
    assert not red.live_points


# ---------------------------------------------------------------------------
# A core the reduction cannot touch
# ---------------------------------------------------------------------------


def test_four_cycle_survives_reduction_whole():
    inst = four_cycle_points_instance()
    red = reduce_instance(inst)
    assert red.forced == ()
    assert red.live_boxes == (0, 1, 2, 3)
    assert len(red.live_points) == 4
    assert red.mode == "points"
    assert red.n_points_initial == 4


def test_four_cycle_optimum_is_two_opposite_strips():
    inst = four_cycle_points_instance()
    r = exact_kernel(inst)
    assert r.size == 2
    assert r.certified
    assert r.stats["mode"] == "points"
    assert covers_all_points(r.indices, inst, inst.points)
    assert brute_force_kernel(inst).indices == (0, 2)


def test_live_core_above_cap_raises():
    inst = four_cycle_points_instance()
    with pytest.raises(ResourceLimitError):
        exact_kernel(inst, max_live_boxes=3)
    # and the cap is inclusive: exactly 4 live boxes fit a cap of 4
    assert exact_kernel(inst, max_live_boxes=4).size == 2


# ---------------------------------------------------------------------------
# Error paths
# ---------------------------------------------------------------------------


def test_uncoverable_point_is_rejected():
    inst = Instance.from_raw(
        1, [((0,), (2,))], points=[(1,), (10,)]
    )
    with pytest.raises(InvalidInputError):
        exact_kernel(inst)
    with pytest.raises(InvalidInputError):
        brute_force_kernel(inst)


def test_cell_cap_propagates(t3):
    with pytest.raises(ResourceLimitError):
        exact_kernel(t3, max_cells=1)


# ---------------------------------------------------------------------------
# Agreement with the exhaustive oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(20))
def test_matches_brute_force_on_random_instances(seed):
    rng = random.Random(3100 + seed)
    inst = small_random_instance(rng, n=rng.randint(1, 7), dim=rng.randint(1, 2))
    fast = exact_kernel(inst)
    slow = brute_force_kernel(inst)
    assert fast.size == slow.size
    assert fast.certified and slow.certified
    assert covers_same_region(fast.indices, inst)
    assert covers_same_region(slow.indices, inst)


def test_points_mode_matches_brute_force():
    rng = random.Random(414)
    for _ in range(10):
        inst0 = small_random_instance(rng, n=rng.randint(2, 6), dim=2)
        # sample explicit points from box corners so they are all coverable
        pts = []
        for b in inst0.boxes:
            pts.append(tuple(c // 2 for c in b.lo))
        inst = Instance.from_raw(2, inst0.raw_boxes(), points=pts)
        fast = exact_kernel(inst)
        slow = brute_force_kernel(inst)
        assert fast.size == slow.size
        assert covers_all_points(fast.indices, inst, inst.points)


def test_deterministic(t3):
    inst = four_cycle_points_instance()
    assert exact_kernel(inst).indices == exact_kernel(inst).indices
    assert exact_kernel(t3).indices == exact_kernel(t3).indices
