"""Exact minimum kernels: reduction fixpoint plus branch-and-bound search.

The continuous problem reduces to finite set cover: a sub-collection covers
the instance's region iff it covers every canonical representative point (the
midpoints of fully covered facet-grid cells). When the instance carries an
explicit point list the same machinery solves discrete box cover over those
points instead.

Reduction rules, applied to a fixpoint in deterministic order:

* a point with a unique remaining coverer forces that box into the kernel;
* a box whose live point set is contained in another's is dominated and
  dropped (ties drop the higher index);
* a point whose coverer set contains another point's is implied and dropped
  (ties drop the higher point index).

The surviving core is solved by depth-first branch and bound over bitmasks:
branch on the live point with the fewest remaining coverers, lower-bound by
counting points with pairwise disjoint coverer sets, warm-start with greedy
cover on the masks. The first minimum-size solution found in this fixed
order is returned, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .discretize import (
    DEFAULT_MAX_CELLS,
    coverage_discretization,
    covers_all_points,
    covers_same_region,
)
from .errors import InvalidInputError, ResourceLimitError, StateError
from .geometry import Instance, Point
from .results import KernelResult

DEFAULT_MAX_LIVE_BOXES = 32


def _point_universe(
    inst: Instance, max_cells: int
) -> tuple[list[Point], str]:
    """The finite cover universe and which mode it came from."""
    if inst.points is not None:
        return list(inst.points), "points"
    disc = coverage_discretization(inst, max_cells=max_cells)
    return list(disc.points), "region"


def _coverer_masks(inst: Instance, points: Sequence[Point]) -> list[int]:
    masks = []
    for j, p in enumerate(points):
        m = 0
        for i, b in enumerate(inst.boxes):
            if b.contains_point(p):
                m |= 1 << i
        if m == 0:
            raise InvalidInputError(
                f"point #{j} is covered by no box; no cover exists"
            )
        masks.append(m)
    return masks


@dataclass(frozen=True)
class ReducedProblem:
    """Outcome of the reduction fixpoint, before any search."""

    forced: tuple[int, ...]
    live_boxes: tuple[int, ...]
    live_points: tuple[Point, ...]
    coverers: tuple[int, ...]  # per live point, mask over live_boxes positions
    n_points_initial: int
    mode: str


def reduce_instance(
    inst: Instance, *, max_cells: int = DEFAULT_MAX_CELLS
) -> ReducedProblem:
    """Run the forced/dominance fixpoint and return the surviving core."""
    points, mode = _point_universe(inst, max_cells)
    coverers = _coverer_masks(inst, points)
    pts_of_box = [0] * inst.n
    for j, m in enumerate(coverers):
        mm = m
        while mm:
            i = (mm & -mm).bit_length() - 1
            pts_of_box[i] |= 1 << j
            mm &= mm - 1
    live_b = set(range(inst.n))
    live_p = set(range(len(points)))
    forced: list[int] = []

    def force(i: int) -> None:
        forced.append(i)
        live_b.discard(i)
        live_p.difference_update(
            j for j in list(live_p) if coverers[j] >> i & 1
        )

    changed = True
    while changed:
        changed = False
        box_mask = 0
        for i in live_b:
            box_mask |= 1 << i
        for j in sorted(live_p):
            c = coverers[j] & box_mask
            if c == 0:
                raise StateError(f"point #{j} lost all coverers mid-reduction")
            if c & (c - 1) == 0:
                force(c.bit_length() - 1)
                changed = True
                break
        if changed:
            continue
        point_mask = 0
        for j in live_p:
            point_mask |= 1 << j
        order_b = sorted(live_b)
        for a in order_b:
            pa = pts_of_box[a] & point_mask
            for b in order_b:
                if a == b or b not in live_b:
                    continue
                pb = pts_of_box[b] & point_mask
                if pa | pb == pb and (pa != pb or a > b):
                    live_b.discard(a)
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        order_p = sorted(live_p)
        for q in order_p:
            cq = coverers[q] & box_mask
            for r in order_p:
                if q == r or r not in live_p:
                    continue
                cr = coverers[r] & box_mask
                if cr | cq == cq and (cq != cr or q > r):
                    live_p.discard(q)
                    changed = True
                    break
            if changed:
                break

    lb = tuple(sorted(live_b))
    pos = {i: t for t, i in enumerate(lb)}
    lp = tuple(sorted(live_p))
    core_masks = []
    for j in lp:
        m = 0
        c = coverers[j]
        for i in lb:
            if c >> i & 1:
                m |= 1 << pos[i]
        core_masks.append(m)
    return ReducedProblem(
        forced=tuple(sorted(forced)),
        live_boxes=lb,
        live_points=tuple(points[j] for j in lp),
        coverers=tuple(core_masks),
        n_points_initial=len(points),
        mode=mode,
    )


def _greedy_masks(box_pts: list[int], all_pts: int) -> list[int]:
    """Greedy cover over bitmasks; ties pick the lowest position."""
    chosen: list[int] = []
    uncovered = all_pts
    while uncovered:
        best, best_gain = -1, 0
        for t, m in enumerate(box_pts):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best, best_gain = t, gain
        if best < 0:
            raise StateError("mask cover ran out of useful boxes")
        chosen.append(best)
        uncovered &= ~box_pts[best]
    return chosen


def _disjoint_lower_bound(
    uncovered: int, coverers: Sequence[int]
) -> int:
    """Count points whose coverer sets are pairwise disjoint."""
    used = 0
    count = 0
    m = uncovered
    while m:
        j = (m & -m).bit_length() - 1
        m &= m - 1
        if coverers[j] & used == 0:
            count += 1
            used |= coverers[j]
    return count


def _solve_core(
    coverers: Sequence[int], n_boxes: int
) -> tuple[list[int], int]:
    """Minimum positions covering all points; returns (solution, dfs nodes)."""
    n_pts = len(coverers)
    all_pts = (1 << n_pts) - 1
    box_pts = [0] * n_boxes
    for j, c in enumerate(coverers):
        cc = c
        while cc:
            t = (cc & -cc).bit_length() - 1
            box_pts[t] |= 1 << j
            cc &= cc - 1

    best = _greedy_masks(box_pts, all_pts)
    nodes = 0

    def dfs(chosen: list[int], chosen_mask: int, covered: int) -> None:
        nonlocal best, nodes
        nodes += 1
        uncovered = all_pts & ~covered
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + _disjoint_lower_bound(uncovered, coverers) >= len(best):
            return
        pick, pick_opts = -1, None
        m = uncovered
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            opts = coverers[j] & ~chosen_mask
            if opts == 0:
                return  # dead branch: point no longer coverable
            if pick_opts is None or opts.bit_count() < pick_opts.bit_count():
                pick, pick_opts = j, opts
        assert pick_opts is not None
        oo = pick_opts
        while oo:
            t = (oo & -oo).bit_length() - 1
            oo &= oo - 1
            chosen.append(t)
            dfs(chosen, chosen_mask | (1 << t), covered | box_pts[t])
            chosen.pop()

    dfs([], 0, 0)
    return best, nodes


def exact_kernel(
    inst: Instance,
    *,
    max_live_boxes: int = DEFAULT_MAX_LIVE_BOXES,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> KernelResult:
    """Provably minimum kernel (region mode) or minimum box cover (points)."""
    red = reduce_instance(inst, max_cells=max_cells)
    if len(red.live_boxes) > max_live_boxes:
        raise ResourceLimitError(
            f"{len(red.live_boxes)} boxes remain after reduction, above the "
            f"search cap {max_live_boxes}; raise max_live_boxes to proceed"
        )
    if red.live_points:
        core, nodes = _solve_core(red.coverers, len(red.live_boxes))
        picked = [red.live_boxes[t] for t in core]
    else:
        picked, nodes = [], 0
    kernel = tuple(sorted(set(red.forced) | set(picked)))
    if red.mode == "points":
        assert inst.points is not None
        ok = covers_all_points(kernel, inst, inst.points)
    else:
        ok = covers_same_region(kernel, inst, max_cells=max_cells)
    if not ok:
        raise StateError("exact kernel failed its own coverage certificate")
    return KernelResult(
        algorithm="exact",
        indices=kernel,
        certified=True,
        stats={
            "mode": red.mode,
            "forced": len(red.forced),
            "reduced_boxes": len(red.live_boxes),
            "reduced_points": len(red.live_points),
            "points_initial": red.n_points_initial,
            "search_nodes": nodes,
        },
    )


def brute_force_kernel(
    inst: Instance, *, max_cells: int = DEFAULT_MAX_CELLS
) -> KernelResult:
    """Smallest covering subset by exhaustive enumeration (test oracle)."""
    points, mode = _point_universe(inst, max_cells)
    coverers = _coverer_masks(inst, points)
    pts_of_box = [0] * inst.n
    for j, m in enumerate(coverers):
        mm = m
        while mm:
            i = (mm & -mm).bit_length() - 1
            pts_of_box[i] |= 1 << j
            mm &= mm - 1
    all_pts = (1 << len(points)) - 1
    for r in range(inst.n + 1):
        for combo in combinations(range(inst.n), r):
            got = 0
            for i in combo:
                got |= pts_of_box[i]
            if got == all_pts:
                return KernelResult(
                    algorithm="brute",
                    indices=tuple(combo),
                    certified=True,
                    stats={"mode": mode, "points": len(points)},
                )
    raise StateError("exhaustive search found no cover")  # unreachable
