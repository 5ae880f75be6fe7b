"""Greedy kernel: repeatedly take the box covering the most remaining weight.

Selecting a box zeroes the weight of every represented point inside it, so
"remaining weight" of a box is exactly its current index query. The covered
total hits zero precisely when the selection covers every real point, which
(by the local-grid representativeness of the index) happens precisely when
the selection covers the instance's whole region — so the loop's stop rule is
itself a coverage proof. The returned result is still certified through the
independent exact-volume route unless the caller opts out.

Box weights never increase as the selection grows (updates only multiply by
zero), so the selection is computed lazily: stale heap entries are upper
bounds, and an entry whose refreshed weight still tops the heap is the true
argmax. Ties break toward the lowest box index, which the heap order
(-weight, index) preserves exactly.
"""

from __future__ import annotations

import heapq
import math

from .discretize import DEFAULT_MAX_CELLS, covers_same_region
from .errors import StateError
from .geometry import Instance
from .partition import PartitionTree
from .results import KernelResult


def greedy_kernel(
    inst: Instance,
    *,
    index: PartitionTree | None = None,
    certify: bool = True,
    audit: bool = False,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> KernelResult:
    """Greedy set-cover on the weight index; ln(N)+1 approximation.

    ``index`` reuses (and mutates) an existing index after resetting its
    weights; otherwise a fresh one is built. ``audit`` applies to that fresh
    build only. N is the index's real-point count, recorded in stats.
    """
    idx = index if index is not None else PartitionTree(inst, audit=audit)
    idx.reset_weights()
    n = inst.n
    order: list[int] = []

    heap: list[tuple[object, int]] = []
    for i in range(n):
        w = idx.query_box_weight(inst.boxes[i])
        heap.append((-w, i))
    heapq.heapify(heap)

    for _ in range(n + 1):
        if idx.covered_summary().total == 0:
            break
        while True:
            if not heap:
                raise StateError("positive covered weight but no candidate boxes")
            neg_w, i = heap[0]
            fresh = idx.query_box_weight(inst.boxes[i])
            if fresh == -neg_w:
                break
            heapq.heapreplace(heap, (-fresh, i))
        if -heap[0][0] <= 0:
            raise StateError("positive covered weight but all box weights are zero")
        _, chosen = heapq.heappop(heap)
        order.append(chosen)
        idx.update_box_weights(inst.boxes[chosen], 0)
    else:
        raise StateError("greedy did not terminate within n iterations")

    n_real = idx.n_real_points
    certified = False
    if certify:
        certified = covers_same_region(order, inst, max_cells=max_cells)
        if not certified:
            raise StateError(
                "greedy selection failed region certification; index inconsistent"
            )
    stats = {
        "iterations": len(order),
        "selection_order": list(order),
        "real_points": n_real,
        "approx_bound_factor": (math.log(n_real) + 1.0) if n_real > 0 else 0.0,
    }
    return KernelResult(
        algorithm="greedy",
        indices=tuple(sorted(order)),
        certified=certified,
        stats=stats,
    )
