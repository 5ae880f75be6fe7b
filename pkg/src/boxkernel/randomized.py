"""Randomized kernel via iterative reweighting and sampled candidate nets.

The size guess ``k`` doubles stage by stage. Each stage resets all point
weights to one, then repeatedly finds a *light* real point — weight strictly
below ``covered_total / (2k)`` — and doubles the weight of every box
containing it (which, through the index, doubles every represented point
inside those boxes). The doubling budget for the stage is

    mu_k = max(0, ceil(4 k log2(n / k)))

with ``n`` the number of boxes. If light points persist past the budget, the
stage is abandoned and ``k`` doubles. Once no light point remains, candidate
nets are drawn: ``ceil(16 k log2(16 k))`` box draws with probability
proportional to current box weight (distinct indices form the net), accepted
iff the net covers the instance's exact region. After ``ceil(log2 n) + 1``
failed nets the stage is abandoned. If ``k`` outgrows ``2n`` the computation
falls back to the deterministic greedy algorithm and flags it.

All weights stay exact powers-of-two integers; thresholds are exact
fractions. For a fixed seed the run is fully deterministic.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .discretize import DEFAULT_MAX_CELLS, covers_same_region, union_volume_scaled
from .errors import StateError
from .geometry import Instance, Point
from .greedy import greedy_kernel
from .partition import PartitionTree
from .results import KernelResult


@dataclass(frozen=True)
class BGConfig:
    """Tuning knobs for :func:`bg_kernel`.

    ``max_retries``: nets drawn per stage before giving up (default
    ``ceil(log2 n) + 1``). ``sample_uniform``: draw net candidates uniformly
    instead of weight-proportionally (diagnostic mode; the guarantee needs
    weighted draws). ``weight_report_cap``: stages report the exact maximum
    point weight only when the index represents at most this many real points
    (the value is diagnostic, compared against n^4/k^3, never asserted).
    """

    max_retries: Optional[int] = None
    sample_uniform: bool = False
    max_cells: int = DEFAULT_MAX_CELLS
    weight_report_cap: int = 20_000


def doubling_budget(n: int, k: int) -> int:
    """Stage budget mu_k = max(0, ceil(4 k log2(n/k)))."""
    if k >= n:
        return 0
    return max(0, math.ceil(4 * k * math.log2(n / k)))


def net_sample_count(k: int) -> int:
    """Draws per net: ceil(16 k log2(16 k)); exact for power-of-two k."""
    t = 16 * k
    j = t.bit_length() - 1
    if t == 1 << j:
        return t * j
    return math.ceil(t * math.log2(t))


def weight_doubling_step(idx: PartitionTree, p: Point) -> int:
    """Double the weights of all boxes containing ``p``; returns how many."""
    count = 0
    for b in idx.instance.boxes:
        if b.contains_point(p):
            idx.update_box_weights(b, 2)
            count += 1
    if count == 0:
        raise StateError(f"no box contains the light point {p}")
    return count


def build_candidate_net(
    idx: PartitionTree,
    k: int,
    rng: random.Random,
    *,
    uniform: bool = False,
) -> tuple[int, ...]:
    """Distinct indices of a weight-proportional box sample of net size."""
    n = idx.instance.n
    size = net_sample_count(k)
    picked: set[int] = set()
    if uniform:
        for _ in range(size):
            picked.add(rng.randrange(n))
        return tuple(sorted(picked))
    weights = [idx.query_box_weight(b) for b in idx.instance.boxes]
    total = sum(weights)
    if total <= 0:
        raise StateError("all box weights are zero; nothing to sample")
    cum = []
    acc = 0
    for w in weights:
        acc += w
        cum.append(acc)
    for _ in range(size):
        target = Fraction(rng.random()) * total
        picked.add(bisect_right(cum, target))
    return tuple(sorted(picked))


def _max_point_weight(idx: PartitionTree, cap: int):
    """Exact max represented real-point weight, or None above the cap."""
    if idx.n_real_points > cap:
        return None
    best = 0
    for p in idx.covered_points():
        w = idx.point_weight(p)
        if w > best:
            best = w
    return best


def bg_kernel(
    inst: Instance,
    *,
    seed: int = 0,
    config: Optional[BGConfig] = None,
    index: Optional[PartitionTree] = None,
) -> KernelResult:
    """Randomized kernel; certified exact-region coverage on success paths."""
    cfg = config or BGConfig()
    rng = random.Random(seed)
    n = inst.n
    max_retries = (
        cfg.max_retries
        if cfg.max_retries is not None
        else math.ceil(math.log2(n)) + 1 if n > 1 else 1
    )
    idx = index if index is not None else PartitionTree(inst, audit=False)
    full_volume = union_volume_scaled(inst.boxes, max_cells=cfg.max_cells)
    stages: list[dict[str, object]] = []

    k = 1
    while k <= 2 * n:
        idx.reset_weights()
        budget = doubling_budget(n, k)
        steps = 0
        while steps < budget:
            threshold = Fraction(idx.covered_summary().total, 2 * k)
            p = idx.find_light_point(threshold)
            if p is None:
                break
            weight_doubling_step(idx, p)
            steps += 1
        record: dict[str, object] = {
            "k": k,
            "doubling_steps": steps,
            "budget": budget,
            "nets_drawn": 0,
            "accepted": False,
            "max_point_weight": _max_point_weight(idx, cfg.weight_report_cap),
            "weight_bound": n**4 / k**3,
        }
        stages.append(record)
        threshold = Fraction(idx.covered_summary().total, 2 * k)
        if idx.find_light_point(threshold) is not None:
            k *= 2  # budget exhausted with light points remaining
            continue
        summary = idx.covered_summary()
        if summary.min is not None and summary.min < threshold:
            raise StateError("light point missed by the light-point search")
        for attempt in range(max_retries):
            net = build_candidate_net(idx, k, rng, uniform=cfg.sample_uniform)
            record["nets_drawn"] = attempt + 1
            if covers_same_region(
                net, inst, max_cells=cfg.max_cells, full_volume_scaled=full_volume
            ):
                record["accepted"] = True
                record["net_size"] = len(net)
                return KernelResult(
                    algorithm="bg",
                    indices=net,
                    certified=True,
                    stats={
                        "seed": seed,
                        "stages": stages,
                        "fallback": False,
                        "real_points": idx.n_real_points,
                    },
                )
        k *= 2

    fallback = greedy_kernel(inst, index=idx, max_cells=cfg.max_cells)
    full_set = tuple(range(n))
    indices = fallback.indices if fallback.size <= n else full_set
    return KernelResult(
        algorithm="bg",
        indices=indices,
        certified=fallback.certified,
        stats={
            "seed": seed,
            "stages": stages,
            "fallback": True,
            "fallback_stats": dict(fallback.stats),
            "real_points": idx.n_real_points,
        },
    )
