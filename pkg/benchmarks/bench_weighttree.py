"""Benchmark: compiled vs pure-Python interval weight tree.

Two layers:

* micro — identical seeded operation mixes (range updates, aggregate
  queries, samples, min-point scans) driven straight at both tree
  implementations, verifying equal outputs while timing;
* end-to-end — greedy kernels on random 2-D instances with the 1-D backend
  injected into the partition index, again checking result parity.

Run:  python3 benchmarks/bench_weighttree.py [--points 20000] [--ops 40000]
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from boxkernel import greedy_kernel
from boxkernel.generators import random_instance
from boxkernel.partition import PartitionTree
from boxkernel import _weighttree_py

try:
    from boxkernel import _weighttree  # compiled extension

    BACKENDS = [
        ("pure-python", _weighttree_py.IntervalWeightTree),
        ("cython", _weighttree.IntervalWeightTree),
    ]
except ImportError:
    BACKENDS = [("pure-python", _weighttree_py.IntervalWeightTree)]


def _op_mix(n_points: int, n_ops: int, seed: int):
    rng = random.Random(seed)
    pts = sorted(rng.sample(range(1, 10_000_000), n_points))
    marks = [rng.random() < 0.6 for _ in range(n_points)]
    ops = []
    for _ in range(n_ops):
        kind = rng.randrange(5)
        a = rng.choice(pts)
        b = rng.choice(pts)
        if a > b:
            a, b = b, a
        if kind == 0:
            ops.append(("update", a, b))
        elif kind == 1:
            ops.append(("aggregates", a, b))
        elif kind == 2:
            ops.append(("sample", Fraction(rng.randrange(1, 1000), 1000)))
        elif kind == 3:
            ops.append(("min_point", bool(rng.randrange(2))))
        else:
            ops.append(("point_weight", a))
    return pts, marks, ops


def run_micro(tree_cls, pts, marks, ops):
    tree = tree_cls(pts, marks)
    outputs = []
    started = time.perf_counter()
    for op in ops:
        if op[0] == "update":
            tree.update_weights(op[1], op[2], 2)
            if tree.total() > 1 << 4096:  # keep integer sizes bounded
                tree.reset_weights()
        elif op[0] == "aggregates":
            outputs.append(tree.range_aggregates(op[1], op[2]))
        elif op[0] == "sample":
            total = tree.total()
            outputs.append(tree.sample(op[1] * total))
        elif op[0] == "min_point":
            outputs.append(tree.min_point(covered_only=op[1]))
        else:
            outputs.append(tree.point_weight(op[1]))
    elapsed = time.perf_counter() - started
    return elapsed, outputs


def run_end_to_end(tree_cls, n_boxes: int, seed: int):
    inst = random_instance(n_boxes, 2, seed=seed, coord_max=400, max_side=60)
    started = time.perf_counter()
    idx = PartitionTree(inst, tree_cls=tree_cls)
    result = greedy_kernel(inst, index=idx)
    elapsed = time.perf_counter() - started
    return elapsed, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=20_000)
    ap.add_argument("--ops", type=int, default=40_000)
    ap.add_argument("--boxes", type=int, default=400)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if len(BACKENDS) == 1:
        print("note: compiled extension not importable; only pure Python runs")

    print(f"micro: {args.points} points, {args.ops} mixed ops")
    pts, marks, ops = _op_mix(args.points, args.ops, args.seed)
    micro = {}
    baseline_out = None
    for name, cls in BACKENDS:
        elapsed, outputs = run_micro(cls, pts, marks, ops)
        micro[name] = elapsed
        if baseline_out is None:
            baseline_out = outputs
        elif outputs != baseline_out:
            raise AssertionError(f"{name} outputs diverge from baseline")
        print(f"  {name:12s} {elapsed:8.3f}s")
    if len(micro) == 2:
        a, b = micro["pure-python"], micro["cython"]
        print(f"  speedup: {a / b:.2f}x (outputs identical)")

    print(f"end-to-end: greedy kernel on {args.boxes} random boxes")
    e2e = {}
    baseline_res = None
    for name, cls in BACKENDS:
        elapsed, result = run_end_to_end(cls, args.boxes, args.seed)
        e2e[name] = elapsed
        if baseline_res is None:
            baseline_res = result
        elif result.indices != baseline_res.indices:
            raise AssertionError(f"{name} kernel diverges from baseline")
        print(f"  {name:12s} {elapsed:8.3f}s  (size {result.size})")
    if len(e2e) == 2:
        a, b = e2e["pure-python"], e2e["cython"]
        print(f"  speedup: {a / b:.2f}x (kernels identical)")


if __name__ == "__main__":
    main()
