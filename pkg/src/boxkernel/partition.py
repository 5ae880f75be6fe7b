"""Hierarchical weight index over a box instance.

The index answers total-weight queries and multiplicative weight updates for
any instance box without ever materializing the full discretization. It is a
binary space partition: internal nodes split a cell at a box facet, recursion
stopping once every box that meets the cell with positive volume either
contains it outright or is a *slab* there (spans the cell in all dimensions
but one). Each leaf then stores one interval weight tree per dimension over
the local grid midpoints (cell bounds plus the clipped facets of that
dimension's slabs), and the represented points of the leaf are the Cartesian
product of those per-dimension midpoints.

Phantoms: a product-grid point covered by no box (no coordinate lies inside a
same-axis slab projection, and nothing contains the cell) is a *phantom* and
is excluded from all covered aggregates — the covered total, the covered
minimum, light-point search, and sampling. Writes still touch phantoms (the
product structure demands it) but their weights are never read.

Aggregate algebra (per node, tag-inclusive like the 1-D tree):

    covered_sum(leaf)  = mu * (prod_i S_i - prod_i U_i)      [general]
                       = mu * prod_i S_i                     [fully covered]
    covered_min(leaf)  = mu * min_i CM_i * prod_{j != i} M_j [general]
                       = mu * prod_i M_i                     [fully covered]
    covered_sum(inner) = mu * (covered_sum(l) + covered_sum(r))

with S/U/M/CM the per-dimension total/uncovered-total/minimum/covered-minimum
and None propagating as "no covered point". The uncovered set is itself a
Cartesian product, which is what makes the subtraction form exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import AuditError, InvalidInputError, StateError
from .geometry import Box, Instance, Point
from .weighttree import IntervalWeightTree

#: Rejection draws per leaf before sampling falls back to explicit enumeration.
SAMPLE_REJECTION_CAP = 64


@dataclass(frozen=True)
class CoverSummary:
    """Root-level view of the real (covered) point set."""

    total: object
    min: object  # None when there are no real points
    min_point: Optional[Point]


@dataclass
class BuildStats:
    nodes: int = 0
    leaves: int = 0
    height: int = 0
    real_points: int = 0
    max_slabs_per_leaf: int = 0
    total_slab_incidences: int = 0
    max_leaves_per_box: int = 0
    mean_leaves_per_box: float = 0.0
    audit_passed: bool = False

    def as_dict(self) -> dict[str, object]:
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "height": self.height,
            "real_points": self.real_points,
            "max_slabs_per_leaf": self.max_slabs_per_leaf,
            "total_slab_incidences": self.total_slab_incidences,
            "max_leaves_per_box": self.max_leaves_per_box,
            "mean_leaves_per_box": self.mean_leaves_per_box,
            "audit_passed": self.audit_passed,
        }


class _Node:
    __slots__ = (
        "cell",
        "mu",
        "csum",
        "cmin",
        "fully_covered",
        "axis",
        "split",
        "left",
        "right",
        "trees",
        "slabs",
        "containing",
    )

    def __init__(self, cell: Box):
        self.cell = cell
        self.mu = 1
        self.csum = 0
        self.cmin = None
        self.fully_covered = False
        self.axis = -1
        self.split = 0
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None
        self.trees: Optional[list[IntervalWeightTree]] = None
        self.slabs: Optional[list[tuple[int, int, int, int]]] = None  # idx, axis, lo, hi
        self.containing: Optional[list[int]] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _min_none(a, b):
    if a is None:
        return b
    if b is None or a <= b:
        return a
    return b


def _classify(box: Box, cell: Box) -> tuple[str, int]:
    """('contains'|'slab'|'offender'|'out', cut_axis_or_-1) for box vs cell."""
    # Disjointness must be settled across *all* axes before counting cuts:
    # a box clear of the cell on a later axis is 'out' no matter how many
    # earlier axes it straddles.
    for k in range(cell.dim):
        if max(box.lo[k], cell.lo[k]) >= min(box.hi[k], cell.hi[k]):
            return "out", -1
    cut = -1
    cuts = 0
    for k in range(cell.dim):
        if not (box.lo[k] <= cell.lo[k] and cell.hi[k] <= box.hi[k]):
            cut = k
            cuts += 1
            if cuts > 1:
                return "offender", -1
    if cuts == 0:
        return "contains", -1
    return "slab", cut


class PartitionTree:
    """Weight index over an instance's boxes; see the module docstring.

    The tree shape and covered marks are static after construction; only the
    weights mutate. ``tree_cls`` injects the 1-D backend (used by benchmarks
    to pin one implementation); the default follows the import-time selection.
    """

    def __init__(
        self,
        inst: Instance,
        *,
        tree_cls: Callable[..., IntervalWeightTree] = IntervalWeightTree,
        audit: bool = True,
    ):
        self.instance = inst
        self.dim = inst.dim
        self._tree_cls = tree_cls
        self.counters: dict[str, int] = {
            "queries": 0,
            "updates": 0,
            "nodes_visited": 0,
            "leaves_visited": 0,
        }
        self.stats = BuildStats()
        self._leaves: list[_Node] = []
        self.root = self._build(
            inst.bounding(), list(range(inst.n)), 0, 1
        )
        self._finish_build_stats()
        if audit:
            self.audit()
            self.stats.audit_passed = True

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _build(
        self, cell: Box, candidates: list[int], depth: int, level: int
    ) -> _Node:
        boxes = self.instance.boxes
        node = _Node(cell)
        self.stats.nodes += 1
        self.stats.height = max(self.stats.height, level)

        containing: list[int] = []
        slabs: list[tuple[int, int]] = []
        offenders: list[int] = []
        for i in candidates:
            kind, axis = _classify(boxes[i], cell)
            if kind == "contains":
                containing.append(i)
            elif kind == "slab":
                slabs.append((i, axis))
            elif kind == "offender":
                offenders.append(i)
            # 'out' candidates are dropped silently

        if not offenders:
            self._init_leaf(node, containing, slabs)
            return node

        # Split at a median offender facet, preferring the round-robin axis
        # but advancing to the first axis that still has a facet strictly
        # inside the cell (guaranteed to exist for an offender).
        axis = -1
        facets: list[int] = []
        for t in range(self.dim):
            a = (depth + t) % self.dim
            inside = set()
            for i in offenders:
                for c in (boxes[i].lo[a], boxes[i].hi[a]):
                    if cell.lo[a] < c < cell.hi[a]:
                        inside.add(c)
            if inside:
                axis = a
                facets = sorted(inside)
                depth = depth + t  # resume round-robin after this axis
                break
        if axis < 0:  # pragma: no cover - unreachable, see _classify note
            raise AuditError("offender without an interior facet")
        split = facets[len(facets) // 2]

        node.axis = axis
        node.split = split
        lo_cell = Box(
            cell.lo, tuple(split if k == axis else c for k, c in enumerate(cell.hi))
        )
        hi_cell = Box(
            tuple(split if k == axis else c for k, c in enumerate(cell.lo)), cell.hi
        )
        keep = containing + [i for i, _ in slabs] + offenders
        node.left = self._build(
            lo_cell,
            [i for i in keep if boxes[i].overlaps_positively(lo_cell)],
            depth + 1,
            level + 1,
        )
        node.right = self._build(
            hi_cell,
            [i for i in keep if boxes[i].overlaps_positively(hi_cell)],
            depth + 1,
            level + 1,
        )
        self._pull(node)
        return node

    def _init_leaf(
        self, node: _Node, containing: list[int], slabs: list[tuple[int, int]]
    ) -> None:
        boxes = self.instance.boxes
        cell = node.cell
        node.fully_covered = bool(containing)
        node.containing = sorted(containing)
        clipped: list[tuple[int, int, int, int]] = []
        per_dim_facets: list[set[int]] = [
            {cell.lo[k], cell.hi[k]} for k in range(self.dim)
        ]
        per_dim_intervals: list[list[tuple[int, int]]] = [[] for _ in range(self.dim)]
        for i, axis in slabs:
            lo = max(boxes[i].lo[axis], cell.lo[axis])
            hi = min(boxes[i].hi[axis], cell.hi[axis])
            clipped.append((i, axis, lo, hi))
            per_dim_facets[axis].update((lo, hi))
            per_dim_intervals[axis].append((lo, hi))
        node.slabs = clipped

        trees: list[IntervalWeightTree] = []
        for k in range(self.dim):
            endpoints = sorted(per_dim_facets[k])
            mids: list[int] = []
            marks: list[bool] = []
            intervals = sorted(per_dim_intervals[k])
            for a, b in zip(endpoints, endpoints[1:]):
                if (a + b) % 2:
                    raise AuditError(f"odd midpoint sum on axis {k}: {a}+{b}")
                m = (a + b) // 2
                mids.append(m)
                marks.append(any(lo <= m <= hi for lo, hi in intervals))
            trees.append(self._tree_cls(mids, marks))
        node.trees = trees
        self._leaf_pull(node)

        self._leaves.append(node)
        self.stats.leaves += 1
        self.stats.max_slabs_per_leaf = max(self.stats.max_slabs_per_leaf, len(clipped))
        self.stats.total_slab_incidences += len(clipped)

    def _finish_build_stats(self) -> None:
        per_box = [0] * self.instance.n
        real = 0
        for leaf in self._leaves:
            for i in leaf.containing or []:
                per_box[i] += 1
            for i, _, _, _ in leaf.slabs or []:
                per_box[i] += 1
            real += self._leaf_real_count(leaf)
        self.stats.real_points = real
        self.stats.max_leaves_per_box = max(per_box, default=0)
        self.stats.mean_leaves_per_box = (
            sum(per_box) / len(per_box) if per_box else 0.0
        )

    @staticmethod
    def _leaf_real_count(leaf: _Node) -> int:
        assert leaf.trees is not None
        total = 1
        phantom = 1
        for t in leaf.trees:
            total *= t.n
            phantom *= t.n - t.covered_count
        return total if leaf.fully_covered else total - phantom

    # ------------------------------------------------------------------
    # Aggregate maintenance
    # ------------------------------------------------------------------

    def _pull(self, node: _Node) -> None:
        l = node.left
        r = node.right
        assert l is not None and r is not None
        node.csum = node.mu * (l.csum + r.csum)
        c = _min_none(l.cmin, r.cmin)
        node.cmin = None if c is None else node.mu * c

    def _leaf_pull(self, node: _Node) -> None:
        trees = node.trees
        assert trees is not None
        s = 1
        u = 1
        m = 1
        for t in trees:
            s *= t.total()
            u *= t.uncovered_total()
            m *= t.min_weight()
        if node.fully_covered:
            node.csum = node.mu * s
            node.cmin = node.mu * m
            return
        node.csum = node.mu * (s - u)
        best = None
        for i, t in enumerate(trees):
            cm = t.covered_min()
            if cm is None:
                continue
            cand = cm
            for j, o in enumerate(trees):
                if j != i:
                    cand = cand * o.min_weight()
            best = _min_none(best, cand)
        node.cmin = None if best is None else node.mu * best

    @staticmethod
    def _scale(node: _Node, alpha) -> None:
        node.mu = node.mu * alpha
        node.csum = node.csum * alpha
        if node.cmin is not None:
            node.cmin = node.cmin * alpha

    # ------------------------------------------------------------------
    # Queries and updates
    # ------------------------------------------------------------------

    def query_box_weight(self, b: Box):
        """Total weight of real represented points inside the closed box."""
        self.counters["queries"] += 1
        return self._query(self.root, b)

    def _query(self, node: _Node, b: Box):
        self.counters["nodes_visited"] += 1
        cell = node.cell
        if not b.overlaps_positively(cell):
            return 0
        if b.contains_box(cell):
            return node.csum
        if node.is_leaf:
            self.counters["leaves_visited"] += 1
            return self._leaf_query(node, b)
        assert node.left is not None and node.right is not None
        return node.mu * (self._query(node.left, b) + self._query(node.right, b))

    def _leaf_query(self, node: _Node, b: Box):
        trees = node.trees
        cell = node.cell
        assert trees is not None
        s = 1
        u = 1
        for k, t in enumerate(trees):
            lo = max(b.lo[k], cell.lo[k])
            hi = min(b.hi[k], cell.hi[k])
            agg = t.range_aggregates(lo, hi)
            s *= agg.sum
            if not node.fully_covered:
                u *= agg.uncovered_sum
        inner = s if node.fully_covered else s - u
        return node.mu * inner

    def update_box_weights(self, b: Box, alpha) -> None:
        """Multiply the weight of every represented point inside ``b`` by alpha."""
        if not isinstance(alpha, (int, Fraction)):
            raise InvalidInputError(f"weight factor must be rational, got {alpha!r}")
        if alpha < 0:
            raise InvalidInputError(f"weight factor must be >= 0, got {alpha}")
        self.counters["updates"] += 1
        self._update(self.root, b, alpha)

    def _update(self, node: _Node, b: Box, alpha) -> None:
        self.counters["nodes_visited"] += 1
        cell = node.cell
        if not b.overlaps_positively(cell):
            return
        if b.contains_box(cell):
            self._scale(node, alpha)
            return
        if node.is_leaf:
            self.counters["leaves_visited"] += 1
            self._leaf_update(node, b, alpha)
            return
        assert node.left is not None and node.right is not None
        self._update(node.left, b, alpha)
        self._update(node.right, b, alpha)
        self._pull(node)

    def _leaf_update(self, node: _Node, b: Box, alpha) -> None:
        kind, axis = _classify(b, node.cell)
        if kind != "slab":
            # 'contains' is handled by the caller; anything else cannot be
            # expressed through the per-dimension product structure.
            raise StateError(
                f"update box is not a slab of the leaf cell (classified {kind!r}); "
                "only instance boxes (or slab-shaped ranges) are updatable"
            )
        trees = node.trees
        cell = node.cell
        assert trees is not None
        lo = max(b.lo[axis], cell.lo[axis])
        hi = min(b.hi[axis], cell.hi[axis])
        trees[axis].update_weights(lo, hi, alpha)
        self._leaf_pull(node)

    # ------------------------------------------------------------------
    # Covered-point views
    # ------------------------------------------------------------------

    def covered_summary(self) -> CoverSummary:
        root = self.root
        if root.cmin is None:
            return CoverSummary(total=root.csum, min=None, min_point=None)
        return CoverSummary(
            total=root.csum, min=root.cmin, min_point=self._min_point()
        )

    def _min_point(self) -> Point:
        node = self.root
        while not node.is_leaf:
            assert node.left is not None and node.right is not None
            lc = node.left.cmin
            rc = node.right.cmin
            if lc is None:
                node = node.right
            elif rc is None or lc <= rc:
                node = node.left
            else:
                node = node.right
        return self._leaf_min_point(node)

    def _leaf_min_point(self, leaf: _Node) -> Point:
        trees = leaf.trees
        assert trees is not None
        if leaf.fully_covered:
            coords = []
            for t in trees:
                mp = t.min_point(covered_only=False)
                assert mp is not None
                coords.append(mp[0])
            return tuple(coords)
        mins = [t.min_weight() for t in trees]
        best_axis = -1
        best_val = None
        for i, t in enumerate(trees):
            cm = t.covered_min()
            if cm is None:
                continue
            cand = cm
            for j in range(len(trees)):
                if j != i:
                    cand = cand * mins[j]
            if best_val is None or cand < best_val:
                best_val = cand
                best_axis = i
        if best_axis < 0:
            raise StateError("no real points in this leaf")
        coords = []
        for i, t in enumerate(trees):
            mp = t.min_point(covered_only=(i == best_axis))
            assert mp is not None
            coords.append(mp[0])
        return tuple(coords)

    def find_light_point(self, threshold) -> Optional[Point]:
        """A real point with weight strictly below ``threshold``, else None."""
        if threshold < 0:
            raise InvalidInputError(f"threshold must be >= 0, got {threshold}")
        cmin = self.root.cmin
        if cmin is None or cmin >= threshold:
            return None
        return self._min_point()

    def point_weight(self, p: Sequence[int]):
        """Current weight of a represented point (exact coordinates required)."""
        if len(p) != self.dim:
            raise InvalidInputError(f"point arity {len(p)} != dimension {self.dim}")
        node = self.root
        acc = 1
        while not node.is_leaf:
            acc = acc * node.mu
            assert node.left is not None and node.right is not None
            c = p[node.axis]
            if c == node.split:
                raise InvalidInputError(
                    f"{tuple(p)} lies on a cell boundary; not a represented point"
                )
            node = node.left if c < node.split else node.right
        acc = acc * node.mu
        trees = node.trees
        assert trees is not None
        for k, t in enumerate(trees):
            acc = acc * t.point_weight(p[k])
        return acc

    def is_real_point(self, p: Sequence[int]) -> bool:
        """True iff ``p`` is a represented point that is covered by some box."""
        node = self.root
        while not node.is_leaf:
            c = p[node.axis]
            if c == node.split:
                return False
            node = node.left if c < node.split else node.right  # type: ignore[assignment]
        trees = node.trees
        assert trees is not None
        if node.fully_covered:
            return all(self._coord_in_tree(t, p[k]) for k, t in enumerate(trees))
        covered_any = False
        for k, t in enumerate(trees):
            if not self._coord_in_tree(t, p[k]):
                return False
            if t.is_covered(p[k]):
                covered_any = True
        return covered_any

    @staticmethod
    def _coord_in_tree(tree: IntervalWeightTree, coord: int) -> bool:
        try:
            tree.point_weight(coord)
        except InvalidInputError:
            return False
        return True

    def covered_points(self) -> list[Point]:
        """Explicit enumeration of all real points (small instances only)."""
        out: list[Point] = []
        for leaf in self._leaves:
            trees = leaf.trees
            assert trees is not None
            axes = [t.coords() for t in trees]
            covered = [
                [t.is_covered(c) for c in axis] for t, axis in zip(trees, axes)
            ]
            for combo in itertools.product(*(range(len(a)) for a in axes)):
                if leaf.fully_covered or any(
                    covered[k][j] for k, j in enumerate(combo)
                ):
                    out.append(tuple(axes[k][j] for k, j in enumerate(combo)))
        return out

    @property
    def n_real_points(self) -> int:
        return self.stats.real_points

    # ------------------------------------------------------------------
    # Sampling
    # ------------------------------------------------------------------

    def sample_covered_point(self, rng) -> Point:
        """Random real point, probability proportional to its current weight.

        Deterministic for a fixed rng state. Descends by covered sums, then
        draws per-dimension coordinates inside the leaf, rejecting phantoms up
        to ``SAMPLE_REJECTION_CAP`` times before enumerating explicitly.
        """
        total = self.root.csum
        if not total > 0:
            raise StateError("covered total is zero; nothing to sample")
        target = Fraction(rng.random()) * total
        node = self.root
        acc = 1
        while not node.is_leaf:
            acc = acc * node.mu
            assert node.left is not None and node.right is not None
            left_val = acc * node.left.csum
            if target < left_val:
                node = node.left
            else:
                target = target - left_val
                node = node.right
        return self._leaf_sample(node, rng)

    def _leaf_sample(self, leaf: _Node, rng) -> Point:
        trees = leaf.trees
        assert trees is not None
        for _ in range(SAMPLE_REJECTION_CAP):
            coords = []
            for t in trees:
                total = t.total()
                if not total > 0:
                    break  # dimension annihilated; enumeration will decide
                coords.append(t.sample(Fraction(rng.random()) * total))
            else:
                if leaf.fully_covered or any(
                    t.is_covered(c) for t, c in zip(trees, coords)
                ):
                    return tuple(coords)
                continue
            break
        return self._leaf_sample_exact(leaf, rng)

    def _leaf_sample_exact(self, leaf: _Node, rng) -> Point:
        trees = leaf.trees
        assert trees is not None
        axes = [t.coords() for t in trees]
        weights = [t.weights() for t in trees]
        covered = [[t.is_covered(c) for c in axis] for t, axis in zip(trees, axes)]
        pts: list[Point] = []
        wts: list = []
        running = 0
        for combo in itertools.product(*(range(len(a)) for a in axes)):
            if not (
                leaf.fully_covered or any(covered[k][j] for k, j in enumerate(combo))
            ):
                continue
            w = 1
            for k, j in enumerate(combo):
                w = w * weights[k][j]
            if w > 0:
                pts.append(tuple(axes[k][j] for k, j in enumerate(combo)))
                wts.append(w)
                running = running + w
        if not pts:
            raise StateError("leaf has no positive-weight real points")
        target = Fraction(rng.random()) * running
        acc = 0
        for p, w in zip(pts, wts):
            acc = acc + w
            if target < acc:
                return p
        return pts[-1]  # numerically unreachable; guards rng.random() == 1-ulp

    # ------------------------------------------------------------------
    # Lifecycle
    # ------------------------------------------------------------------

    def reset_weights(self) -> None:
        """Reset every represented point's weight to 1."""

        def walk(node: _Node) -> None:
            node.mu = 1
            if node.is_leaf:
                assert node.trees is not None
                for t in node.trees:
                    t.reset_weights()
                self._leaf_pull(node)
                return
            assert node.left is not None and node.right is not None
            walk(node.left)
            walk(node.right)
            self._pull(node)

        walk(self.root)

    def clone(self) -> "PartitionTree":
        """Deep, independent copy: same shape and marks, separate weights."""
        other = object.__new__(PartitionTree)
        other.instance = self.instance
        other.dim = self.dim
        other._tree_cls = self._tree_cls
        other.counters = {k: 0 for k in self.counters}
        other.stats = self.stats
        other._leaves = []

        def copy(node: _Node) -> _Node:
            c = _Node(node.cell)
            c.mu = node.mu
            c.csum = node.csum
            c.cmin = node.cmin
            c.fully_covered = node.fully_covered
            c.axis = node.axis
            c.split = node.split
            if node.is_leaf:
                assert node.trees is not None
                c.trees = [t.clone() for t in node.trees]
                c.slabs = node.slabs
                c.containing = node.containing
                other._leaves.append(c)
            else:
                assert node.left is not None and node.right is not None
                c.left = copy(node.left)
                c.right = copy(node.right)
            return c

        other.root = copy(self.root)
        return other

    def tree_visits(self) -> int:
        """Aggregate 1-D node-visit count across all leaf trees."""
        return sum(t.visits for leaf in self._leaves for t in (leaf.trees or []))

    # ------------------------------------------------------------------
    # Audit
    # ------------------------------------------------------------------

    def audit(self) -> None:
        """Re-derive the structural invariants from scratch; raise on any gap.

        Checks, per leaf: every instance box meeting the cell with positive
        volume is containing or a slab; the stored classification matches;
        slab facets are registered grid endpoints; covered marks equal slab
        interval membership; midpoints are strictly interior. Globally: leaf
        cell volumes tile the bounding box exactly.
        """
        boxes = self.instance.boxes
        vol = 0
        for leaf in self._leaves:
            cell = leaf.cell
            vol += cell.volume()
            assert leaf.slabs is not None and leaf.containing is not None
            seen_slabs = {(i, axis): (lo, hi) for i, axis, lo, hi in leaf.slabs}
            seen_containing = set(leaf.containing)
            for i, b in enumerate(boxes):
                kind, axis = _classify(b, cell)
                if kind == "out":
                    if i in seen_containing or any(k[0] == i for k in seen_slabs):
                        raise AuditError(f"box {i} recorded in a leaf it misses")
                elif kind == "contains":
                    if i not in seen_containing:
                        raise AuditError(f"containing box {i} missing from leaf")
                elif kind == "slab":
                    got = seen_slabs.get((i, axis))
                    want = (
                        max(b.lo[axis], cell.lo[axis]),
                        min(b.hi[axis], cell.hi[axis]),
                    )
                    if got != want:
                        raise AuditError(
                            f"slab box {i} axis {axis}: recorded {got}, expected {want}"
                        )
                else:
                    raise AuditError(f"offender box {i} survived into a leaf")
            if leaf.fully_covered != bool(leaf.containing):
                raise AuditError("fully_covered flag inconsistent with containment")
            assert leaf.trees is not None
            for k, t in enumerate(leaf.trees):
                coords = t.coords()
                intervals = [
                    (lo, hi) for i, axis, lo, hi in leaf.slabs if axis == k
                ]
                endpoints = sorted(
                    {cell.lo[k], cell.hi[k]}
                    | {c for iv in intervals for c in iv}
                )
                expect_mids = [
                    (a + b) // 2 for a, b in zip(endpoints, endpoints[1:])
                ]
                if coords != expect_mids:
                    raise AuditError(
                        f"axis {k} grid mismatch: {coords} vs {expect_mids}"
                    )
                for m in coords:
                    if not (cell.lo[k] < m < cell.hi[k]):
                        raise AuditError(f"midpoint {m} not interior on axis {k}")
                    want_cov = any(lo <= m <= hi for lo, hi in intervals)
                    if t.is_covered(m) != want_cov:
                        raise AuditError(f"covered mark mismatch at {m} on axis {k}")
        bound = self.instance.bounding()
        if vol != bound.volume():
            raise AuditError(
                f"leaf volumes {vol} do not tile the bounding box {bound.volume()}"
            )


# ---------------------------------------------------------------------------
# Operation-name wrappers
# ---------------------------------------------------------------------------


def build_partition_tree(inst: Instance, **kwargs) -> PartitionTree:
    return PartitionTree(inst, **kwargs)


def query_box_weight(idx: PartitionTree, b: Box):
    return idx.query_box_weight(b)


def update_box_weights(idx: PartitionTree, b: Box, alpha) -> None:
    idx.update_box_weights(b, alpha)


def covered_summary(idx: PartitionTree) -> CoverSummary:
    return idx.covered_summary()


def find_light_point(idx: PartitionTree, threshold) -> Optional[Point]:
    return idx.find_light_point(threshold)


def sample_covered_point(idx: PartitionTree, rng) -> Point:
    return idx.sample_covered_point(rng)


def clone_index(idx: PartitionTree) -> PartitionTree:
    return idx.clone()
