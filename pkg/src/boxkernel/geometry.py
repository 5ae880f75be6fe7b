"""Box and instance primitives plus intersection-graph analysis.

Boxes are closed axis-aligned hyper-rectangles with integer corners. External
inputs use plain integers; an :class:`Instance` doubles every coordinate once
at load time so that grid-cell midpoints are themselves integers strictly
between facets (facets become even, and a midpoint of two distinct even values
is an integer that equals neither). All user-facing volumes are divided back
by ``2**dim`` on output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import InvalidInputError, ResourceLimitError

Point = tuple[int, ...]

#: Vertex count above which exact clique enumeration refuses to run.
DEFAULT_CLIQUE_VERTEX_CAP = 512


@dataclass(frozen=True, slots=True)
class Box:
    """A closed box ``[lo[0], hi[0]] x ... x [lo[d-1], hi[d-1]]``.

    Invariant: ``lo[i] < hi[i]`` for every axis (positive extent).
    """

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lo) != len(self.hi):
            raise InvalidInputError(f"corner arity mismatch: {self.lo} vs {self.hi}")
        for a, b in zip(self.lo, self.hi):
            if not (isinstance(a, int) and isinstance(b, int)):
                raise InvalidInputError("box corners must be integers")
            if a >= b:
                raise InvalidInputError(
                    f"degenerate box: lo {self.lo} not strictly below hi {self.hi}"
                )

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains_point(self, p: Sequence[int]) -> bool:
        """Closed containment: boundary points count."""
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))

    def contains_box(self, other: "Box") -> bool:
        return all(
            a <= oa and ob <= b
            for a, b, oa, ob in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def intersects(self, other: "Box") -> bool:
        """Closed intersection: shared facets/corners count."""
        return all(
            a <= ob and oa <= b
            for a, b, oa, ob in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def overlaps_positively(self, other: "Box") -> bool:
        """True iff the intersection has positive volume."""
        return all(
            max(a, oa) < min(b, ob)
            for a, b, oa, ob in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def clip(self, other: "Box") -> Optional["Box"]:
        """Intersection box, or None when it has no positive volume."""
        lo = tuple(max(a, oa) for a, oa in zip(self.lo, other.lo))
        hi = tuple(min(b, ob) for b, ob in zip(self.hi, other.hi))
        if all(a < b for a, b in zip(lo, hi)):
            return Box(lo, hi)
        return None

    def volume(self) -> int:
        v = 1
        for a, b in zip(self.lo, self.hi):
            v *= b - a
        return v

    def scaled(self, factor: int) -> "Box":
        return Box(tuple(a * factor for a in self.lo), tuple(b * factor for b in self.hi))


def bounding_box(boxes: Sequence[Box]) -> Box:
    if not boxes:
        raise InvalidInputError("bounding box of an empty box set")
    d = boxes[0].dim
    lo = tuple(min(b.lo[i] for b in boxes) for i in range(d))
    hi = tuple(max(b.hi[i] for b in boxes) for i in range(d))
    return Box(lo, hi)


@dataclass(frozen=True)
class Instance:
    """A coverage-kernel problem: ``dim``, closed integer boxes, optional points.

    ``boxes`` and ``points`` hold the *internal* (doubled) coordinates; use
    :meth:`raw_boxes` / :meth:`raw_points` for the user-facing integers. The
    optional point set switches solvers into "cover these points" mode (used by
    the hardness-variant generator); ``meta`` is free-form provenance.
    """

    dim: int
    boxes: tuple[Box, ...]
    points: Optional[tuple[Point, ...]] = None
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InvalidInputError(f"dimension must be positive, got {self.dim}")
        if not self.boxes:
            raise InvalidInputError("instance needs at least one box")
        for b in self.boxes:
            if b.dim != self.dim:
                raise InvalidInputError(f"box arity {b.dim} != instance dim {self.dim}")
        if self.points is not None:
            for p in self.points:
                if len(p) != self.dim:
                    raise InvalidInputError(
                        f"point arity {len(p)} != instance dim {self.dim}"
                    )

    # -- construction ---------------------------------------------------

    @classmethod
    def from_raw(
        cls,
        dim: int,
        boxes: Iterable[tuple[Sequence[int], Sequence[int]]],
        points: Optional[Iterable[Sequence[int]]] = None,
        meta: Optional[Mapping[str, object]] = None,
    ) -> "Instance":
        """Build from raw (unscaled) integer corners, doubling internally."""
        scaled = tuple(
            Box(tuple(int(a) * 2 for a in lo), tuple(int(b) * 2 for b in hi))
            for lo, hi in boxes
        )
        pts = None
        if points is not None:
            pts = tuple(tuple(int(c) * 2 for c in p) for p in points)
        return cls(dim=dim, boxes=scaled, points=pts, meta=dict(meta or {}))

    # -- views ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.boxes)

    def raw_boxes(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        out = []
        for b in self.boxes:
            out.append((tuple(a // 2 for a in b.lo), tuple(c // 2 for c in b.hi)))
        return out

    def raw_points(self) -> Optional[list[tuple[int, ...]]]:
        if self.points is None:
            return None
        return [tuple(c // 2 for c in p) for p in self.points]

    def bounding(self) -> Box:
        return bounding_box(self.boxes)

    def subset(self, indices: Sequence[int]) -> list[Box]:
        try:
            return [self.boxes[i] for i in indices]
        except IndexError as exc:
            raise InvalidInputError(f"box index out of range: {exc}") from exc

    def unscale_volume(self, scaled_volume: int) -> Fraction:
        return Fraction(scaled_volume, 2**self.dim)


# ---------------------------------------------------------------------------
# Intersection graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionGraph:
    """Undirected graph with one vertex per box; edge iff closed intersection."""

    n_vertices: int
    adjacency: tuple[frozenset[int], ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n_vertices):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


@dataclass(frozen=True)
class GraphReport:
    max_degree: int
    clique_number: int
    triangle_free: bool
    planarity_necessary: bool
    edge_count: int

    def as_dict(self) -> dict[str, object]:
        return {
            "max_degree": self.max_degree,
            "clique_number": self.clique_number,
            "triangle_free": self.triangle_free,
            "planarity_necessary": self.planarity_necessary,
            "edge_count": self.edge_count,
        }


def build_intersection_graph(
    boxes: Sequence[Box], *, touching: bool = True
) -> IntersectionGraph:
    """Pairwise intersection graph of the boxes.

    With ``touching`` (the default) an edge means closed intersection — shared
    facets and corners count, matching the coverage semantics. With
    ``touching=False`` an edge requires an intersection of positive volume;
    structural statistics of the hardness constructions (degree, clique,
    triangle-freeness) are stated for that overlap graph, where zero-volume
    contacts are incidental. Scaling every coordinate by the same positive
    factor cannot change either graph, so raw and internal coordinates agree.
    """
    if boxes:
        d = boxes[0].dim
        for b in boxes:
            if b.dim != d:
                raise InvalidInputError("boxes of mixed dimension")
    n = len(boxes)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = boxes[i], boxes[j]
            if bi.intersects(bj) if touching else bi.overlaps_positively(bj):
                adj[i].add(j)
                adj[j].add(i)
    return IntersectionGraph(n, tuple(frozenset(a) for a in adj))


def _max_clique(adj: Sequence[frozenset[int]]) -> int:
    """Exact maximum-clique size via Bron-Kerbosch with pivoting."""
    n = len(adj)
    if n == 0:
        return 0
    best = 1

    def expand(r_size: int, p: set[int], x: set[int]) -> None:
        nonlocal best
        if not p and not x:
            best = max(best, r_size)
            return
        if r_size + len(p) <= best:
            return  # cannot beat the incumbent
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r_size + 1, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(0, set(range(n)), set())
    return best


def analyze_graph(
    g: IntersectionGraph, *, clique_vertex_cap: int = DEFAULT_CLIQUE_VERTEX_CAP
) -> GraphReport:
    """Exact degree/clique/triangle statistics plus the Euler necessary condition.

    ``planarity_necessary`` is only ``|E| <= 3|V| - 6`` (vacuously true below 3
    vertices); it is a necessary condition, not a planarity test. Exact clique
    enumeration refuses graphs above ``clique_vertex_cap`` vertices.
    """
    n = g.n_vertices
    if n > clique_vertex_cap:
        raise ResourceLimitError(
            f"clique enumeration capped at {clique_vertex_cap} vertices, got {n}"
        )
    omega = _max_clique(g.adjacency) if n else 0
    e = g.edge_count
    return GraphReport(
        max_degree=max((len(a) for a in g.adjacency), default=0),
        clique_number=omega,
        triangle_free=omega < 3,
        planarity_necessary=(e <= 3 * n - 6) if n >= 3 else True,
        edge_count=e,
    )


def coverage_depths(boxes: Sequence[Box], points: Sequence[Sequence[int]]) -> list[int]:
    """For each point, how many boxes contain it (closed containment)."""
    return [sum(1 for b in boxes if b.contains_point(p)) for p in points]


# ---------------------------------------------------------------------------
# Compressed-grid helpers shared by the discretization and volume code
# ---------------------------------------------------------------------------


def facet_grid(boxes: Sequence[Box]) -> list[list[int]]:
    """Per-dimension sorted distinct facet coordinates."""
    d = boxes[0].dim
    grids: list[list[int]] = []
    for i in range(d):
        coords = {b.lo[i] for b in boxes} | {b.hi[i] for b in boxes}
        grids.append(sorted(coords))
    return grids


def grid_cells(
    grids: Sequence[Sequence[int]], *, max_cells: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Iterate all (lo, hi) cells of a compressed grid, guarding the cap."""
    total = 1
    for g in grids:
        total *= max(len(g) - 1, 0)
    if total > max_cells:
        raise ResourceLimitError(f"grid has {total} cells, cap is {max_cells}")
    ranges = [range(len(g) - 1) for g in grids]
    for idx in itertools.product(*ranges):
        lo = tuple(grids[i][j] for i, j in enumerate(idx))
        hi = tuple(grids[i][j + 1] for i, j in enumerate(idx))
        yield lo, hi
