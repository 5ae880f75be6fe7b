"""Explicit ground truth: discretization, exact union volume, coverage checks.

Everything here is deliberately brute force over the compressed facet grid —
it is the reference the clever index structures are tested against, so it
favors obviousness over speed. All arithmetic is exact (integers internally;
:class:`fractions.Fraction` only on user-facing unscaled output).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

from .errors import InvalidInputError, ResourceLimitError
from .geometry import Box, Instance, Point, facet_grid

DEFAULT_MAX_CELLS = 10_000_000


def _cell_mask(boxes: Sequence[Box], grids: Sequence[Sequence[int]], max_cells: int) -> bytearray:
    """Flat covered/uncovered mask over the compressed grid's cells.

    A grid cell is covered iff it lies fully inside some box; because the grid
    contains every facet coordinate, each box covers an exact sub-block of
    cells, marked here with row-slice writes.
    """
    d = len(grids)
    dims = [len(g) - 1 for g in grids]
    total = 1
    for m in dims:
        total *= max(m, 0)
    if total > max_cells:
        raise ResourceLimitError(f"compressed grid has {total} cells, cap is {max_cells}")
    index_of = [{c: k for k, c in enumerate(g)} for g in grids]
    strides = [0] * d
    acc = 1
    for i in range(d - 1, -1, -1):
        strides[i] = acc
        acc *= dims[i]
    mask = bytearray(total)
    row = strides[d - 1]  # always 1; kept for clarity
    assert row == 1
    for b in boxes:
        ranges = [
            range(index_of[i][b.lo[i]], index_of[i][b.hi[i]]) for i in range(d)
        ]
        if any(len(r) == 0 for r in ranges):
            continue  # cannot happen for positive-extent boxes, kept defensive
        last = ranges[-1]
        fill = b"\x01" * len(last)
        bases = [0]
        for i in range(d - 1):
            bases = [base + j * strides[i] for base in bases for j in ranges[i]]
        for base in bases:
            mask[base + last.start : base + last.stop] = fill
    return mask


def _iter_cells(grids: Sequence[Sequence[int]]):
    """Yield (flat_index, lo_tuple, hi_tuple) in mask order."""
    d = len(grids)
    dims = [len(g) - 1 for g in grids]
    idx = [0] * d
    flat = 0
    total = 1
    for m in dims:
        total *= max(m, 0)
    while flat < total:
        lo = tuple(grids[i][idx[i]] for i in range(d))
        hi = tuple(grids[i][idx[i] + 1] for i in range(d))
        yield flat, lo, hi
        flat += 1
        for i in range(d - 1, -1, -1):
            idx[i] += 1
            if idx[i] < dims[i]:
                break
            idx[i] = 0


# ---------------------------------------------------------------------------
# Coverage discretization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Discretization:
    """The finite witness point set: midpoints of fully covered grid cells.

    ``points`` are internal (doubled) coordinates — integers strictly between
    consecutive facets, hence never on any facet. A candidate subset covers the
    instance's region iff it covers these points.
    """

    dim: int
    points: tuple[Point, ...]
    grids: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return len(self.points)


def coverage_discretization(
    inst: Instance, *, max_cells: int = DEFAULT_MAX_CELLS
) -> Discretization:
    grids = facet_grid(inst.boxes)
    mask = _cell_mask(inst.boxes, grids, max_cells)
    pts = []
    for flat, lo, hi in _iter_cells(grids):
        if mask[flat]:
            pts.append(tuple((a + b) // 2 for a, b in zip(lo, hi)))
    return Discretization(
        dim=inst.dim,
        points=tuple(pts),
        grids=tuple(tuple(g) for g in grids),
    )


# ---------------------------------------------------------------------------
# Exact union volume
# ---------------------------------------------------------------------------


def union_volume_scaled(
    boxes: Sequence[Box], *, max_cells: int = DEFAULT_MAX_CELLS
) -> int:
    """Exact volume of the union in internal (scaled) units."""
    if not boxes:
        return 0
    d = boxes[0].dim
    for b in boxes:
        if b.dim != d:
            raise InvalidInputError("boxes of mixed dimension")
    grids = facet_grid(boxes)
    mask = _cell_mask(boxes, grids, max_cells)
    vol = 0
    for flat, lo, hi in _iter_cells(grids):
        if mask[flat]:
            v = 1
            for a, b in zip(lo, hi):
                v *= b - a
            vol += v
    return vol


def union_volume(
    inst: Instance,
    indices: Optional[Sequence[int]] = None,
    *,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> Fraction:
    """Union volume of (a subset of) an instance, in unscaled units."""
    boxes = inst.boxes if indices is None else inst.subset(indices)
    return inst.unscale_volume(union_volume_scaled(boxes, max_cells=max_cells))


def covers_same_region(
    candidate: Sequence[int],
    inst: Instance,
    *,
    max_cells: int = DEFAULT_MAX_CELLS,
    full_volume_scaled: Optional[int] = None,
) -> bool:
    """True iff the candidate subset covers exactly the instance's region.

    Since the candidate's region is a subset of the full region, equality of
    exact volumes is equivalent to equality of regions. ``full_volume_scaled``
    lets batch callers amortize the full-union computation.
    """
    boxes = inst.subset(candidate)
    if full_volume_scaled is None:
        full_volume_scaled = union_volume_scaled(inst.boxes, max_cells=max_cells)
    if not boxes:
        return full_volume_scaled == 0
    return union_volume_scaled(boxes, max_cells=max_cells) == full_volume_scaled


def covers_all_points(
    candidate: Sequence[int], inst: Instance, points: Sequence[Point]
) -> bool:
    """Point-set route: does the candidate cover every given (scaled) point?"""
    boxes = inst.subset(candidate)
    return all(any(b.contains_point(p) for b in boxes) for p in points)


# ---------------------------------------------------------------------------
# Naive weight table (the index oracle)
# ---------------------------------------------------------------------------


def _check_alpha(alpha) -> None:
    if not isinstance(alpha, Rational):
        raise InvalidInputError(f"weight factor must be rational, got {alpha!r}")
    if alpha < 0:
        raise InvalidInputError(f"weight factor must be >= 0, got {alpha}")


class NaiveWeightTable:
    """Flat weight map over an explicit point set; the index's test oracle.

    Supports exactly the index contract — total-weight query inside a box and
    multiplicative update inside a box — by straightforward iteration.
    """

    def __init__(self, points: Sequence[Point]):
        self.points: tuple[Point, ...] = tuple(tuple(p) for p in points)
        self.weights: list = [1] * len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def query(self, box: Box):
        return sum(
            (w for p, w in zip(self.points, self.weights) if box.contains_point(p)),
            start=0,
        )

    def update(self, box: Box, alpha) -> None:
        _check_alpha(alpha)
        for i, p in enumerate(self.points):
            if box.contains_point(p):
                self.weights[i] = self.weights[i] * alpha

    def total(self):
        return sum(self.weights, start=0)

    def min_weight(self):
        if not self.weights:
            return None
        return min(self.weights)

    def point_weight(self, p: Point):
        try:
            return self.weights[self.points.index(tuple(p))]
        except ValueError as exc:
            raise InvalidInputError(f"unknown point {p!r}") from exc

    def as_dict(self) -> dict[Point, object]:
        return dict(zip(self.points, self.weights))


def naive_weight_oracle(disc: Discretization) -> NaiveWeightTable:
    return NaiveWeightTable(disc.points)
