"""Pure-Python interval weight tree.

Balanced binary tree over a static sorted point set supporting, in
O(log n) node visits per call:

* ``total_weight(a, b)``     — sum of point weights inside the closed range,
* ``update_weights(a, b, s)`` — multiply every weight inside the range by s,
* ``range_aggregates(a, b)`` — sums/minima split by static covered marks.

Weights are maintained lazily: each node carries a multiplicative tag ``mu``,
and the weight of a point is the product of the tags on its root-to-leaf
path. Aggregates stored at a node (``w``, ``minw``, ``csum``, ``cmin``,
``usum``) already include that node's own tag, so the parent recurrences are

    w(t)    = mu(t) * (w(left) + w(right))
    minw(t) = mu(t) * min(minw(left), minw(right))

and similarly for the covered/uncovered variants (minimum over an empty
covered set is ``None``). Tags are exact rationals (int or Fraction); nothing
here ever touches floats.

The compiled twin in ``_weighttree.pyx`` mirrors this file operation for
operation; keep the two in sync (a parity test compares them exhaustively).
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .errors import InvalidInputError, StateError

BACKEND = "python"

# Sentinels standing in for +/- infinity during half-open descents.
# Coordinates are validated to stay well below these.
NEG_INF = -(2**62)
POS_INF = 2**62
_COORD_LIMIT = 2**61


class RangeAggregates(NamedTuple):
    """Aggregate bundle for one coordinate range (minima of empty sets: None)."""

    sum: object
    min_weight: object
    covered_sum: object
    covered_min: object
    uncovered_sum: object
    uncovered_cnt: int


_EMPTY_AGG = RangeAggregates(0, None, 0, None, 0, 0)


def _check_alpha(alpha) -> None:
    from numbers import Rational

    if not isinstance(alpha, Rational):
        raise InvalidInputError(f"weight factor must be rational, got {alpha!r}")
    if alpha < 0:
        raise InvalidInputError(f"weight factor must be >= 0, got {alpha}")


class IntervalWeightTree:
    """See the module docstring.

    Parameters
    ----------
    points: strictly increasing integer coordinates (at least one).
    covered: per-point static marks; aggregates are split along them and the
        marks never change after construction.
    """

    __slots__ = (
        "n",
        "height",
        "visits",
        "_left",
        "_right",
        "_minc",
        "_maxc",
        "_cnt",
        "_ccnt",
        "_mu",
        "_w",
        "_minw",
        "_csum",
        "_cmin",
        "_usum",
    )

    def __init__(self, points: Sequence[int], covered: Sequence[bool]):
        pts = list(points)
        cov = [bool(c) for c in covered]
        if not pts:
            raise InvalidInputError("empty point set")
        if len(cov) != len(pts):
            raise InvalidInputError("covered marks must match points in length")
        for c in pts:
            if not isinstance(c, int):
                raise InvalidInputError(f"coordinates must be integers, got {c!r}")
            if not (-_COORD_LIMIT < c < _COORD_LIMIT):
                raise InvalidInputError(f"coordinate {c} out of supported range")
        for x, y in zip(pts, pts[1:]):
            if x >= y:
                raise InvalidInputError("points must be strictly increasing")

        n = len(pts)
        nodes = 2 * n - 1
        self.n = n
        self.visits = 0
        self._left = [-1] * nodes
        self._right = [-1] * nodes
        self._minc = [0] * nodes
        self._maxc = [0] * nodes
        self._cnt = [0] * nodes
        self._ccnt = [0] * nodes
        self._mu = [1] * nodes
        self._w = [0] * nodes
        self._minw = [0] * nodes
        self._csum = [0] * nodes
        self._cmin: list = [None] * nodes
        self._usum = [0] * nodes

        _, self.height = self._build_recursive(pts, cov)

    def _build_recursive(self, pts: list[int], cov: list[bool]) -> tuple[int, int]:
        cursor = [0]

        def build(lo: int, hi: int) -> tuple[int, int]:
            t = cursor[0]
            cursor[0] += 1
            if hi - lo == 1:
                c = cov[lo]
                self._minc[t] = self._maxc[t] = pts[lo]
                self._cnt[t] = 1
                self._ccnt[t] = 1 if c else 0
                self._w[t] = 1
                self._minw[t] = 1
                self._csum[t] = 1 if c else 0
                self._cmin[t] = 1 if c else None
                self._usum[t] = 0 if c else 1
                return t, 1
            mid = (lo + hi) // 2
            l, hl = build(lo, mid)
            r, hr = build(mid, hi)
            self._left[t] = l
            self._right[t] = r
            self._minc[t] = self._minc[l]
            self._maxc[t] = self._maxc[r]
            self._cnt[t] = self._cnt[l] + self._cnt[r]
            self._ccnt[t] = self._ccnt[l] + self._ccnt[r]
            self._pull(t)
            return t, max(hl, hr) + 1

        return build(0, self.n)

    # -- maintenance ------------------------------------------------------

    def _pull(self, t: int) -> None:
        l = self._left[t]
        r = self._right[t]
        m = self._mu[t]
        self._w[t] = m * (self._w[l] + self._w[r])
        a = self._minw[l]
        b = self._minw[r]
        self._minw[t] = m * (a if a <= b else b)
        self._csum[t] = m * (self._csum[l] + self._csum[r])
        self._usum[t] = m * (self._usum[l] + self._usum[r])
        cl = self._cmin[l]
        cr = self._cmin[r]
        if cl is None:
            c = cr
        elif cr is None or cl <= cr:
            c = cl
        else:
            c = cr
        self._cmin[t] = None if c is None else m * c

    def _scale(self, t: int, alpha) -> None:
        self._mu[t] = self._mu[t] * alpha
        self._w[t] = self._w[t] * alpha
        self._minw[t] = self._minw[t] * alpha
        self._csum[t] = self._csum[t] * alpha
        self._usum[t] = self._usum[t] * alpha
        if self._cmin[t] is not None:
            self._cmin[t] = self._cmin[t] * alpha

    # -- queries ------------------------------------------------------------

    def total_weight(self, a: int, b: int):
        """Sum of weights of points with a <= coordinate <= b."""
        if a > b:
            return 0
        return self._total(0, a, b)

    def _total(self, t: int, a: int, b: int):
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return 0
        if a <= self._minc[t] and self._maxc[t] <= b:
            return self._w[t]
        l = self._left[t]
        r = self._right[t]
        if a > self._maxc[l]:
            return self._mu[t] * self._total(r, a, b)
        if b < self._minc[r]:
            return self._mu[t] * self._total(l, a, b)
        return self._mu[t] * (self._total(l, a, POS_INF) + self._total(r, NEG_INF, b))

    def update_weights(self, a: int, b: int, alpha) -> None:
        """Multiply the weight of every point with a <= coordinate <= b by alpha."""
        _check_alpha(alpha)
        if a > b:
            return
        self._update(0, a, b, alpha)

    def _update(self, t: int, a: int, b: int, alpha) -> None:
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return
        if a <= self._minc[t] and self._maxc[t] <= b:
            self._scale(t, alpha)
            return
        l = self._left[t]
        r = self._right[t]
        if a > self._maxc[l]:
            self._update(r, a, b, alpha)
        elif b < self._minc[r]:
            self._update(l, a, b, alpha)
        else:
            self._update(l, a, POS_INF, alpha)
            self._update(r, NEG_INF, b, alpha)
        self._pull(t)

    def range_aggregates(self, a: int, b: int) -> RangeAggregates:
        """All aggregates over points with a <= coordinate <= b."""
        if a > b:
            return _EMPTY_AGG
        return RangeAggregates(*self._agg(0, a, b))

    def _node_agg(self, t: int):
        return (
            self._w[t],
            self._minw[t],
            self._csum[t],
            self._cmin[t],
            self._usum[t],
            self._cnt[t] - self._ccnt[t],
        )

    @staticmethod
    def _scale_agg(m, agg):
        s, mw, cs, cm, us, uc = agg
        return (
            m * s,
            None if mw is None else m * mw,
            m * cs,
            None if cm is None else m * cm,
            m * us,
            uc,
        )

    @staticmethod
    def _merge_agg(left, right):
        ls, lmw, lcs, lcm, lus, luc = left
        rs, rmw, rcs, rcm, rus, ruc = right
        if lmw is None:
            mw = rmw
        elif rmw is None or lmw <= rmw:
            mw = lmw
        else:
            mw = rmw
        if lcm is None:
            cm = rcm
        elif rcm is None or lcm <= rcm:
            cm = lcm
        else:
            cm = rcm
        return (ls + rs, mw, lcs + rcs, cm, lus + rus, luc + ruc)

    def _agg(self, t: int, a: int, b: int):
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return _EMPTY_AGG
        if a <= self._minc[t] and self._maxc[t] <= b:
            return self._node_agg(t)
        l = self._left[t]
        r = self._right[t]
        if a > self._maxc[l]:
            return self._scale_agg(self._mu[t], self._agg(r, a, b))
        if b < self._minc[r]:
            return self._scale_agg(self._mu[t], self._agg(l, a, b))
        inner = self._merge_agg(self._agg(l, a, POS_INF), self._agg(r, NEG_INF, b))
        return self._scale_agg(self._mu[t], inner)

    # -- whole-tree accessors ---------------------------------------------

    def total(self):
        return self._w[0]

    def covered_total(self):
        return self._csum[0]

    def uncovered_total(self):
        return self._usum[0]

    def min_weight(self):
        return self._minw[0]

    def covered_min(self):
        return self._cmin[0]

    @property
    def covered_count(self) -> int:
        return self._ccnt[0]

    def reset_visits(self) -> None:
        self.visits = 0

    # -- point-level operations ---------------------------------------------

    def min_point(self, covered_only: bool = False):
        """(coordinate, weight) of a minimum-weight point, or None.

        With ``covered_only`` the minimum is taken over covered points only
        (None when there are none). Ties resolve to the leftmost coordinate.
        """
        key = self._cmin if covered_only else self._minw
        if key[0] is None:
            return None
        value = key[0]
        t = 0
        while self._left[t] != -1:
            l = self._left[t]
            r = self._right[t]
            kl = key[l]
            kr = key[r]
            if kl is None:
                t = r
            elif kr is None or kl <= kr:
                t = l
            else:
                t = r
        return self._minc[t], value

    def sample(self, target):
        """Leaf coordinate at cumulative-weight position ``target``.

        Deterministic given ``target``; requires 0 <= target < total().
        Exact arithmetic throughout — no divisions are performed.
        """
        if not (0 <= target < self._w[0]):
            raise StateError(f"sample target {target} outside [0, total)")
        t = 0
        acc = 1
        while self._left[t] != -1:
            acc = acc * self._mu[t]
            lw = acc * self._w[self._left[t]]
            if target < lw:
                t = self._left[t]
            else:
                target = target - lw
                t = self._right[t]
        return self._minc[t]

    def point_weight(self, coord: int):
        """Current weight of the point at ``coord`` (must be a tree point)."""
        t = 0
        acc = 1
        while True:
            if not (self._minc[t] <= coord <= self._maxc[t]):
                raise InvalidInputError(f"{coord} is not a point of this tree")
            acc = acc * self._mu[t]
            if self._left[t] == -1:
                if self._minc[t] != coord:
                    raise InvalidInputError(f"{coord} is not a point of this tree")
                return acc
            if coord <= self._maxc[self._left[t]]:
                t = self._left[t]
            else:
                t = self._right[t]

    def is_covered(self, coord: int) -> bool:
        t = 0
        while self._left[t] != -1:
            if coord <= self._maxc[self._left[t]]:
                t = self._left[t]
            else:
                t = self._right[t]
        if self._minc[t] != coord:
            raise InvalidInputError(f"{coord} is not a point of this tree")
        return self._ccnt[t] == 1

    def coords(self) -> list[int]:
        out: list[int] = []
        stack = [0]
        while stack:
            t = stack.pop()
            if self._left[t] == -1:
                out.append(self._minc[t])
            else:
                stack.append(self._right[t])
                stack.append(self._left[t])
        return out

    def weights(self) -> list:
        """Current weights in coordinate order."""
        out: list = []
        stack = [(0, 1)]
        while stack:
            t, acc = stack.pop()
            acc = acc * self._mu[t]
            if self._left[t] == -1:
                out.append(acc)
            else:
                stack.append((self._right[t], acc))
                stack.append((self._left[t], acc))
        return out

    # -- lifecycle -----------------------------------------------------------

    def reset_weights(self) -> None:
        """Set every point weight back to 1 (marks are untouched)."""
        for t in range(len(self._mu) - 1, -1, -1):
            self._mu[t] = 1
            if self._left[t] == -1:
                c = self._ccnt[t] == 1
                self._w[t] = 1
                self._minw[t] = 1
                self._csum[t] = 1 if c else 0
                self._cmin[t] = 1 if c else None
                self._usum[t] = 0 if c else 1
            else:
                self._pull(t)

    def clone(self) -> "IntervalWeightTree":
        other = object.__new__(IntervalWeightTree)
        other.n = self.n
        other.height = self.height
        other.visits = 0
        other._left = self._left  # static shape: safe to share
        other._right = self._right
        other._minc = self._minc
        other._maxc = self._maxc
        other._cnt = self._cnt
        other._ccnt = self._ccnt
        other._mu = list(self._mu)
        other._w = list(self._w)
        other._minw = list(self._minw)
        other._csum = list(self._csum)
        other._cmin = list(self._cmin)
        other._usum = list(self._usum)
        return other


def build_interval_tree(
    points: Sequence[int], covered_marks: Sequence[bool]
) -> IntervalWeightTree:
    """Factory matching the documented operation name."""
    return IntervalWeightTree(points, covered_marks)
