# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled interval weight tree.

Operation-for-operation mirror of ``_weighttree_py`` (see that module for the
algorithmic documentation). Structure arrays live in typed C memory; weights
and aggregates stay Python objects so arithmetic remains exact — the speedup
comes purely from traversal bookkeeping. Keep the two implementations in
lockstep; a parity test compares them on random operation scripts.
"""

import array as _pyarray

from cpython cimport array

from .errors import InvalidInputError, StateError
from ._weighttree_py import (
    NEG_INF as _NEG_INF_OBJ,
    POS_INF as _POS_INF_OBJ,
    RangeAggregates,
    _EMPTY_AGG,
    _check_alpha,
)

BACKEND = "cython"

cdef long long NEG_INF = _NEG_INF_OBJ
cdef long long POS_INF = _POS_INF_OBJ
cdef long long COORD_LIMIT = POS_INF // 2


cdef class IntervalWeightTree:
    """Compiled twin of ``_weighttree_py.IntervalWeightTree``."""

    cdef public Py_ssize_t n
    cdef public int height
    cdef public long long visits
    cdef array.array _left_a, _right_a, _minc_a, _maxc_a, _cnt_a, _ccnt_a
    cdef long long[::1] _left, _right, _minc, _maxc, _cnt, _ccnt
    cdef list _mu, _w, _minw, _csum, _cmin, _usum
    cdef Py_ssize_t _cursor

    def __init__(self, points, covered):
        pts = list(points)
        cov = [bool(c) for c in covered]
        if not pts:
            raise InvalidInputError("empty point set")
        if len(cov) != len(pts):
            raise InvalidInputError("covered marks must match points in length")
        for c in pts:
            if not isinstance(c, int):
                raise InvalidInputError(f"coordinates must be integers, got {c!r}")
            if not (-COORD_LIMIT < c < COORD_LIMIT):
                raise InvalidInputError(f"coordinate {c} out of supported range")
        for x, y in zip(pts, pts[1:]):
            if x >= y:
                raise InvalidInputError("points must be strictly increasing")

        cdef Py_ssize_t n = len(pts)
        cdef Py_ssize_t nodes = 2 * n - 1
        self.n = n
        self.visits = 0
        zero = _pyarray.array("q", [0])
        self._left_a = zero * nodes
        self._right_a = zero * nodes
        self._minc_a = zero * nodes
        self._maxc_a = zero * nodes
        self._cnt_a = zero * nodes
        self._ccnt_a = zero * nodes
        self._bind_views()
        self._mu = [1] * nodes
        self._w = [0] * nodes
        self._minw = [0] * nodes
        self._csum = [0] * nodes
        self._cmin = [None] * nodes
        self._usum = [0] * nodes
        self._cursor = 0
        self.height = self._build(0, n, pts, cov)

    cdef void _bind_views(self):
        self._left = self._left_a
        self._right = self._right_a
        self._minc = self._minc_a
        self._maxc = self._maxc_a
        self._cnt = self._cnt_a
        self._ccnt = self._ccnt_a

    cdef int _build(self, Py_ssize_t lo, Py_ssize_t hi, list pts, list cov):
        cdef Py_ssize_t t = self._cursor
        cdef Py_ssize_t mid, l, r
        cdef int hl, hr
        self._cursor += 1
        if hi - lo == 1:
            c = cov[lo]
            self._minc[t] = pts[lo]
            self._maxc[t] = pts[lo]
            self._left[t] = -1
            self._right[t] = -1
            self._cnt[t] = 1
            self._ccnt[t] = 1 if c else 0
            self._w[t] = 1
            self._minw[t] = 1
            self._csum[t] = 1 if c else 0
            self._cmin[t] = 1 if c else None
            self._usum[t] = 0 if c else 1
            return 1
        mid = (lo + hi) // 2
        l = self._cursor
        hl = self._build(lo, mid, pts, cov)
        r = self._cursor
        hr = self._build(mid, hi, pts, cov)
        self._left[t] = l
        self._right[t] = r
        self._minc[t] = self._minc[l]
        self._maxc[t] = self._maxc[r]
        self._cnt[t] = self._cnt[l] + self._cnt[r]
        self._ccnt[t] = self._ccnt[l] + self._ccnt[r]
        self._pull(t)
        return (hl if hl >= hr else hr) + 1

    # -- maintenance ------------------------------------------------------

    cdef void _pull(self, Py_ssize_t t):
        cdef Py_ssize_t l = self._left[t]
        cdef Py_ssize_t r = self._right[t]
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

    cdef void _scale(self, Py_ssize_t t, alpha):
        self._mu[t] = self._mu[t] * alpha
        self._w[t] = self._w[t] * alpha
        self._minw[t] = self._minw[t] * alpha
        self._csum[t] = self._csum[t] * alpha
        self._usum[t] = self._usum[t] * alpha
        if self._cmin[t] is not None:
            self._cmin[t] = self._cmin[t] * alpha

    # -- queries ------------------------------------------------------------

    def total_weight(self, a, b):
        """Sum of weights of points with a <= coordinate <= b."""
        if a > b:
            return 0
        return self._total(0, a, b)

    cdef object _total(self, Py_ssize_t t, long long a, long long b):
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return 0
        if a <= self._minc[t] and self._maxc[t] <= b:
            return self._w[t]
        cdef Py_ssize_t l = self._left[t]
        cdef Py_ssize_t r = self._right[t]
        if a > self._maxc[l]:
            return self._mu[t] * self._total(r, a, b)
        if b < self._minc[r]:
            return self._mu[t] * self._total(l, a, b)
        return self._mu[t] * (self._total(l, a, POS_INF) + self._total(r, NEG_INF, b))

    def update_weights(self, a, b, alpha):
        """Multiply the weight of every point with a <= coordinate <= b by alpha."""
        _check_alpha(alpha)
        if a > b:
            return
        self._update(0, a, b, alpha)

    cdef void _update(self, Py_ssize_t t, long long a, long long b, alpha):
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return
        if a <= self._minc[t] and self._maxc[t] <= b:
            self._scale(t, alpha)
            return
        cdef Py_ssize_t l = self._left[t]
        cdef Py_ssize_t r = self._right[t]
        if a > self._maxc[l]:
            self._update(r, a, b, alpha)
        elif b < self._minc[r]:
            self._update(l, a, b, alpha)
        else:
            self._update(l, a, POS_INF, alpha)
            self._update(r, NEG_INF, b, alpha)
        self._pull(t)

    def range_aggregates(self, a, b):
        """All aggregates over points with a <= coordinate <= b."""
        if a > b:
            return _EMPTY_AGG
        return RangeAggregates(*self._agg(0, a, b))

    cdef tuple _node_agg(self, Py_ssize_t t):
        return (
            self._w[t],
            self._minw[t],
            self._csum[t],
            self._cmin[t],
            self._usum[t],
            self._cnt[t] - self._ccnt[t],
        )

    cdef tuple _scale_agg(self, m, tuple agg):
        s, mw, cs, cm, us, uc = agg
        return (
            m * s,
            None if mw is None else m * mw,
            m * cs,
            None if cm is None else m * cm,
            m * us,
            uc,
        )

    cdef tuple _merge_agg(self, tuple left, tuple right):
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

    cdef tuple _agg(self, Py_ssize_t t, long long a, long long b):
        self.visits += 1
        if b < self._minc[t] or a > self._maxc[t]:
            return tuple(_EMPTY_AGG)
        if a <= self._minc[t] and self._maxc[t] <= b:
            return self._node_agg(t)
        cdef Py_ssize_t l = self._left[t]
        cdef Py_ssize_t r = self._right[t]
        if a > self._maxc[l]:
            return self._scale_agg(self._mu[t], self._agg(r, a, b))
        if b < self._minc[r]:
            return self._scale_agg(self._mu[t], self._agg(l, a, b))
        cdef tuple inner = self._merge_agg(
            self._agg(l, a, POS_INF), self._agg(r, NEG_INF, b)
        )
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
    def covered_count(self):
        return self._ccnt[0]

    def reset_visits(self):
        self.visits = 0

    # -- point-level operations ---------------------------------------------

    def min_point(self, covered_only=False):
        """(coordinate, weight) of a minimum-weight point, or None."""
        cdef list key = self._cmin if covered_only else self._minw
        if key[0] is None:
            return None
        value = key[0]
        cdef Py_ssize_t t = 0
        cdef Py_ssize_t l, r
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
        """Leaf coordinate at cumulative-weight position ``target``."""
        if not (0 <= target < self._w[0]):
            raise StateError(f"sample target {target} outside [0, total)")
        cdef Py_ssize_t t = 0
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

    def point_weight(self, coord):
        """Current weight of the point at ``coord`` (must be a tree point)."""
        cdef Py_ssize_t t = 0
        cdef long long c = coord
        acc = 1
        while True:
            if not (self._minc[t] <= c <= self._maxc[t]):
                raise InvalidInputError(f"{coord} is not a point of this tree")
            acc = acc * self._mu[t]
            if self._left[t] == -1:
                if self._minc[t] != c:
                    raise InvalidInputError(f"{coord} is not a point of this tree")
                return acc
            if c <= self._maxc[self._left[t]]:
                t = self._left[t]
            else:
                t = self._right[t]

    def is_covered(self, coord):
        cdef Py_ssize_t t = 0
        cdef long long c = coord
        while self._left[t] != -1:
            if c <= self._maxc[self._left[t]]:
                t = self._left[t]
            else:
                t = self._right[t]
        if self._minc[t] != c:
            raise InvalidInputError(f"{coord} is not a point of this tree")
        return self._ccnt[t] == 1

    def coords(self):
        cdef list out = []
        cdef list stack = [0]
        cdef Py_ssize_t t
        while stack:
            t = stack.pop()
            if self._left[t] == -1:
                out.append(self._minc[t])
            else:
                stack.append(self._right[t])
                stack.append(self._left[t])
        return out

    def weights(self):
        """Current weights in coordinate order."""
        cdef list out = []
        cdef list stack = [(0, 1)]
        cdef Py_ssize_t t
        while stack:
            t_obj, acc = stack.pop()
            t = t_obj
            acc = acc * self._mu[t]
            if self._left[t] == -1:
                out.append(acc)
            else:
                stack.append((self._right[t], acc))
                stack.append((self._left[t], acc))
        return out

    # -- lifecycle -----------------------------------------------------------

    def reset_weights(self):
        """Set every point weight back to 1 (marks are untouched)."""
        cdef Py_ssize_t t
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

    def clone(self):
        cdef IntervalWeightTree other = IntervalWeightTree.__new__(IntervalWeightTree)
        other.n = self.n
        other.height = self.height
        other.visits = 0
        other._left_a = self._left_a  # static shape: safe to share
        other._right_a = self._right_a
        other._minc_a = self._minc_a
        other._maxc_a = self._maxc_a
        other._cnt_a = self._cnt_a
        other._ccnt_a = self._ccnt_a
        other._bind_views()
        other._mu = list(self._mu)
        other._w = list(self._w)
        other._minw = list(self._minw)
        other._csum = list(self._csum)
        other._cmin = list(self._cmin)
        other._usum = list(self._usum)
        return other


def build_interval_tree(points, covered_marks):
    """Factory matching the documented operation name."""
    return IntervalWeightTree(points, covered_marks)
