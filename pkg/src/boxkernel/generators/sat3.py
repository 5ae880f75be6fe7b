"""3-CNF formulas as box instances with a provable optimal-kernel size law.

Every variable becomes a closed *ring* of overlapping rectangles — an even
cycle whose only minimum vertex covers are its two alternating color classes
(red = "true", blue = "false"). Every clause becomes a 9-cycle *comb* hung
above or below the rings: three vertical legs (one per literal) joined by six
horizontal pieces. A leg couples to a ring rectangle of matching color
through a small coupling square covered by exactly those two boxes, so a leg
can only be dropped from a cover when its ring rectangle is present — that
is, when the literal is true.

*Green* boxes are pinned: each has a sliver covered by nothing else, so every
cover contains every green. Greens mop up exactly the area not accounted for
by the cycle arguments, which makes the optimal kernel size exactly

    (greens) + (ring covers) + (comb covers)
    = (20m + 2n) + (6m + n) + 5m = 31m + 3n

when the formula is satisfiable (m clauses, n variables), and at least one
more otherwise: an unsatisfied clause forces all three legs, and a 9-cycle
cover through three pairwise-nonadjacent fixed vertices needs 6, not 5.

The *box cover* variant drops the greens and instead asks to cover one
witness point per structural adjacency (24m + 2n points over 21m + 2n
boxes, every point at depth exactly 2); its optimum is 11m + n iff the
formula is satisfiable. Both variants are deterministic in the formula.

Formula documents are ``{"variable_order": [names...], "clauses":
[{"lits": [-1, 2, 3], "side": "above"}, ...]}`` with 1-based literals
indexing ``variable_order``. Layout constraints are validated: a clause's
three variables are distinct, same-side clause spans must be disjoint or
nested (never crossing), and a nested pair keeps the outer clause's columns
off the inner clause's footprint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ..discretize import covers_same_region
from ..errors import AuditError, InvalidInputError, StateError
from ..geometry import (
    Instance,
    analyze_graph,
    build_intersection_graph,
    coverage_depths,
)

SIDES = ("above", "below")
COMB_BASE_HEIGHT = 48
COMB_LEVEL_RISE = 32

# Positions of the three legs inside a comb's 9-cycle ordering.
LEG_POSITIONS = (0, 3, 6)


# ---------------------------------------------------------------------------
# Formula documents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    """Three literals (1-based, sign = polarity), routed above or below."""

    lits: tuple[int, int, int]
    side: str


@dataclass(frozen=True)
class AnnotatedFormula:
    variables: tuple[str, ...]
    clauses: tuple[Clause, ...]

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrence_counts(self) -> list[int]:
        counts = [0] * self.n_vars
        for cl in self.clauses:
            for lit in cl.lits:
                counts[abs(lit) - 1] += 1
        return counts


def formula_from_obj(obj: object) -> AnnotatedFormula:
    """Parse and validate a formula document (see module docstring)."""
    if not isinstance(obj, Mapping):
        raise InvalidInputError("formula document must be a JSON object")
    names = obj.get("variable_order")
    raw_clauses = obj.get("clauses")
    if not isinstance(names, (list, tuple)) or not names:
        raise InvalidInputError("'variable_order' must be a non-empty list")
    for name in names:
        if not isinstance(name, str) or not name:
            raise InvalidInputError("variable names must be non-empty strings")
    if len(set(names)) != len(names):
        raise InvalidInputError("variable names must be unique")
    if not isinstance(raw_clauses, (list, tuple)) or not raw_clauses:
        raise InvalidInputError("'clauses' must be a non-empty list")
    n = len(names)
    clauses = []
    for t, rc in enumerate(raw_clauses):
        if not isinstance(rc, Mapping):
            raise InvalidInputError(f"clause #{t} must be an object")
        lits = rc.get("lits")
        side = rc.get("side")
        if side not in SIDES:
            raise InvalidInputError(f"clause #{t}: side must be one of {SIDES}")
        if not isinstance(lits, (list, tuple)) or len(lits) != 3:
            raise InvalidInputError(f"clause #{t}: need exactly 3 literals")
        vals = []
        for lit in lits:
            if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
                raise InvalidInputError(f"clause #{t}: bad literal {lit!r}")
            if not 1 <= abs(lit) <= n:
                raise InvalidInputError(
                    f"clause #{t}: literal {lit} outside 1..{n}"
                )
            vals.append(lit)
        if len({abs(v) for v in vals}) != 3:
            raise InvalidInputError(f"clause #{t}: variables must be distinct")
        vals.sort(key=abs)
        clauses.append(Clause(lits=tuple(vals), side=side))
    formula = AnnotatedFormula(tuple(names), tuple(clauses))
    for v, count in enumerate(formula.occurrence_counts()):
        if count == 0:
            raise InvalidInputError(
                f"variable {names[v]!r} never occurs in a clause"
            )
    return formula


def formula_to_obj(formula: AnnotatedFormula) -> dict:
    return {
        "variable_order": list(formula.variables),
        "clauses": [
            {"lits": list(cl.lits), "side": cl.side} for cl in formula.clauses
        ],
    }


def parse_dimacs(text: str) -> list[frozenset[int]]:
    """Clause sets from DIMACS CNF text (comments and header skipped)."""
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError as exc:
                raise InvalidInputError(f"bad DIMACS token {tok!r}") from exc
    clauses: list[frozenset[int]] = []
    cur: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(frozenset(cur))
            cur = []
        else:
            cur.append(tok)
    if cur:
        raise InvalidInputError("DIMACS clause list does not end with 0")
    return clauses


def dimacs_matches(formula: AnnotatedFormula, text: str) -> bool:
    """Same clause multiset (as literal sets), ignoring order and sides."""
    ours = sorted(tuple(sorted(cl.lits)) for cl in formula.clauses)
    theirs = sorted(tuple(sorted(fs)) for fs in parse_dimacs(text))
    return ours == theirs


# ---------------------------------------------------------------------------
# Layout planning
# ---------------------------------------------------------------------------


@dataclass
class _ClauseGeom:
    idx: int
    side: str
    positions: tuple[int, int, int]  # variable indices, ascending
    lits: tuple[int, int, int]
    level: int = 0
    h: int = 0
    slots: tuple[int, int, int] = (0, 0, 0)
    columns: tuple[tuple[int, int], ...] = ()


@dataclass
class _Plan:
    offsets: list[int]
    counts: list[int]
    clauses: list[_ClauseGeom]
    # (var, side, slot) -> (clause idx, position-in-clause)
    connected: dict[tuple[int, str, int], tuple[int, int]] = field(
        default_factory=dict
    )


def _contains(outer: _ClauseGeom, inner: _ClauseGeom) -> bool:
    o1, _, o3 = outer.positions
    i1, _, i3 = inner.positions
    return o1 <= i1 and i3 <= o3 and (o1, o3) != (i1, i3)


def _plan_layout(formula: AnnotatedFormula) -> _Plan:
    counts = formula.occurrence_counts()
    offsets = []
    x = 0
    for c in counts:
        offsets.append(x)
        x += 16 * c + 4 + 24  # gadget width plus inter-gadget gap

    geoms = [
        _ClauseGeom(
            idx=k,
            side=cl.side,
            positions=tuple(abs(lit) - 1 for lit in cl.lits),
            lits=cl.lits,
        )
        for k, cl in enumerate(formula.clauses)
    ]

    for side in SIDES:
        group = [g for g in geoms if g.side == side]
        for a, b in combinations(group, 2):
            a1, _, a3 = a.positions
            b1, _, b3 = b.positions
            if a3 <= b1 or b3 <= a1:
                continue
            if _contains(a, b):
                outer, inner = a, b
            elif _contains(b, a):
                outer, inner = b, a
            else:
                raise InvalidInputError(
                    f"clauses #{a.idx} and #{b.idx} cross on side '{side}'"
                )
            if inner.positions[0] <= outer.positions[1] <= inner.positions[2]:
                raise InvalidInputError(
                    f"clause #{outer.idx}'s middle variable lies inside "
                    f"nested clause #{inner.idx}"
                )
        for g in sorted(group, key=lambda g: (g.positions[2] - g.positions[0], g.idx)):
            inner_levels = [h.level for h in group if h is not g and _contains(g, h)]
            g.level = 1 + max(inner_levels) if inner_levels else 0
            g.h = COMB_BASE_HEIGHT + COMB_LEVEL_RISE * g.level

    connected: dict[tuple[int, str, int], tuple[int, int]] = {}
    slot_of: dict[tuple[int, int], int] = {}
    for v in range(formula.n_vars):
        for side in SIDES:
            rights, mids, lefts = [], [], []
            for g in geoms:
                if g.side != side:
                    continue
                if g.positions[2] == v:
                    rights.append(g)
                elif g.positions[1] == v:
                    mids.append(g)
                elif g.positions[0] == v:
                    lefts.append(g)
            rights.sort(key=lambda g: (-g.positions[0], g.idx))
            mids.sort(key=lambda g: g.idx)
            lefts.sort(key=lambda g: (-g.positions[2], g.idx))
            cursor = 1
            for g in rights + mids + lefts:
                j = g.positions.index(v)
                want_odd = g.lits[j] > 0  # positive literal -> red -> odd slot
                s = cursor
                while s <= 2 * counts[v] and (
                    (s % 2 == 1) != want_odd or (v, side, s) in connected
                ):
                    s += 1
                if s > 2 * counts[v]:
                    raise InvalidInputError(
                        f"cannot route clause #{g.idx} to variable "
                        f"{formula.variables[v]!r}: its {side} slots ran out"
                    )
                connected[(v, side, s)] = (g.idx, j)
                slot_of[(g.idx, j)] = s
                cursor = s + 1

    for g in geoms:
        slots = tuple(slot_of[(g.idx, j)] for j in range(3))
        cols = []
        for j in range(3):
            xv = offsets[g.positions[j]]
            cols.append((xv + 8 * slots[j] - 4, xv + 8 * slots[j]))
        g.slots = slots
        g.columns = tuple(cols)

    # Geometric authority check: occupied x-extents of same-side clauses must
    # keep columns off nested footprints and disjoint spans truly apart.
    extent = {
        g.idx: (g.columns[0][0] - 2, g.columns[2][1] + 2) for g in geoms
    }
    for side in SIDES:
        group = [g for g in geoms if g.side == side]
        for a, b in combinations(group, 2):
            if a.positions[2] <= b.positions[0] or b.positions[2] <= a.positions[0]:
                lo_a, hi_a = extent[a.idx]
                lo_b, hi_b = extent[b.idx]
                if min(hi_a, hi_b) > max(lo_a, lo_b):
                    raise InvalidInputError(
                        f"layout infeasible: clauses #{a.idx} and #{b.idx} "
                        "collide despite disjoint variable spans"
                    )
                continue
            outer, inner = (a, b) if _contains(a, b) else (b, a)
            ilo, ihi = extent[inner.idx]
            for j, (lo, hi) in enumerate(outer.columns):
                clo, chi = (lo - 2, hi) if j < 2 else (lo, hi + 2)
                if min(chi, ihi) > max(clo, ilo):
                    raise InvalidInputError(
                        f"layout infeasible: clause #{outer.idx}'s column "
                        f"#{j + 1} lands on nested clause #{inner.idx}"
                    )

    return _Plan(offsets=offsets, counts=counts, clauses=geoms, connected=connected)


# ---------------------------------------------------------------------------
# Geometry emission
# ---------------------------------------------------------------------------


class _Builder:
    def __init__(self) -> None:
        self.raw: list[tuple[tuple[int, int], tuple[int, int]]] = []
        self.labels: list[str] = []
        self.edge_set: set[tuple[int, int]] = set()
        self.greens: list[int] = []
        self.witnesses: list[tuple[int, tuple[int, int]]] = []

    def add(self, lo: tuple[int, int], hi: tuple[int, int], label: str) -> int:
        if not (lo[0] < hi[0] and lo[1] < hi[1]):
            raise StateError(f"degenerate box for {label}: {lo}..{hi}")
        self.raw.append((lo, hi))
        self.labels.append(label)
        return len(self.raw) - 1

    def edge(self, i: int, j: int) -> None:
        self.edge_set.add((min(i, j), max(i, j)))

    def green(self, i: int, witness: tuple[int, int]) -> None:
        self.greens.append(i)
        self.witnesses.append((i, witness))


def _emit_variable(
    out: _Builder,
    v: int,
    x: int,
    c: int,
    connected: set[tuple[str, int]],
    include_greens: bool,
):
    """One variable ring plus its pinned greens; returns the bookkeeping."""
    left = out.add((x, 0), (x + 4, 16), f"v{v}.left")
    bottoms = [
        out.add((x + 8 * i - 8, 0), (x + 8 * i + 4, 4), f"v{v}.bot{i}")
        for i in range(1, 2 * c + 1)
    ]
    right = out.add((x + 16 * c, 0), (x + 16 * c + 4, 16), f"v{v}.right")
    tops = {
        i: out.add((x + 8 * i - 8, 12), (x + 8 * i + 4, 16), f"v{v}.top{i}")
        for i in range(2 * c, 0, -1)
    }
    cycle = [left, *bottoms, right, *(tops[i] for i in range(2 * c, 0, -1))]
    for t, b in enumerate(cycle):
        out.edge(b, cycle[(t + 1) % len(cycle)])
    reds = [right]
    blues = [left]
    for i in range(1, 2 * c + 1):
        (reds if i % 2 == 1 else blues).extend([bottoms[i - 1], tops[i]])
    if include_greens:
        for i in range(1, 2 * c + 1):
            if ("below", i) not in connected:
                g = out.add(
                    (x + 8 * i - 4, -4), (x + 8 * i, 4), f"v{v}.gbot{i}"
                )
                out.edge(g, bottoms[i - 1])
                out.green(g, (x + 8 * i - 2, -2))
            if ("above", i) not in connected:
                g = out.add(
                    (x + 8 * i - 4, 12), (x + 8 * i, 20), f"v{v}.gtop{i}"
                )
                out.edge(g, tops[i])
                out.green(g, (x + 8 * i - 2, 18))
        g = out.add((x - 4, 4), (x + 4, 12), f"v{v}.gleft")
        out.edge(g, left)
        out.green(g, (x - 2, 8))
        g = out.add((x + 16 * c, 4), (x + 16 * c + 8, 12), f"v{v}.gright")
        out.edge(g, right)
        out.green(g, (x + 16 * c + 6, 8))
    return cycle, reds, blues, tops, bottoms


def _snap_mid(lo: int, hi: int) -> int:
    """Middlemost multiple of 4 in [lo, hi] (both ends are multiples of 4)."""
    if lo % 4 or hi % 4 or lo > hi:
        raise StateError(f"bad midpoint window [{lo}, {hi}]")
    return 4 * ((lo // 4 + hi // 4) // 2)


def _emit_comb(
    out: _Builder,
    k: int,
    cols: Sequence[tuple[int, int]],
    h: int,
    side: str,
    include_greens: bool,
    legs_bottom: int = 12,
) -> tuple[int, ...]:
    """One clause comb (9-cycle plus greens); returns the cycle's indices.

    Everything is laid out in 'above' coordinates and mirrored through the
    ring midline y = 8 for below-side clauses.
    """
    (c1lo, c1hi), (c2lo, c2hi), (c3lo, c3hi) = cols
    m12 = _snap_mid(c1hi + 4, c2lo - 8)
    m23 = _snap_mid(c2hi + 4, c3lo - 8)
    ms = _snap_mid(c1hi + 4, c3lo - 8)

    def box(x0: int, y0: int, x1: int, y1: int, label: str) -> int:
        if side == "below":
            y0, y1 = 16 - y1, 16 - y0
        return out.add((x0, y0), (x1, y1), f"c{k}.{label}")

    def green(idx: int, wx: int, wy: int) -> None:
        out.green(idx, (wx, wy if side == "above" else 16 - wy))

    leg1 = box(c1lo, legs_bottom, c1hi, h + 4, "leg1")
    p4 = box(c1lo, h - 8, m12 + 4, h - 4, "p4")
    p5 = box(m12, h - 8, c2hi, h - 4, "p5")
    leg2 = box(c2lo, legs_bottom, c2hi, h - 4, "leg2")
    p6 = box(c2lo, h - 12, m23 + 4, h - 8, "p6")
    p7 = box(m23, h - 12, c3hi, h - 8, "p7")
    leg3 = box(c3lo, legs_bottom, c3hi, h + 4, "leg3")
    p8 = box(ms, h, c3hi, h + 4, "p8")
    p9 = box(c1lo, h, ms + 4, h + 4, "p9")
    cycle = (leg1, p4, p5, leg2, p6, p7, leg3, p8, p9)
    for t, b in enumerate(cycle):
        out.edge(b, cycle[(t + 1) % 9])

    if include_greens:
        g = box(c1hi, h - 12, m12, h - 4, "g4")
        out.edge(g, p4)
        green(g, (c1hi + m12) // 2, h - 10)
        g = box(m12 + 4, h - 12, c2lo, h - 4, "g5")
        out.edge(g, p5)
        green(g, (m12 + 4 + c2lo) // 2, h - 10)
        g = box(c2hi, h - 16, m23, h - 8, "g6")
        out.edge(g, p6)
        green(g, (c2hi + m23) // 2, h - 14)
        g = box(m23 + 4, h - 16, c3lo, h - 8, "g7")
        out.edge(g, p7)
        green(g, (m23 + 4 + c3lo) // 2, h - 14)
        g = box(ms + 4, h, c3lo, h + 8, "g8")
        out.edge(g, p8)
        green(g, (ms + 4 + c3lo) // 2, h + 6)
        g = box(c1hi, h, ms, h + 8, "g9")
        out.edge(g, p9)
        green(g, (c1hi + ms) // 2, h + 6)
        g = box(c1lo - 2, 16, c1hi, h - 8, "gl1a")
        out.edge(g, leg1)
        green(g, c1lo - 1, (16 + h - 8) // 2)
        g = box(c1lo - 2, h - 4, c1hi, h, "gl1b")
        out.edge(g, leg1)
        green(g, c1lo - 1, h - 2)
        g = box(c2lo - 2, 16, c2hi, h - 12, "gl2")
        out.edge(g, leg2)
        green(g, c2lo - 1, (16 + h - 12) // 2)
        g = box(c3lo, 16, c3hi + 2, h - 12, "gl3a")
        out.edge(g, leg3)
        green(g, c3hi + 1, (16 + h - 12) // 2)
        g = box(c3lo, h - 8, c3hi + 2, h, "gl3b")
        out.edge(g, leg3)
        green(g, c3hi + 1, h - 4)
    return cycle


def _edge_center(
    raw: Sequence[tuple[tuple[int, int], tuple[int, int]]], i: int, j: int
) -> tuple[int, int]:
    (alo, ahi), (blo, bhi) = raw[i], raw[j]
    lo = (max(alo[0], blo[0]), max(alo[1], blo[1]))
    hi = (min(ahi[0], bhi[0]), min(ahi[1], bhi[1]))
    if not (lo[0] < hi[0] and lo[1] < hi[1]):
        raise AuditError(f"boxes {i} and {j} lack a positive overlap")
    if (lo[0] + hi[0]) % 2 or (lo[1] + hi[1]) % 2:
        raise AuditError(f"overlap of boxes {i}, {j} has a non-integer center")
    return ((lo[0] + hi[0]) // 2, (lo[1] + hi[1]) // 2)


# ---------------------------------------------------------------------------
# Gadget assembly and audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sat3Gadget:
    """A generated instance plus the structure tests and covers rely on."""

    instance: Instance
    formula: AnnotatedFormula
    variant: str  # "mck" | "boxcover"
    labels: tuple[str, ...]
    greens: tuple[int, ...]
    ring_cycles: tuple[tuple[int, ...], ...]
    red_classes: tuple[tuple[int, ...], ...]
    blue_classes: tuple[tuple[int, ...], ...]
    combs: tuple[tuple[int, ...], ...]
    expected_edges: frozenset[tuple[int, int]]
    green_witnesses: tuple[tuple[int, tuple[int, int]], ...]

    @property
    def optimal_size_if_satisfiable(self) -> int:
        m, n = self.formula.m, self.formula.n_vars
        if self.variant == "mck":
            return 31 * m + 3 * n
        return 11 * m + n


def _generate(
    formula: AnnotatedFormula, include_greens: bool, self_check: str
) -> Sat3Gadget:
    plan = _plan_layout(formula)
    out = _Builder()
    ring_cycles, red_classes, blue_classes = [], [], []
    tops_all, bottoms_all = [], []
    for v in range(formula.n_vars):
        conn_v = {
            (side, slot)
            for (var, side, slot) in plan.connected
            if var == v
        }
        cycle, reds, blues, tops, bottoms = _emit_variable(
            out, v, plan.offsets[v], plan.counts[v], conn_v, include_greens
        )
        ring_cycles.append(tuple(cycle))
        red_classes.append(tuple(reds))
        blue_classes.append(tuple(blues))
        tops_all.append(tops)
        bottoms_all.append(bottoms)

    combs = []
    for g in plan.clauses:
        cycle = _emit_comb(out, g.idx, g.columns, g.h, g.side, include_greens)
        combs.append(cycle)
        for j, pos in enumerate(LEG_POSITIONS):
            var, slot = g.positions[j], g.slots[j]
            if g.side == "above":
                rect = tops_all[var][slot]
            else:
                rect = bottoms_all[var][slot - 1]
            out.edge(cycle[pos], rect)

    points = None
    if not include_greens:
        points = [
            _edge_center(out.raw, i, j) for (i, j) in sorted(out.edge_set)
        ]
    variant = "mck" if include_greens else "boxcover"
    inst = Instance.from_raw(
        2,
        out.raw,
        points=points,
        meta={
            "generator": f"sat3-{variant}",
            "n_vars": formula.n_vars,
            "m": formula.m,
            "formula": formula_to_obj(formula),
        },
    )
    gadget = Sat3Gadget(
        instance=inst,
        formula=formula,
        variant=variant,
        labels=tuple(out.labels),
        greens=tuple(out.greens),
        ring_cycles=tuple(ring_cycles),
        red_classes=tuple(red_classes),
        blue_classes=tuple(blue_classes),
        combs=tuple(combs),
        expected_edges=frozenset(out.edge_set),
        green_witnesses=tuple(out.witnesses),
    )
    _audit_gadget(gadget, self_check)
    return gadget


def _resolve_check(level: str, m: int) -> str:
    if level == "auto":
        return "full" if m <= 4 else "structural"
    if level not in ("none", "structural", "full"):
        raise InvalidInputError(f"unknown self_check level {level!r}")
    return level


def _audit_gadget(g: Sat3Gadget, level: str) -> None:
    level = _resolve_check(level, g.formula.m)
    if level == "none":
        return
    inst = g.instance
    m, n = g.formula.m, g.formula.n_vars
    counts = g.formula.occurrence_counts()

    expect_total = 41 * m + 4 * n if g.variant == "mck" else 21 * m + 2 * n
    if inst.n != expect_total:
        raise AuditError(f"expected {expect_total} boxes, built {inst.n}")
    expect_greens = 20 * m + 2 * n if g.variant == "mck" else 0
    if len(g.greens) != expect_greens:
        raise AuditError(f"expected {expect_greens} greens, got {len(g.greens)}")

    for v in range(n):
        cycle = g.ring_cycles[v]
        if len(cycle) != 4 * counts[v] + 2:
            raise AuditError(f"ring of variable {v} has length {len(cycle)}")
        reds, blues = set(g.red_classes[v]), set(g.blue_classes[v])
        if reds | blues != set(cycle) or reds & blues:
            raise AuditError(f"color classes of variable {v} do not partition")
        if len(reds) != len(blues):
            raise AuditError(f"color classes of variable {v} are unbalanced")
        for t, b in enumerate(cycle):
            nxt = cycle[(t + 1) % len(cycle)]
            if (b in reds) == (nxt in reds):
                raise AuditError(f"ring of variable {v} is not alternating")

    graph = build_intersection_graph(list(inst.boxes), touching=False)
    actual = set(graph.edges())
    if actual != g.expected_edges:
        missing = sorted(g.expected_edges - actual)[:5]
        surplus = sorted(actual - g.expected_edges)[:5]
        raise AuditError(
            "overlap structure mismatch: "
            f"missing {missing}, unexpected {surplus} "
            f"(labels: {[tuple(g.labels[i] for i in e) for e in (missing + surplus)[:5]]})"
        )

    max_deg = max(graph.degree(u) for u in range(inst.n))
    deg_bound = 8 if g.variant == "mck" else 4
    if max_deg > deg_bound:
        raise AuditError(f"max overlap degree {max_deg} exceeds {deg_bound}")

    if g.green_witnesses:
        pts = [(2 * wx, 2 * wy) for _, (wx, wy) in g.green_witnesses]
        depths = coverage_depths(inst.boxes, pts)
        for (idx, w), d in zip(g.green_witnesses, depths):
            if d != 1:
                raise AuditError(
                    f"green {g.labels[idx]!r} witness {w} has depth {d}, not 1"
                )

    if g.variant == "boxcover":
        assert inst.points is not None
        if len(inst.points) != 24 * m + 2 * n:
            raise AuditError(
                f"expected {24 * m + 2 * n} points, built {len(inst.points)}"
            )
        for p, d in zip(inst.points, coverage_depths(inst.boxes, inst.points)):
            if d != 2:
                raise AuditError(f"point {p} has coverage depth {d}, not 2")

    if level != "full":
        return
    report = analyze_graph(graph)
    if g.variant == "mck":
        if report.clique_number > 4:
            raise AuditError(f"overlap clique number {report.clique_number} > 4")
        for i in range(inst.n):
            rest = tuple(t for t in range(inst.n) if t != i)
            removable = covers_same_region(rest, inst)
            if i in set(g.greens):
                if removable:
                    raise AuditError(f"green {g.labels[i]!r} is not pinned")
            elif not removable:
                raise AuditError(f"box {g.labels[i]!r} is unexpectedly pinned")
    else:
        if not report.triangle_free:
            raise AuditError("box-cover overlap graph has a triangle")
        if not report.planarity_necessary:
            raise AuditError("box-cover overlap graph violates the edge bound")


def generate_mck_gadget(
    formula: AnnotatedFormula, *, self_check: str = "auto"
) -> Sat3Gadget:
    """Region-cover gadget: optimal kernel 31m + 3n iff satisfiable."""
    return _generate(formula, include_greens=True, self_check=self_check)


def generate_boxcover_gadget(
    formula: AnnotatedFormula, *, self_check: str = "auto"
) -> Sat3Gadget:
    """Discrete variant: cover 24m + 2n depth-2 points with 21m + 2n boxes."""
    return _generate(formula, include_greens=False, self_check=self_check)


# ---------------------------------------------------------------------------
# Covers from assignments
# ---------------------------------------------------------------------------


def min_c9_cover(forced: Iterable[int] = ()) -> tuple[int, ...]:
    """Smallest vertex cover of a 9-cycle containing the given vertices.

    Vertices are cycle positions 0..8; ties resolve to the lexicographically
    smallest cover. Any cover containing all three leg positions (0, 3, 6)
    needs six vertices; otherwise five suffice.
    """
    need = frozenset(forced)
    if not need <= set(range(9)):
        raise InvalidInputError(f"forced positions {sorted(need)} not in 0..8")
    for r in range(10):
        for combo in combinations(range(9), r):
            s = set(combo)
            if need <= s and all(
                t in s or (t + 1) % 9 in s for t in range(9)
            ):
                return combo
    raise StateError("a 9-cycle always has a vertex cover")  # unreachable


def kernel_from_assignment(
    gadget: Sat3Gadget, assignment: Sequence[bool]
) -> tuple[int, ...]:
    """The canonical cover induced by a truth assignment.

    All greens, one ring class per variable (red for true, blue for false),
    and per clause the smallest comb cover whose legs include every falsified
    literal's leg. Size is ``optimal_size_if_satisfiable`` plus one per
    clause the assignment fails to satisfy — for any assignment, satisfying
    or not, the result is a certified cover.
    """
    if len(assignment) != gadget.formula.n_vars:
        raise InvalidInputError(
            f"assignment length {len(assignment)} != {gadget.formula.n_vars}"
        )
    chosen: set[int] = set(gadget.greens)
    for v, value in enumerate(assignment):
        chosen.update(
            gadget.red_classes[v] if value else gadget.blue_classes[v]
        )
    for k, clause in enumerate(gadget.formula.clauses):
        forced = []
        for j, lit in enumerate(clause.lits):
            literal_true = bool(assignment[abs(lit) - 1]) == (lit > 0)
            if not literal_true:
                forced.append(LEG_POSITIONS[j])
        for pos in min_c9_cover(forced):
            chosen.add(gadget.combs[k][pos])
    return tuple(sorted(chosen))


# ---------------------------------------------------------------------------
# Self-contained study gadgets
# ---------------------------------------------------------------------------


def isolated_variable_gadget(c: int) -> tuple[Instance, tuple[int, ...]]:
    """A lone ring with ``c`` green-less red slots; unique optimum returned.

    The slots' red rectangles own uncovered slivers, so they are pinned; the
    ring's alternation then admits exactly one optimal kernel: the full red
    class plus every green — ``5c + 3`` boxes, perfectly monochromatic.
    """
    if c < 1:
        raise InvalidInputError("need at least one vacant slot")
    out = _Builder()
    vacant = {("above", i) for i in range(1, 2 * c + 1, 2)}
    cycle, reds, _blues, _tops, _bottoms = _emit_variable(
        out, 0, 0, c, vacant, include_greens=True
    )
    inst = Instance.from_raw(
        2,
        out.raw,
        meta={"generator": "sat3-isolated-variable", "occurrences": c},
    )
    expected = tuple(sorted(set(out.greens) | set(reds)))
    graph = build_intersection_graph(list(inst.boxes), touching=False)
    if set(graph.edges()) != out.edge_set:
        raise AuditError("isolated ring overlap structure mismatch")
    pts = [(2 * wx, 2 * wy) for _, (wx, wy) in out.witnesses]
    if any(d != 1 for d in coverage_depths(inst.boxes, pts)):
        raise AuditError("isolated ring green witness not exclusive")
    if not covers_same_region(expected, inst):
        raise AuditError("isolated ring expected kernel does not cover")
    return inst, expected


def isolated_comb() -> tuple[Instance, dict[str, tuple[int, ...]]]:
    """A single clause comb with no rings: 9 blacks, 11 pinned greens.

    Legs rest at the ring line (no coupling squares), so the optimum is the
    11 greens plus any 5-vertex cover of the 9-cycle: 16 boxes.
    """
    out = _Builder()
    cols = ((4, 8), (48, 52), (92, 96))
    cycle = _emit_comb(
        out, 0, cols, COMB_BASE_HEIGHT, "above", True, legs_bottom=16
    )
    inst = Instance.from_raw(
        2, out.raw, meta={"generator": "sat3-isolated-comb"}
    )
    graph = build_intersection_graph(list(inst.boxes), touching=False)
    if set(graph.edges()) != out.edge_set:
        raise AuditError("isolated comb overlap structure mismatch")
    pts = [(2 * wx, 2 * wy) for _, (wx, wy) in out.witnesses]
    if any(d != 1 for d in coverage_depths(inst.boxes, pts)):
        raise AuditError("isolated comb green witness not exclusive")
    return inst, {"comb": cycle, "greens": tuple(out.greens)}
