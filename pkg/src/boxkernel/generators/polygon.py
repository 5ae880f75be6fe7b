"""Covering a rectilinear polygon with every inscribed grid-aligned box.

The polygon's vertex coordinates induce a grid; a candidate box is any pair
of grid columns times any pair of grid rows. The generator keeps exactly the
candidates fully inside the polygon, so the emitted instance's union region
equals the polygon and kernel algorithms can be exercised on shapes with a
known geometric story (an L needs two boxes, a k-step staircase needs k).

All tests are exact integer arithmetic: a unit grid cell lies inside iff a
rightward ray from its midpoint crosses an odd number of vertical edges, and
the midpoint (a half-integer point) can never sit on an edge.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..discretize import union_volume
from ..errors import InvalidInputError, ResourceLimitError, StateError
from ..geometry import Instance

DEFAULT_MAX_BOXES = 100_000

Vertex = tuple[int, int]


def _validate_polygon(vertices: Sequence[Vertex]) -> list[Vertex]:
    verts = [(int(x), int(y)) for x, y in vertices]
    m = len(verts)
    if m < 4:
        raise InvalidInputError("a rectilinear polygon needs at least 4 vertices")
    edges = []
    for t in range(m):
        a, b = verts[t], verts[(t + 1) % m]
        if a == b:
            raise InvalidInputError(f"repeated consecutive vertex {a}")
        if a[0] != b[0] and a[1] != b[1]:
            raise InvalidInputError(
                f"edge {a}-{b} is neither horizontal nor vertical"
            )
        edges.append((a, b))
    for t in range(m):
        horizontal = edges[t][0][1] == edges[t][1][1]
        next_horizontal = edges[(t + 1) % m][0][1] == edges[(t + 1) % m][1][1]
        if horizontal == next_horizontal:
            raise InvalidInputError(
                "consecutive edges share a direction (collinear or zero turn)"
            )
    for s in range(m):
        for t in range(s + 1, m):
            if t == s + 1 or (s == 0 and t == m - 1):
                continue  # adjacent edges meet at their shared vertex only
            if _segments_touch(edges[s], edges[t]):
                raise InvalidInputError(
                    f"edges {s} and {t} touch; the polygon is not simple"
                )
    doubled = 0
    for (ax, ay), (bx, by) in edges:
        doubled += ax * by - bx * ay
    if doubled <= 0:
        raise InvalidInputError(
            "vertices must wind counterclockwise (positive signed area)"
        )
    return verts


def _segments_touch(e1, e2) -> bool:
    (ax, ay), (bx, by) = e1
    (cx, cy), (dx, dy) = e2
    ax, bx = min(ax, bx), max(ax, bx)
    ay, by = min(ay, by), max(ay, by)
    cx, dx = min(cx, dx), max(cx, dx)
    cy, dy = min(cy, dy), max(cy, dy)
    return ax <= dx and cx <= bx and ay <= dy and cy <= by


def polygon_to_boxes(
    vertices: Sequence[Vertex], *, max_boxes: int = DEFAULT_MAX_BOXES
) -> Instance:
    """All grid-aligned boxes inscribed in a simple rectilinear polygon."""
    verts = _validate_polygon(vertices)
    m = len(verts)
    vertical_edges = []
    doubled_area = 0
    for t in range(m):
        a, b = verts[t], verts[(t + 1) % m]
        doubled_area += a[0] * b[1] - b[0] * a[1]
        if a[0] == b[0]:
            vertical_edges.append((a[0], min(a[1], b[1]), max(a[1], b[1])))
    gx = sorted({x for x, _ in verts})
    gy = sorted({y for _, y in verts})
    nx, ny = len(gx) - 1, len(gy) - 1

    inside = [[False] * ny for _ in range(nx)]
    for ci in range(nx):
        mx2 = gx[ci] + gx[ci + 1]  # doubled midpoint keeps everything integer
        for cj in range(ny):
            my2 = gy[cj] + gy[cj + 1]
            crossings = 0
            for ex, ylo, yhi in vertical_edges:
                if 2 * ex > mx2 and 2 * ylo < my2 < 2 * yhi:
                    crossings += 1
            inside[ci][cj] = crossings % 2 == 1

    pref = [[0] * (ny + 1) for _ in range(nx + 1)]
    for ci in range(nx):
        for cj in range(ny):
            pref[ci + 1][cj + 1] = (
                pref[ci][cj + 1]
                + pref[ci + 1][cj]
                - pref[ci][cj]
                + (1 if inside[ci][cj] else 0)
            )

    raw = []
    for i in range(nx + 1):
        for j in range(i + 1, nx + 1):
            for k in range(ny + 1):
                for l in range(k + 1, ny + 1):
                    cells = (j - i) * (l - k)
                    filled = pref[j][l] - pref[i][l] - pref[j][k] + pref[i][k]
                    if filled == cells:
                        raw.append(((gx[i], gy[k]), (gx[j], gy[l])))
                        if len(raw) > max_boxes:
                            raise ResourceLimitError(
                                f"polygon produces more than {max_boxes} boxes"
                            )
    if not raw:
        raise InvalidInputError("polygon encloses no grid cell")
    inst = Instance.from_raw(
        2, raw, meta={"generator": "polygon", "vertices": len(verts)}
    )
    if union_volume(inst) != Fraction(doubled_area, 2):
        raise StateError("emitted boxes do not tile the polygon's area")
    return inst


def staircase_polygon(steps: int, *, step: int = 1) -> list[Vertex]:
    """Counterclockwise outline of a staircase with ``steps`` unit steps."""
    if steps < 1:
        raise InvalidInputError("need at least one step")
    if step < 1:
        raise InvalidInputError("step size must be positive")
    k, s = steps, step
    verts: list[Vertex] = [(0, 0), (k * s, 0)]
    for i in range(1, k + 1):
        verts.append(((k - i + 1) * s, i * s))
        verts.append(((k - i) * s, i * s))
    return verts
