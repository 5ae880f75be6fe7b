"""Seeded random box instances for experiments and stress tests."""

from __future__ import annotations

import random

from ..errors import InvalidInputError
from ..geometry import Instance


def random_instance(
    n: int,
    dim: int,
    *,
    seed: int = 0,
    coord_max: int = 100,
    max_side: int = 30,
) -> Instance:
    """``n`` axis-aligned boxes with integer corners in ``[0, coord_max]``.

    Each box picks, per dimension, a lower corner uniformly from
    ``[0, coord_max)`` and a side length uniformly from ``[1, max_side]``,
    clipped to the domain. Same seed, same instance.
    """
    if n < 1:
        raise InvalidInputError("need at least one box")
    if dim < 1:
        raise InvalidInputError("dimension must be at least 1")
    if coord_max < 1 or max_side < 1:
        raise InvalidInputError("coord_max and max_side must be positive")
    rng = random.Random(seed)
    raw = []
    for _ in range(n):
        lo = []
        hi = []
        for _ in range(dim):
            a = rng.randrange(coord_max)
            side = rng.randrange(1, max_side + 1)
            lo.append(a)
            hi.append(min(a + side, coord_max))
        raw.append((tuple(lo), tuple(hi)))
    return Instance.from_raw(
        dim,
        raw,
        meta={
            "generator": "random",
            "seed": seed,
            "coord_max": coord_max,
            "max_side": max_side,
        },
    )
