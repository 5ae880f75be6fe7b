import random
import sys

import pytest

from boxkernel import Instance


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def t3() -> Instance:
    """Three nested-ish boxes where the smallest is redundant."""
    return Instance.from_raw(2, [((0, 0), (3, 1)), ((0, 0), (1, 3)), ((0, 0), (1, 1))])


@pytest.fixture
def w2() -> Instance:
    """Two overlapping boxes, neither redundant."""
    return Instance.from_raw(2, [((0, 0), (2, 1)), ((1, 0), (3, 1))])


@pytest.fixture
def cross() -> Instance:
    """A plus sign; both bars are needed."""
    return Instance.from_raw(2, [((1, 0), (2, 3)), ((0, 1), (3, 2))])


def small_random_instance(rng: random.Random, *, n=None, dim=None, coord_max=16):
    """Ad-hoc small instances for property tests (kept apart from the
    seeded generator so generator bugs cannot mask library bugs)."""
    n = n if n is not None else rng.randint(1, 8)
    dim = dim if dim is not None else rng.randint(1, 3)
    boxes = []
    for _ in range(n):
        lo, hi = [], []
        for _ in range(dim):
            a = rng.randrange(coord_max)
            b = rng.randrange(coord_max)
            if a == b:
                b = a + 1
            lo.append(min(a, b))
            hi.append(max(a, b))
        boxes.append((tuple(lo), tuple(hi)))
    return Instance.from_raw(dim, boxes)
