"""Backend selection for the interval weight tree.

Two interchangeable implementations exist:

* ``boxkernel._weighttree`` — compiled (Cython) traversal core,
* ``boxkernel._weighttree_py`` — pure Python, always available.

Both keep weights as exact Python rationals, so their results are identical
bit for bit; the compiled one only removes interpreter overhead from tree
bookkeeping. The default is the compiled backend when importable. Set
``BOXKERNEL_WEIGHTTREE=py`` (or ``c``) to force a choice — forcing ``c`` when
the extension is missing raises ImportError rather than silently degrading.
"""

from __future__ import annotations

import os

from ._weighttree_py import NEG_INF, POS_INF, RangeAggregates

_requested = os.environ.get("BOXKERNEL_WEIGHTTREE", "").strip().lower()

if _requested in {"py", "python", "pure"}:
    from . import _weighttree_py as _impl
elif _requested in {"c", "ext", "cython", "compiled"}:
    from . import _weighttree as _impl  # type: ignore[no-redef]
elif _requested:
    raise ImportError(
        f"BOXKERNEL_WEIGHTTREE={_requested!r} is not a known backend (py|c)"
    )
else:
    try:
        from . import _weighttree as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _weighttree_py as _impl

IntervalWeightTree = _impl.IntervalWeightTree
build_interval_tree = _impl.build_interval_tree
BACKEND: str = _impl.BACKEND

__all__ = [
    "BACKEND",
    "IntervalWeightTree",
    "NEG_INF",
    "POS_INF",
    "RangeAggregates",
    "build_interval_tree",
]
