"""Common result value for all kernel algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class KernelResult:
    """Outcome of a kernel computation.

    ``indices`` are sorted positions into the instance's box list. ``certified``
    is True only when the result was re-checked against the instance by an
    independent route (exact union volume, or full point coverage in point
    mode) — never merely because the algorithm believes itself.
    """

    algorithm: str
    indices: tuple[int, ...]
    certified: bool
    stats: Mapping[str, object] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.indices)

    def as_dict(self) -> dict[str, object]:
        return {
            "algorithm": self.algorithm,
            "indices": list(self.indices),
            "size": self.size,
            "certified": self.certified,
            "stats": dict(self.stats),
        }
