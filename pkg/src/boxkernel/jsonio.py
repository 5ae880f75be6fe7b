"""JSON documents for instances and results.

Instances travel as::

    {"format": "boxkernel-instance", "version": 1,
     "dim": 2,
     "boxes": [[[0, 0], [2, 1]], ...],        # [lo, hi] corner pairs
     "points": [[1, 1], ...],                  # optional, switches point mode
     "meta": {...}}                            # free-form, not hashed

Results refer back to their instance through a digest over the canonical
form of the mathematical content (dim, boxes, points — not meta), so a
result can be checked against the instance it was computed from without
trusting either file's prose. All coordinates in documents are plain
integers; quantities that can be half-integral (volumes, midpoints of the
doubled grid) are rendered as exact decimal strings, never floats.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import IO, Mapping, Optional, Union

from .errors import InvalidInputError
from .geometry import Instance
from .results import KernelResult

INSTANCE_FORMAT = "boxkernel-instance"
RESULT_FORMAT = "boxkernel-result"
FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# Exact number rendering
# ---------------------------------------------------------------------------


def exact_number_str(value: Union[int, Fraction]) -> str:
    """Render an int or Fraction exactly: decimal if terminating, else p/q."""
    if isinstance(value, int):
        return str(value)
    fr = Fraction(value)
    num, den = fr.numerator, fr.denominator
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    k = max(twos, fives)
    scaled = abs(num) * 10**k // den
    digits = str(scaled).rjust(k + 1, "0")
    sign = "-" if num < 0 else ""
    if k == 0:
        return sign + digits
    out = (sign + digits[:-k] + "." + digits[-k:]).rstrip("0").rstrip(".")
    return out or "0"


def scaled_coord_str(scaled: int) -> Union[int, str]:
    """A doubled-grid coordinate as an int if whole, else '<x>.5'."""
    if scaled % 2 == 0:
        return scaled // 2
    return exact_number_str(Fraction(scaled, 2))


def _jsonable(value):
    """Recursively coerce stats values into JSON-encodable shapes."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return exact_number_str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in seq]
    raise InvalidInputError(f"cannot encode {type(value).__name__} as JSON")


# ---------------------------------------------------------------------------
# Instance documents
# ---------------------------------------------------------------------------


def instance_to_obj(inst: Instance) -> dict:
    obj = {
        "format": INSTANCE_FORMAT,
        "version": FORMAT_VERSION,
        "dim": inst.dim,
        "boxes": [[list(lo), list(hi)] for lo, hi in inst.raw_boxes()],
    }
    raw_pts = inst.raw_points()
    if raw_pts is not None:
        obj["points"] = [list(p) for p in raw_pts]
    if inst.meta:
        obj["meta"] = _jsonable(inst.meta)
    return obj


def _require_int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInputError(f"{what} must be an integer, got {value!r}")
    return value


def instance_from_obj(obj: object) -> Instance:
    if not isinstance(obj, Mapping):
        raise InvalidInputError("instance document must be a JSON object")
    if obj.get("format") != INSTANCE_FORMAT:
        raise InvalidInputError(
            f"not an instance document (format={obj.get('format')!r})"
        )
    if obj.get("version") != FORMAT_VERSION:
        raise InvalidInputError(f"unsupported version {obj.get('version')!r}")
    dim = _require_int(obj.get("dim"), "dim")
    raw_boxes = obj.get("boxes")
    if not isinstance(raw_boxes, list) or not raw_boxes:
        raise InvalidInputError("'boxes' must be a non-empty list")
    boxes = []
    for t, entry in enumerate(raw_boxes):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(c, list) and len(c) == dim for c in entry)
        ):
            raise InvalidInputError(f"box #{t} must be [lo, hi] of arity {dim}")
        lo = tuple(_require_int(c, f"box #{t} corner") for c in entry[0])
        hi = tuple(_require_int(c, f"box #{t} corner") for c in entry[1])
        boxes.append((lo, hi))
    points = None
    if "points" in obj and obj["points"] is not None:
        raw_pts = obj["points"]
        if not isinstance(raw_pts, list):
            raise InvalidInputError("'points' must be a list")
        points = []
        for t, entry in enumerate(raw_pts):
            if not isinstance(entry, list) or len(entry) != dim:
                raise InvalidInputError(f"point #{t} must have arity {dim}")
            points.append(tuple(_require_int(c, f"point #{t}") for c in entry))
    meta = obj.get("meta") or {}
    if not isinstance(meta, Mapping):
        raise InvalidInputError("'meta' must be an object")
    return Instance.from_raw(dim, boxes, points=points, meta=dict(meta))


def instance_digest(inst: Instance) -> str:
    """SHA-256 over the canonical mathematical content (meta excluded)."""
    payload = {
        "dim": inst.dim,
        "boxes": [[list(lo), list(hi)] for lo, hi in inst.raw_boxes()],
        "points": (
            [list(p) for p in inst.raw_points()]
            if inst.points is not None
            else None
        ),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Result documents
# ---------------------------------------------------------------------------


def result_to_obj(result: KernelResult, inst: Instance) -> dict:
    return {
        "format": RESULT_FORMAT,
        "version": FORMAT_VERSION,
        "algorithm": result.algorithm,
        "indices": list(result.indices),
        "size": result.size,
        "certified": result.certified,
        "instance_digest": instance_digest(inst),
        "stats": _jsonable(result.stats),
    }


def result_from_obj(obj: object) -> tuple[KernelResult, str]:
    if not isinstance(obj, Mapping):
        raise InvalidInputError("result document must be a JSON object")
    if obj.get("format") != RESULT_FORMAT:
        raise InvalidInputError(
            f"not a result document (format={obj.get('format')!r})"
        )
    if obj.get("version") != FORMAT_VERSION:
        raise InvalidInputError(f"unsupported version {obj.get('version')!r}")
    algorithm = obj.get("algorithm")
    if not isinstance(algorithm, str) or not algorithm:
        raise InvalidInputError("'algorithm' must be a non-empty string")
    indices_raw = obj.get("indices")
    if not isinstance(indices_raw, list):
        raise InvalidInputError("'indices' must be a list")
    indices = tuple(_require_int(i, "result index") for i in indices_raw)
    if any(i < 0 for i in indices):
        raise InvalidInputError("result indices must be non-negative")
    if "size" in obj and obj["size"] != len(indices):
        raise InvalidInputError("'size' disagrees with the index list")
    certified = obj.get("certified")
    if not isinstance(certified, bool):
        raise InvalidInputError("'certified' must be a boolean")
    digest = obj.get("instance_digest")
    if not isinstance(digest, str) or len(digest) != 64:
        raise InvalidInputError("'instance_digest' must be a sha256 hex string")
    stats = obj.get("stats") or {}
    if not isinstance(stats, Mapping):
        raise InvalidInputError("'stats' must be an object")
    result = KernelResult(
        algorithm=algorithm,
        indices=indices,
        certified=certified,
        stats=dict(stats),
    )
    return result, digest


# ---------------------------------------------------------------------------
# File helpers
# ---------------------------------------------------------------------------


def _dump(obj: dict, fp: IO[str]) -> None:
    json.dump(obj, fp, indent=2, sort_keys=False)
    fp.write("\n")


def dump_instance(inst: Instance, fp: IO[str]) -> None:
    _dump(instance_to_obj(inst), fp)


def load_instance(fp: IO[str]) -> Instance:
    try:
        obj = json.load(fp)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc
    return instance_from_obj(obj)


def dump_result(result: KernelResult, inst: Instance, fp: IO[str]) -> None:
    _dump(result_to_obj(result, inst), fp)


def load_result(fp: IO[str]) -> tuple[KernelResult, str]:
    try:
        obj = json.load(fp)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc
    return result_from_obj(obj)


__all__ = [
    "INSTANCE_FORMAT",
    "RESULT_FORMAT",
    "FORMAT_VERSION",
    "exact_number_str",
    "scaled_coord_str",
    "instance_to_obj",
    "instance_from_obj",
    "instance_digest",
    "result_to_obj",
    "result_from_obj",
    "dump_instance",
    "load_instance",
    "dump_result",
    "load_result",
]
