"""Round-trips and validation for the instance/result JSON documents."""

import io
import json
from fractions import Fraction

import pytest

from boxkernel.errors import InvalidInputError
from boxkernel.geometry import Instance
from boxkernel.greedy import greedy_kernel
from boxkernel.jsonio import (
    dump_instance,
    dump_result,
    exact_number_str,
    instance_digest,
    instance_from_obj,
    instance_to_obj,
    load_instance,
    load_result,
    result_from_obj,
    result_to_obj,
    scaled_coord_str,
)


# ---------------------------------------------------------------------------
# Exact number rendering
# ---------------------------------------------------------------------------


def test_exact_number_str_integers():
    assert exact_number_str(0) == "0"
    assert exact_number_str(42) == "42"
    assert exact_number_str(-7) == "-7"
    assert exact_number_str(Fraction(8, 2)) == "4"


def test_exact_number_str_terminating_decimals():
    assert exact_number_str(Fraction(1, 2)) == "0.5"
    assert exact_number_str(Fraction(3, 4)) == "0.75"
    assert exact_number_str(Fraction(-5, 2)) == "-2.5"
    assert exact_number_str(Fraction(7, 10)) == "0.7"
    assert exact_number_str(Fraction(1, 8)) == "0.125"
    assert exact_number_str(Fraction(1, 5)) == "0.2"
    assert exact_number_str(Fraction(2501, 2)) == "1250.5"
    # trailing zeros are trimmed: 1/4 + 1/4 style values stay canonical
    assert exact_number_str(Fraction(10, 4)) == "2.5"


def test_exact_number_str_non_terminating():
    assert exact_number_str(Fraction(1, 3)) == "1/3"
    assert exact_number_str(Fraction(-2, 7)) == "-2/7"
    assert exact_number_str(Fraction(22, 7)) == "22/7"


def test_scaled_coord_str():
    assert scaled_coord_str(4) == 2
    assert scaled_coord_str(-6) == -3
    assert scaled_coord_str(3) == "1.5"
    assert scaled_coord_str(-3) == "-1.5"
    assert scaled_coord_str(0) == 0


# ---------------------------------------------------------------------------
# Instance documents
# ---------------------------------------------------------------------------


def test_instance_round_trip(t3):
    obj = instance_to_obj(t3)
    assert obj["format"] == "boxkernel-instance"
    assert obj["version"] == 1
    assert obj["dim"] == 2
    assert obj["boxes"][0] == [[0, 0], [3, 1]]
    back = instance_from_obj(obj)
    assert back.boxes == t3.boxes
    assert back.points is None


def test_instance_round_trip_with_points_and_meta():
    inst = Instance.from_raw(
        1, [((0,), (4,))], points=[(1,), (3,)], meta={"note": "tiny"}
    )
    back = instance_from_obj(instance_to_obj(inst))
    assert back.points == inst.points
    assert back.meta["note"] == "tiny"


def test_instance_digest_ignores_meta(t3):
    plain = instance_digest(t3)
    tagged = Instance(
        dim=t3.dim, boxes=t3.boxes, points=None, meta={"label": "anything"}
    )
    assert instance_digest(tagged) == plain
    assert len(plain) == 64
    assert plain == instance_digest(t3)  # stable across calls


def test_instance_digest_sees_math_content(t3, w2):
    assert instance_digest(t3) != instance_digest(w2)
    with_pts = Instance(dim=t3.dim, boxes=t3.boxes, points=((1, 1),), meta={})
    assert instance_digest(with_pts) != instance_digest(t3)


def test_instance_from_obj_validation(t3):
    good = instance_to_obj(t3)

    def corrupt(**patch):
        obj = json.loads(json.dumps(good))
        obj.update(patch)
        with pytest.raises(InvalidInputError):
            instance_from_obj(obj)

    corrupt(format="something-else")
    corrupt(version=2)
    corrupt(dim=0)
    corrupt(boxes=[])
    corrupt(boxes=[[[0, 0], [0, 1]]])  # degenerate box
    corrupt(boxes=[[[0], [1]]])  # arity mismatch with dim=2
    corrupt(boxes=[[[0, 0], [1, True]]])  # bool is not an int here
    corrupt(points=[[1]])  # point arity mismatch
    with pytest.raises(InvalidInputError):
        instance_from_obj("not an object")


# ---------------------------------------------------------------------------
# Result documents
# ---------------------------------------------------------------------------


def test_result_round_trip(t3):
    res = greedy_kernel(t3)
    obj = result_to_obj(res, t3)
    assert obj["format"] == "boxkernel-result"
    assert obj["size"] == res.size
    assert obj["instance_digest"] == instance_digest(t3)
    back, digest = result_from_obj(obj)
    assert back.indices == res.indices
    assert back.algorithm == "greedy"
    assert back.certified == res.certified
    assert digest == instance_digest(t3)


def test_result_stats_are_json_safe(t3):
    res = greedy_kernel(t3)
    obj = result_to_obj(res, t3)
    json.dumps(obj)  # must not raise


def test_result_from_obj_validation(t3):
    good = result_to_obj(greedy_kernel(t3), t3)

    def corrupt(**patch):
        obj = json.loads(json.dumps(good))
        obj.update(patch)
        with pytest.raises(InvalidInputError):
            result_from_obj(obj)

    corrupt(format="nope")
    corrupt(version=99)
    corrupt(algorithm="")
    corrupt(indices="0,1")
    corrupt(indices=[-1])
    corrupt(size=99)  # disagrees with indices
    corrupt(certified="yes")
    corrupt(instance_digest="abc")
    corrupt(stats=[1, 2])


# ---------------------------------------------------------------------------
# File helpers
# ---------------------------------------------------------------------------


def test_dump_and_load_files(t3, tmp_path):
    p = tmp_path / "inst.json"
    with open(p, "w") as fp:
        dump_instance(t3, fp)
    text = p.read_text()
    assert text.endswith("\n")
    with open(p) as fp:
        back = load_instance(fp)
    assert back.boxes == t3.boxes

    res = greedy_kernel(t3)
    q = tmp_path / "res.json"
    with open(q, "w") as fp:
        dump_result(res, t3, fp)
    with open(q) as fp:
        back_res, digest = load_result(fp)
    assert back_res.indices == res.indices
    assert digest == instance_digest(t3)


def test_load_rejects_malformed_json():
    with pytest.raises(InvalidInputError):
        load_instance(io.StringIO("{not json"))
    with pytest.raises(InvalidInputError):
        load_result(io.StringIO(""))
