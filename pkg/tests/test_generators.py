"""Generator tests: random boxes, rectilinear polygons, and the two
formula-driven hardness gadget families.

Every expected count below was re-derived from the construction's size laws
(boxes 41m+4n / 21m+2n, greens 20m+2n, points 24m+2n, optimum 31m+3n / 11m+n
for m clauses over n variables) and cross-checked against the exact solver
where the search is feasible.
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from boxkernel.discretize import covers_same_region, union_volume
from boxkernel.errors import InvalidInputError, ResourceLimitError
from boxkernel.exact import exact_kernel
from boxkernel.generators.polygon import polygon_to_boxes, staircase_polygon
from boxkernel.generators.random_boxes import random_instance
from boxkernel.generators.sat3 import (
    dimacs_matches,
    formula_from_obj,
    formula_to_obj,
    generate_boxcover_gadget,
    generate_mck_gadget,
    isolated_comb,
    isolated_variable_gadget,
    kernel_from_assignment,
    min_c9_cover,
    parse_dimacs,
)
from boxkernel.geometry import Instance, analyze_graph, build_intersection_graph
from boxkernel.greedy import greedy_kernel

PHI1 = {
    "variable_order": ["v1", "v2", "v3"],
    "clauses": [{"lits": [-1, 2, 3], "side": "above"}],
}
PHI2 = {
    "variable_order": ["a", "b", "c"],
    "clauses": [
        {"lits": [-1, 2, 3], "side": "above"},
        {"lits": [1, -2, -3], "side": "below"},
    ],
}


# ---------------------------------------------------------------------------
# Random boxes
# ---------------------------------------------------------------------------


def test_random_instance_is_seed_deterministic():
    a = random_instance(8, 2, seed=5)
    b = random_instance(8, 2, seed=5)
    assert a.boxes == b.boxes
    assert random_instance(8, 2, seed=6).boxes != a.boxes


def test_random_instance_respects_bounds():
    inst = random_instance(40, 3, seed=1, coord_max=50, max_side=7)
    assert inst.n == 40 and inst.dim == 3
    for lo, hi in inst.raw_boxes():
        for k in range(3):
            assert 0 <= lo[k] < hi[k] <= 50
            assert hi[k] - lo[k] <= 7


def test_random_instance_validation():
    with pytest.raises(InvalidInputError):
        random_instance(0, 2)
    with pytest.raises(InvalidInputError):
        random_instance(3, 0)
    with pytest.raises(InvalidInputError):
        random_instance(3, 2, coord_max=0)
    with pytest.raises(InvalidInputError):
        random_instance(3, 2, max_side=0)


def test_random_instance_feeds_the_solvers():
    inst = random_instance(10, 2, seed=3, coord_max=30, max_side=10)
    r = greedy_kernel(inst)
    assert r.certified and 1 <= r.size <= 10


# ---------------------------------------------------------------------------
# Polygons
# ---------------------------------------------------------------------------


def test_unit_square():
    inst = polygon_to_boxes([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert inst.n == 1
    assert union_volume(inst) == 1


def test_l_shape_boxes_volume_and_kernel():
    inst = polygon_to_boxes([(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])
    # grid cells: three of the four quadrants; inscribed boxes are the three
    # unit cells plus the two 2x1 dominoes
    assert inst.n == 5
    assert union_volume(inst) == 12
    assert exact_kernel(inst).size == 2


def test_staircase_outline_and_area():
    poly = staircase_polygon(3, step=2)
    inst = polygon_to_boxes(poly)
    # 3 steps of side 2: 4 * (1+2+3)
    assert union_volume(inst) == 24
    assert covers_same_region(range(inst.n), inst)


def test_polygon_validation():
    with pytest.raises(InvalidInputError):
        polygon_to_boxes([(0, 0), (2, 0), (1, 1)])  # diagonal edge
    with pytest.raises(InvalidInputError):
        polygon_to_boxes([(0, 0), (0, 1), (1, 1), (1, 0)])  # clockwise
    with pytest.raises(InvalidInputError):
        polygon_to_boxes([(0, 0), (1, 0), (1, 1)])  # too few vertices
    with pytest.raises(InvalidInputError):
        polygon_to_boxes([(0, 0), (0, 0), (1, 0), (1, 1), (0, 1)])


def test_polygon_box_cap():
    with pytest.raises(ResourceLimitError):
        polygon_to_boxes(staircase_polygon(6), max_boxes=3)


# ---------------------------------------------------------------------------
# Formula plumbing
# ---------------------------------------------------------------------------


def test_formula_round_trip():
    f = formula_from_obj(PHI2)
    assert formula_from_obj(formula_to_obj(f)) == f
    assert f.n_vars == 3 and f.m == 2
    assert f.occurrence_counts() == [2, 2, 2]


def test_formula_validation():
    def bad(**patch):
        obj = {k: [dict(c) for c in v] if k == "clauses" else list(v)
               for k, v in PHI1.items()}
        obj.update(patch)
        with pytest.raises(InvalidInputError):
            formula_from_obj(obj)

    bad(variable_order=[])
    bad(variable_order=["x", "x", "y"])  # duplicate names
    bad(variable_order=["x", ""])
    bad(clauses=[])
    bad(clauses=[{"lits": [1, 2], "side": "above"}])  # need 3 literals
    bad(clauses=[{"lits": [1, 1, 2], "side": "above"}])  # repeated variable
    bad(clauses=[{"lits": [1, -1, 2], "side": "above"}])
    bad(clauses=[{"lits": [0, 1, 2], "side": "above"}])  # literal 0
    bad(clauses=[{"lits": [1, 2, 9], "side": "above"}])  # out of range
    bad(clauses=[{"lits": [1, 2, 3], "side": "left"}])  # bad side
    # unused variable: v3 never appears
    bad(variable_order=["v1", "v2", "v3"],
        clauses=[{"lits": [1, 2, 2], "side": "above"}])


def test_dimacs_parsing_and_matching():
    text = "c a comment\np cnf 3 1\n-1 2 3 0\n"
    assert parse_dimacs(text) == [frozenset({-1, 2, 3})]
    f = formula_from_obj(PHI1)
    assert dimacs_matches(f, text)
    assert not dimacs_matches(f, "p cnf 3 1\n1 2 3 0\n")
    assert not dimacs_matches(f, "p cnf 3 2\n-1 2 3 0\n-1 2 3 0\n")


def test_crossing_clauses_rejected():
    f = formula_from_obj({
        "variable_order": ["a", "b", "c", "d"],
        "clauses": [
            {"lits": [1, 2, 3], "side": "above"},
            {"lits": [2, 3, 4], "side": "above"},
        ],
    })
    with pytest.raises(InvalidInputError):
        generate_mck_gadget(f)
    # the same spans on opposite sides are fine
    f2 = formula_from_obj({
        "variable_order": ["a", "b", "c", "d"],
        "clauses": [
            {"lits": [1, 2, 3], "side": "above"},
            {"lits": [2, 3, 4], "side": "below"},
        ],
    })
    g = generate_mck_gadget(f2, self_check="full")
    assert g.instance.n == 41 * 2 + 4 * 4
    assert g.optimal_size_if_satisfiable == 31 * 2 + 3 * 4


# ---------------------------------------------------------------------------
# Region-cover gadget (rings + combs + greens)
# ---------------------------------------------------------------------------


def test_phi1_full_census():
    g = generate_mck_gadget(formula_from_obj(PHI1), self_check="full")
    inst = g.instance
    assert inst.n == 53  # 41m + 4n
    assert len(g.greens) == 26  # 20m + 2n
    assert len(g.expected_edges) == 56  # 44m + 4n
    assert g.optimal_size_if_satisfiable == 40  # 31m + 3n
    assert inst.meta["generator"] == "sat3-mck"

    graph = build_intersection_graph(inst.boxes, touching=False)
    assert graph.edge_count == 56
    assert set(graph.edges()) == set(g.expected_edges)
    rep = analyze_graph(graph)
    assert rep.max_degree <= 8
    assert rep.clique_number <= 4


def test_phi1_exact_optimum_is_the_law():
    g = generate_mck_gadget(formula_from_obj(PHI1))
    r = exact_kernel(g.instance)
    assert r.size == 40
    assert r.certified
    assert set(g.greens) <= set(r.indices)  # essential boxes all present


def test_phi1_assignment_covers():
    g = generate_mck_gadget(formula_from_obj(PHI1))
    # (not v1 or v2 or v3): only TFF falsifies
    for bits in range(8):
        asn = [(bits >> v) & 1 == 1 for v in range(3)]
        k = kernel_from_assignment(g, asn)
        falsified = 1 if asn == [True, False, False] else 0
        assert len(k) == 40 + falsified
        assert covers_same_region(k, g.instance)


def test_phi2_mixed_sides_census_and_assignments():
    g = generate_mck_gadget(formula_from_obj(PHI2), self_check="full")
    assert g.instance.n == 94
    assert len(g.greens) == 46
    assert len(g.expected_edges) == 100
    assert g.optimal_size_if_satisfiable == 71
    for bits in range(8):
        asn = [(bits >> v) & 1 == 1 for v in range(3)]
        falsified = sum(
            1
            for cl in g.formula.clauses
            if not any((asn[abs(l) - 1]) == (l > 0) for l in cl.lits)
        )
        k = kernel_from_assignment(g, asn)
        assert len(k) == 71 + falsified
        assert covers_same_region(k, g.instance)


def test_nested_clause_spans():
    # (3,4,5) sits inside the span of (1,2,5); the outer comb must ride higher
    g = generate_mck_gadget(formula_from_obj({
        "variable_order": ["v1", "v2", "v3", "v4", "v5"],
        "clauses": [
            {"lits": [1, 2, 5], "side": "above"},
            {"lits": [3, 4, 5], "side": "above"},
        ],
    }), self_check="full")
    assert g.instance.n == 102
    assert g.optimal_size_if_satisfiable == 77
    raw = g.instance.raw_boxes()
    outer_leg_top = raw[g.labels.index("c0.leg1")][1][1]
    inner_leg_top = raw[g.labels.index("c1.leg1")][1][1]
    assert outer_leg_top == 84  # lifted by one comb level
    assert inner_leg_top == 52  # base comb height


def test_assignment_length_is_checked():
    g = generate_mck_gadget(formula_from_obj(PHI1))
    with pytest.raises(InvalidInputError):
        kernel_from_assignment(g, [True, False])


# ---------------------------------------------------------------------------
# Discrete (point-cover) gadget
# ---------------------------------------------------------------------------


def test_phi1_boxcover_census_and_structure():
    g = generate_boxcover_gadget(formula_from_obj(PHI1), self_check="full")
    inst = g.instance
    assert inst.n == 27  # 21m + 2n
    assert len(inst.points) == 30  # 24m + 2n
    assert g.optimal_size_if_satisfiable == 14  # 11m + n
    assert inst.meta["generator"] == "sat3-boxcover"

    # every point lies in exactly two boxes
    for p in inst.points:
        depth = sum(1 for b in inst.boxes if b.contains_point(p))
        assert depth == 2

    graph = build_intersection_graph(inst.boxes, touching=False)
    rep = analyze_graph(graph)
    assert rep.triangle_free
    assert rep.max_degree <= 4
    assert rep.planarity_necessary


def test_phi1_boxcover_exact_matches_the_law():
    g = generate_boxcover_gadget(formula_from_obj(PHI1))
    assert exact_kernel(g.instance, max_live_boxes=40).size == 14


def test_phi2_boxcover_exact_matches_the_law():
    g = generate_boxcover_gadget(formula_from_obj(PHI2))
    assert g.instance.n == 48 and len(g.instance.points) == 54
    assert exact_kernel(g.instance, max_live_boxes=60).size == 25


def test_forcing_a_falsifying_assignment_costs_one_extra():
    # Deleting one ring class per variable leaves the other class as the
    # only way to cover that ring, pinning the encoded assignment. Pinning
    # the unique falsifying assignment of the single clause must cost one
    # extra box; pinning a satisfying one must not.
    g = generate_boxcover_gadget(formula_from_obj(PHI1))
    inst = g.instance
    law = g.optimal_size_if_satisfiable

    def optimum_without(dropped):
        keep = [i for i in range(inst.n) if i not in set(dropped)]
        raw = inst.raw_boxes()
        sub = Instance.from_raw(
            inst.dim, [raw[i] for i in keep], points=inst.raw_points()
        )
        return exact_kernel(sub, max_live_boxes=60).size

    # clause is (not v1 or v2 or v3); v1=T, v2=F, v3=F is the one falsifier
    falsifying = (
        list(g.blue_classes[0]) + list(g.red_classes[1]) + list(g.red_classes[2])
    )
    satisfying = (
        list(g.red_classes[0]) + list(g.blue_classes[1]) + list(g.blue_classes[2])
    )
    assert optimum_without(falsifying) == law + 1
    assert optimum_without(satisfying) == law


# ---------------------------------------------------------------------------
# Study gadgets and the comb cover oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("c", [1, 2, 3])
def test_isolated_variable_gadget_optimum(c):
    inst, expected = isolated_variable_gadget(c)
    r = exact_kernel(inst)
    assert r.size == (2 * c + 1) + (3 * c + 2)
    assert r.indices == expected  # the optimum is unique and monochromatic


def test_isolated_variable_gadget_needs_a_vacant_slot():
    with pytest.raises(InvalidInputError):
        isolated_variable_gadget(0)


def test_isolated_comb_cover_dodges_a_leg():
    inst, groups = isolated_comb()
    comb = set(groups["comb"])
    greens = set(groups["greens"])
    assert len(comb) == 9 and len(greens) == 11
    r = exact_kernel(inst)
    assert r.size == len(greens) + 5
    assert greens <= set(r.indices)
    comb_part = sorted(set(r.indices) & comb)
    assert len(comb_part) == 5
    assert not {0, 3, 6} <= set(comb_part)  # some leg is always dodged


def brute_c9_cover(forced):
    best = None
    for r in range(10):
        for combo in combinations(range(9), r):
            s = set(combo)
            if set(forced) <= s and all(t in s or (t + 1) % 9 in s for t in range(9)):
                return combo
    return best


def test_min_c9_cover_matches_exhaustive_search():
    assert min_c9_cover() == (0, 1, 3, 5, 7)
    assert len(min_c9_cover((0, 3, 6))) == 6
    for r in range(4):
        for forced in combinations(range(9), r):
            got = min_c9_cover(forced)
            ref = brute_c9_cover(forced)
            assert len(got) == len(ref)
            assert set(forced) <= set(got)
            assert all(t in set(got) or (t + 1) % 9 in set(got) for t in range(9))
    with pytest.raises(InvalidInputError):
        min_c9_cover((9,))
