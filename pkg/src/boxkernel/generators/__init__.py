"""Instance generators: random boxes, rectilinear polygons, formula gadgets."""

from .polygon import polygon_to_boxes, staircase_polygon
from .random_boxes import random_instance
from .sat3 import (
    AnnotatedFormula,
    Clause,
    Sat3Gadget,
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

__all__ = [
    "AnnotatedFormula",
    "Clause",
    "Sat3Gadget",
    "dimacs_matches",
    "formula_from_obj",
    "formula_to_obj",
    "generate_boxcover_gadget",
    "generate_mck_gadget",
    "isolated_comb",
    "isolated_variable_gadget",
    "kernel_from_assignment",
    "min_c9_cover",
    "parse_dimacs",
    "polygon_to_boxes",
    "random_instance",
    "staircase_polygon",
]
