"""Command-line interface.

    boxkernel gen random --n 40 --dim 2 --seed 7 -o inst.json
    boxkernel gen sat3 --formula f.json --variant mck -o inst.json
    boxkernel gen polygon --vertices '[[0,0],[4,0],[4,2],[2,2],[2,4],[0,4]]'
    boxkernel solve inst.json --algo greedy -o result.json
    boxkernel verify inst.json result.json
    boxkernel analyze inst.json
    boxkernel discretize inst.json

Documents are JSON on stdin/stdout or files; ``-`` means the standard
stream. Timing goes to stderr so emitted documents stay byte-deterministic.

Exit codes: 0 success, 1 invalid input, 2 verification failed, 3 resource
limit exceeded. Failures print ``{"error": {"type": ..., "message": ...}}``
to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .discretize import (
    DEFAULT_MAX_CELLS,
    coverage_discretization,
    covers_all_points,
    covers_same_region,
    union_volume,
)
from .errors import (
    AuditError,
    InvalidInputError,
    ResourceLimitError,
    StateError,
)
from .exact import DEFAULT_MAX_LIVE_BOXES, exact_kernel
from .generators import (
    dimacs_matches,
    formula_from_obj,
    generate_boxcover_gadget,
    generate_mck_gadget,
    polygon_to_boxes,
    random_instance,
)
from .geometry import analyze_graph, build_intersection_graph
from .greedy import greedy_kernel
from .jsonio import (
    dump_instance,
    dump_result,
    exact_number_str,
    instance_digest,
    load_instance,
    load_result,
    scaled_coord_str,
)
from .randomized import BGConfig, bg_kernel

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------------------
# Small I/O helpers
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fp:
        return fp.read()


def _load_instance(path: str):
    if path == "-":
        return load_instance(sys.stdin)
    with open(path, "r", encoding="utf-8") as fp:
        return load_instance(fp)


def _emit(write, path: str) -> None:
    """Run ``write(fp)`` against stdout or the named file."""
    if path == "-":
        write(sys.stdout)
    else:
        with open(path, "w", encoding="utf-8") as fp:
            write(fp)


def _emit_obj(obj: dict, path: str) -> None:
    def write(fp):
        json.dump(obj, fp, indent=2)
        fp.write("\n")

    _emit(write, path)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_gen_random(args) -> int:
    inst = random_instance(
        args.n,
        args.dim,
        seed=args.seed,
        coord_max=args.coord_max,
        max_side=args.max_side,
    )
    _emit(lambda fp: dump_instance(inst, fp), args.output)
    return EXIT_OK


def cmd_gen_sat3(args) -> int:
    try:
        obj = json.loads(_read_text(args.formula))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"formula file is not valid JSON: {exc}") from exc
    formula = formula_from_obj(obj)
    if args.dimacs is not None:
        if not dimacs_matches(formula, _read_text(args.dimacs)):
            raise InvalidInputError(
                "formula file does not match the DIMACS reference"
            )
    gen = generate_mck_gadget if args.variant == "mck" else generate_boxcover_gadget
    gadget = gen(formula, self_check=args.self_check)
    print(
        f"{args.variant} gadget: {gadget.instance.n} boxes, "
        f"optimum {gadget.optimal_size_if_satisfiable} iff satisfiable",
        file=sys.stderr,
    )
    _emit(lambda fp: dump_instance(gadget.instance, fp), args.output)
    return EXIT_OK


def cmd_gen_polygon(args) -> int:
    if (args.vertices is None) == (args.vertices_file is None):
        raise InvalidInputError("give exactly one of --vertices/--vertices-file")
    text = args.vertices if args.vertices is not None else _read_text(args.vertices_file)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"vertex list is not valid JSON: {exc}") from exc
    if not isinstance(obj, list):
        raise InvalidInputError("vertex list must be a JSON array of [x, y]")
    verts = []
    for t, entry in enumerate(obj):
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in entry)
        ):
            raise InvalidInputError(f"vertex #{t} must be [x, y] with integers")
        verts.append((entry[0], entry[1]))
    inst = polygon_to_boxes(verts, max_boxes=args.max_boxes)
    _emit(lambda fp: dump_instance(inst, fp), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    started = time.perf_counter()
    if args.algo == "greedy":
        result = greedy_kernel(inst, max_cells=args.max_cells, audit=args.audit)
    elif args.algo == "bg":
        cfg = BGConfig(max_cells=args.max_cells)
        result = bg_kernel(inst, seed=args.seed, config=cfg)
    else:
        result = exact_kernel(
            inst, max_live_boxes=args.max_live_boxes, max_cells=args.max_cells
        )
    elapsed = time.perf_counter() - started
    print(
        f"{args.algo}: kernel size {result.size} of {inst.n} "
        f"({elapsed:.3f}s, certified={result.certified})",
        file=sys.stderr,
    )
    _emit(lambda fp: dump_result(result, inst, fp), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    if args.result == "-":
        result, digest = load_result(sys.stdin)
    else:
        with open(args.result, "r", encoding="utf-8") as fp:
            result, digest = load_result(fp)

    checks: dict[str, bool] = {}
    checks["digest"] = digest == instance_digest(inst)
    checks["indices_in_range"] = all(0 <= i < inst.n for i in result.indices)
    if checks["indices_in_range"]:
        if inst.points is not None:
            checks["covers"] = covers_all_points(
                result.indices, inst, inst.points
            )
        else:
            checks["covers"] = covers_same_region(
                result.indices, inst, max_cells=args.max_cells
            )
    else:
        checks["covers"] = False
    ok = all(checks.values())
    _emit_obj(
        {
            "format": "boxkernel-verification",
            "version": 1,
            "ok": ok,
            "checks": checks,
            "algorithm": result.algorithm,
            "size": result.size,
        },
        args.output,
    )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_analyze(args) -> int:
    inst = _load_instance(args.instance)
    graph = build_intersection_graph(
        list(inst.boxes), touching=not args.positive_only
    )
    report = analyze_graph(graph, clique_vertex_cap=args.clique_cap)
    _emit_obj(
        {
            "format": "boxkernel-analysis",
            "version": 1,
            "n": inst.n,
            "dim": inst.dim,
            "union_volume": exact_number_str(
                union_volume(inst, max_cells=args.max_cells)
            ),
            "touching_counts": not args.positive_only,
            "graph": {
                "edge_count": report.edge_count,
                "max_degree": report.max_degree,
                "clique_number": report.clique_number,
                "triangle_free": report.triangle_free,
                "planarity_necessary": report.planarity_necessary,
            },
        },
        args.output,
    )
    return EXIT_OK


def cmd_discretize(args) -> int:
    inst = _load_instance(args.instance)
    disc = coverage_discretization(inst, max_cells=args.max_cells)
    obj = {
        "format": "boxkernel-discretization",
        "version": 1,
        "dim": inst.dim,
        "count": len(disc.points),
        "union_volume": exact_number_str(union_volume(inst, max_cells=args.max_cells)),
    }
    if not args.count_only:
        obj["points"] = [
            [scaled_coord_str(c) for c in p] for p in disc.points
        ]
    _emit_obj(obj, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "-o",
        "--output",
        default="-",
        help="output path (default: stdout)",
    )


def _add_max_cells(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--max-cells",
        type=int,
        default=DEFAULT_MAX_CELLS,
        help="cap on discretization grid cells",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxkernel",
        description="Coverage kernels of axis-aligned boxes: generate, "
        "solve, verify, inspect.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gen_sub = gen.add_subparsers(dest="generator", required=True)

    g_rand = gen_sub.add_parser("random", help="random boxes in a cube")
    g_rand.add_argument("--n", type=int, required=True, help="number of boxes")
    g_rand.add_argument("--dim", type=int, default=2)
    g_rand.add_argument("--seed", type=int, default=0)
    g_rand.add_argument("--coord-max", type=int, default=100)
    g_rand.add_argument("--max-side", type=int, default=30)
    _add_output(g_rand)
    g_rand.set_defaults(handler=cmd_gen_random)

    g_sat = gen_sub.add_parser(
        "sat3", help="3-CNF hardness gadget with a known optimum law"
    )
    g_sat.add_argument(
        "--formula",
        required=True,
        help="formula document (JSON with variable_order/clauses)",
    )
    g_sat.add_argument(
        "--variant",
        choices=("mck", "boxcover"),
        default="mck",
        help="region-cover gadget or discrete point-cover variant",
    )
    g_sat.add_argument(
        "--self-check",
        choices=("auto", "none", "structural", "full"),
        default="auto",
        help="how much of the construction to re-audit",
    )
    g_sat.add_argument(
        "--dimacs",
        default=None,
        help="optional DIMACS CNF file the formula must match",
    )
    _add_output(g_sat)
    g_sat.set_defaults(handler=cmd_gen_sat3)

    g_poly = gen_sub.add_parser(
        "polygon", help="all inscribed boxes of a rectilinear polygon"
    )
    g_poly.add_argument(
        "--vertices", default=None, help="CCW vertex list as inline JSON"
    )
    g_poly.add_argument(
        "--vertices-file", default=None, help="CCW vertex list as a JSON file"
    )
    g_poly.add_argument("--max-boxes", type=int, default=100_000)
    _add_output(g_poly)
    g_poly.set_defaults(handler=cmd_gen_polygon)

    solve = sub.add_parser("solve", help="compute a coverage kernel")
    solve.add_argument("instance", help="instance document (or - for stdin)")
    solve.add_argument(
        "--algo", choices=("greedy", "bg", "exact"), required=True
    )
    solve.add_argument("--seed", type=int, default=0, help="bg only")
    solve.add_argument(
        "--max-live-boxes",
        type=int,
        default=DEFAULT_MAX_LIVE_BOXES,
        help="exact only: search cap after reduction",
    )
    solve.add_argument(
        "--audit",
        action="store_true",
        help="greedy only: audit the index build",
    )
    _add_max_cells(solve)
    _add_output(solve)
    solve.set_defaults(handler=cmd_solve)

    verify = sub.add_parser(
        "verify", help="re-check a result against its instance"
    )
    verify.add_argument("instance")
    verify.add_argument("result")
    _add_max_cells(verify)
    _add_output(verify)
    verify.set_defaults(handler=cmd_verify)

    analyze = sub.add_parser(
        "analyze", help="intersection-graph structure and union volume"
    )
    analyze.add_argument("instance")
    analyze.add_argument(
        "--positive-only",
        action="store_true",
        help="count only positive-volume overlaps, not touching contacts",
    )
    analyze.add_argument("--clique-cap", type=int, default=512)
    _add_max_cells(analyze)
    _add_output(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    disc = sub.add_parser(
        "discretize", help="the finite point set that witnesses coverage"
    )
    disc.add_argument("instance")
    disc.add_argument(
        "--count-only", action="store_true", help="omit the point list"
    )
    _add_max_cells(disc)
    _add_output(disc)
    disc.set_defaults(handler=cmd_discretize)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InvalidInputError as exc:
        return _fail(EXIT_INVALID, exc)
    except ResourceLimitError as exc:
        return _fail(EXIT_RESOURCE, exc)
    except (AuditError, StateError) as exc:
        return _fail(EXIT_INVALID, exc)
    except OSError as exc:
        return _fail(EXIT_INVALID, exc)


def _fail(code: int, exc: Exception) -> int:
    obj = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(obj), file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
