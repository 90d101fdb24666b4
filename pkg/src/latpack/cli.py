"""Command line front end: JSON reports, SVG figures, property verification.

One JSON document in on stdin (or --in), one document out on stdout (or
--out). Reals are serialized with 17 significant digits so every report
round-trips bit-exactly. Exit codes: 0 ok, 1 verification failure,
2 usage/parse error, 3 degenerate input, 4 range error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import core, oracle, voronoi
from .core import (
    Basis,
    Lattice,
    PlaneVector,
    OPTIMAL_DENSITY,
    THETA_MIN,
    change_of_basis,
    hexagonal,
    is_similar,
    lagrange_reduce,
    make_lattice,
    packing_density,
    successive_minima,
    theta_invariant,
    wr_round,
)
from .errors import DegenerateBasis, InvalidStep, IterationLimit

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_RANGE = 4

MAX_VERIFY_SEEDS = 10**5


class CliFailure(Exception):
    """Carries an exit code and a machine-readable error object."""

    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind
        self.message = message


# --------------------------------------------------------------------------
# JSON serialization with fixed 17-significant-digit reals


def _format_real(x: float) -> str:
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def _encode(value, out: list[str]) -> None:
    if value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(repr(value))
    elif isinstance(value, float):
        out.append(_format_real(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _encode(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(doc) -> str:
    out: list[str] = []
    _encode(doc, out)
    return "".join(out)


# --------------------------------------------------------------------------
# Input parsing


def _reject_constant(name: str):
    raise ValueError(f"non-finite number token {name!r}")


def _parse_json(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise CliFailure(EXIT_USAGE, "ParseError", f"invalid JSON input: {exc}")


def _vector_from(obj, field: str) -> PlaneVector:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise CliFailure(EXIT_USAGE, "ParseError", f"{field} must be a pair of reals")
    coords = []
    for entry in obj:
        if isinstance(entry, bool) or not isinstance(entry, (int, float)):
            raise CliFailure(EXIT_USAGE, "ParseError", f"{field} must contain numbers")
        val = float(entry)
        if not math.isfinite(val):
            raise CliFailure(EXIT_USAGE, "ParseError", f"{field} must be finite")
        coords.append(val)
    return PlaneVector(coords[0], coords[1])


def _basis_from_doc(obj) -> Basis:
    if not isinstance(obj, dict) or "x1" not in obj or "x2" not in obj:
        raise CliFailure(
            EXIT_USAGE, "ParseError", 'lattice document needs "x1" and "x2" fields'
        )
    v1 = _vector_from(obj["x1"], "x1")
    v2 = _vector_from(obj["x2"], "x2")
    try:
        return Basis(v1, v2)
    except DegenerateBasis as exc:
        raise CliFailure(EXIT_DEGENERATE, "DegenerateBasis", str(exc))


def _read_text(args) -> str:
    if args.in_path:
        with open(args.in_path, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _write_text(args, text: str) -> None:
    if args.out_path:
        with open(args.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_basis(args) -> Basis:
    return _basis_from_doc(_parse_json(_read_text(args)))


# --------------------------------------------------------------------------
# Document builders


def _vec_doc(v: PlaneVector) -> list[float]:
    return [v.x, v.y]


def _shape_doc(shape: core.ShapePoint) -> dict:
    return {"s": shape.s, "theta": shape.theta}


def _rounded_transform(basis: Basis, pair: core.MinimaPair) -> list[list[int]]:
    u = change_of_basis(basis, pair)
    return [[round(u[0][0]), round(u[0][1])], [round(u[1][0]), round(u[1][1])]]


def cmd_reduce(args) -> int:
    basis = _read_basis(args)
    try:
        pair = lagrange_reduce(basis)
    except IterationLimit as exc:
        raise CliFailure(EXIT_DEGENERATE, "IterationLimit", str(exc))
    doc = {
        "v1": _vec_doc(pair.v1),
        "v2": _vec_doc(pair.v2),
        "lambda1": pair.lambda1,
        "lambda2": pair.lambda2,
        "theta": pair.theta,
        "det": make_lattice(basis).det,
        "transform": _rounded_transform(basis, pair),
    }
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK


def cmd_density(args) -> int:
    lattice = make_lattice(_read_basis(args))
    rep = packing_density(lattice, tol=args.tol)
    pair = successive_minima(lattice)
    doc = {
        "lambda1": rep.lambda1,
        "lambda2": rep.lambda2,
        "det": rep.det,
        "theta": rep.theta,
        "delta": rep.delta,
        "gap": rep.gap,
        "well_rounded": rep.well_rounded,
        "v1": _vec_doc(pair.v1),
        "v2": _vec_doc(pair.v2),
        "shape": _shape_doc(core.shape_parameters(lattice)),
        "similar_to_hexagonal": is_similar(lattice, hexagonal(), tol=args.tol),
    }
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK


def cmd_voronoi(args) -> int:
    lattice = make_lattice(_read_basis(args))
    cell = voronoi.voronoi_cell(lattice)
    if args.format == "svg":
        _write_text(args, svg_voronoi(lattice, cell))
        return EXIT_OK
    doc = {
        "vertices": [_vec_doc(v) for v in cell.vertices],
        "relevant": [_vec_doc(v) for v in cell.relevant],
        "area": voronoi.cell_area(cell),
        "in_radius": voronoi.cell_in_radius(cell),
    }
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    if not 1 <= args.extent <= 20:
        raise CliFailure(EXIT_RANGE, "ExtentOutOfRange", f"extent {args.extent} not in [1, 20]")
    lattice = make_lattice(_read_basis(args))
    _write_text(args, svg_packing(lattice, args.extent))
    return EXIT_OK


def cmd_similar(args) -> int:
    obj = _parse_json(_read_text(args))
    if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
        raise CliFailure(
            EXIT_USAGE, "ParseError", 'similar expects one document with "a" and "b" lattices'
        )
    lat_a = make_lattice(_basis_from_doc(obj["a"]))
    lat_b = make_lattice(_basis_from_doc(obj["b"]))
    doc = {
        "similar": is_similar(lat_a, lat_b, tol=args.tol),
        "shape_a": _shape_doc(core.shape_parameters(lat_a)),
        "shape_b": _shape_doc(core.shape_parameters(lat_b)),
    }
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK


def cmd_optimize(args) -> int:
    try:
        result = oracle.grid_search_density(args.step)
    except InvalidStep as exc:
        raise CliFailure(EXIT_USAGE, "InvalidStep", str(exc))
    doc = {
        "best_shape": _shape_doc(result.best_shape),
        "best_delta": result.best_delta,
        "grid_step": result.grid_step,
        "argmax_cells": result.argmax_cells,
    }
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# SVG rendering


def _svg_num(x: float) -> str:
    # x + 0.0 collapses -0.0 so mirrored coordinates format identically
    return format(x + 0.0, ".10g")


class _Svg:
    """Tiny SVG canvas; flips y so figures use mathematical orientation."""

    def __init__(self):
        self._parts: list[str] = []
        self._min_x = math.inf
        self._min_y = math.inf
        self._max_x = -math.inf
        self._max_y = -math.inf

    def _touch(self, x: float, y: float) -> None:
        self._min_x = min(self._min_x, x)
        self._max_x = max(self._max_x, x)
        self._min_y = min(self._min_y, y)
        self._max_y = max(self._max_y, y)

    def polygon(self, points, stroke: str, width: float) -> None:
        rendered = []
        for p in points:
            x, y = p.x, -p.y
            self._touch(x, y)
            rendered.append(f"{_svg_num(x)},{_svg_num(y)}")
        self._parts.append(
            f'<polygon points="{" ".join(rendered)}" fill="none" '
            f'stroke="{stroke}" stroke-width="{_svg_num(width)}"/>'
        )

    def circle(self, cx: float, cy: float, r: float, stroke: str, width: float) -> None:
        x, y = cx, -cy
        self._touch(x - r, y - r)
        self._touch(x + r, y + r)
        self._parts.append(
            f'<circle cx="{_svg_num(x)}" cy="{_svg_num(y)}" r="{_svg_num(r)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{_svg_num(width)}"/>'
        )

    def dot(self, cx: float, cy: float, size: float) -> None:
        x, y = cx, -cy
        half = 0.5 * size
        self._touch(x - half, y - half)
        self._touch(x + half, y + half)
        self._parts.append(
            f'<rect x="{_svg_num(x - half)}" y="{_svg_num(y - half)}" '
            f'width="{_svg_num(size)}" height="{_svg_num(size)}" fill="#000000"/>'
        )

    def to_string(self) -> str:
        pad = 0.05 * max(self._max_x - self._min_x, self._max_y - self._min_y)
        vb = (
            f"{_svg_num(self._min_x - pad)} {_svg_num(self._min_y - pad)} "
            f"{_svg_num(self._max_x - self._min_x + 2 * pad)} "
            f"{_svg_num(self._max_y - self._min_y + 2 * pad)}"
        )
        body = "\n".join(self._parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}">\n{body}\n</svg>\n'
        )


def svg_voronoi(lattice: Lattice, cell: voronoi.VoronoiCell) -> str:
    pair = successive_minima(lattice)
    width = 0.02 * pair.lambda1
    svg = _Svg()
    svg.polygon(cell.vertices, "#444444", width)
    svg.circle(0.0, 0.0, 0.5 * pair.lambda1, "#1f77b4", width)
    return svg.to_string()


def svg_packing(lattice: Lattice, extent: int) -> str:
    pair = successive_minima(lattice)
    cell = voronoi.voronoi_cell(lattice)
    radius = 0.5 * pair.lambda1
    width = 0.02 * pair.lambda1
    b = lattice.basis
    centers = [
        PlaneVector(a * b.x1.x + c * b.x2.x, a * b.x1.y + c * b.x2.y)
        for a in range(-extent, extent + 1)
        for c in range(-extent, extent + 1)
    ]
    svg = _Svg()
    for center in centers:
        svg.polygon(
            [PlaneVector(v.x + center.x, v.y + center.y) for v in cell.vertices],
            "#444444",
            width,
        )
    for center in centers:
        svg.circle(center.x, center.y, radius, "#1f77b4", width)
    for center in centers:
        svg.dot(center.x, center.y, 0.06 * pair.lambda1)
    return svg.to_string()


# --------------------------------------------------------------------------
# Verification suites


def _prop_oracle_agreement(lattices) -> dict:
    worst_lambda = 0.0
    worst_integrality = 0.0
    unimodular = True
    for lat in lattices:
        reduced = lagrange_reduce(lat.basis)
        brute = oracle.brute_minima(lat)
        worst_lambda = max(
            worst_lambda,
            abs(reduced.lambda1 - brute.lambda1) / brute.lambda1,
            abs(reduced.lambda2 - brute.lambda2) / brute.lambda2,
        )
        for pair in (reduced, brute):
            u = change_of_basis(lat.basis, pair)
            flat = (u[0][0], u[0][1], u[1][0], u[1][1])
            ints = [round(entry) for entry in flat]
            worst_integrality = max(
                worst_integrality, max(abs(e - i) for e, i in zip(flat, ints))
            )
            if abs(ints[0] * ints[3] - ints[1] * ints[2]) != 1:
                unimodular = False
    return {
        "name": "oracle_agreement",
        "checked": len(lattices),
        "worst_lambda_rel": worst_lambda,
        "worst_integrality": worst_integrality,
        "pass": unimodular and worst_lambda <= 1e-9 and worst_integrality <= 1e-6,
    }


def _prop_density_bound(lattices, tol: float) -> dict:
    max_delta = 0.0
    mismatches = 0
    hexa = hexagonal()
    for lat in lattices:
        delta = packing_density(lat).delta
        max_delta = max(max_delta, delta)
        if OPTIMAL_DENSITY - delta <= 1e-6 and not is_similar(lat, hexa, tol=1e-4):
            mismatches += 1
    return {
        "name": "density_bound",
        "checked": len(lattices),
        "max_delta": max_delta,
        "bound_excess": max_delta - OPTIMAL_DENSITY,
        "near_optimal_mismatches": mismatches,
        "pass": max_delta <= OPTIMAL_DENSITY + 1e-9 and mismatches == 0,
    }


def _prop_wr_dominance(lattices) -> dict:
    min_gain = math.inf
    min_nonwr_gain = math.inf
    for lat in lattices:
        before = packing_density(lat)
        after = packing_density(wr_round(lat))
        gain = after.delta - before.delta
        min_gain = min(min_gain, gain)
        if before.lambda2 / before.lambda1 > 1.0 + 1e-6:
            min_nonwr_gain = min(min_nonwr_gain, gain)
    ok = (min_gain == math.inf or min_gain >= -1e-12) and (
        min_nonwr_gain == math.inf or min_nonwr_gain >= 1e-12
    )
    return {
        "name": "wr_dominance",
        "checked": len(lattices),
        "min_gain": 0.0 if min_gain == math.inf else min_gain,
        "min_nonwr_gain": 0.0 if min_nonwr_gain == math.inf else min_nonwr_gain,
        "pass": ok,
    }


def _prop_wr_formula(lattices) -> dict:
    worst = 0.0
    for lat in lattices:
        rounded = wr_round(lat)
        delta = packing_density(rounded).delta
        theta = theta_invariant(rounded)
        worst = max(worst, abs(delta - math.pi / (4.0 * math.sin(theta))))
    return {
        "name": "wr_formula",
        "checked": len(lattices),
        "worst_residual": worst,
        "pass": worst <= 1e-9,
    }


def _prop_voronoi_geometry(lattices) -> dict:
    worst_area = 0.0
    worst_inradius = 0.0
    for lat in lattices:
        cell = voronoi.voronoi_cell(lat)
        pair = successive_minima(lat)
        worst_area = max(worst_area, abs(voronoi.cell_area(cell) - lat.det) / lat.det)
        worst_inradius = max(
            worst_inradius,
            abs(voronoi.cell_in_radius(cell) - 0.5 * pair.lambda1) / (0.5 * pair.lambda1),
        )
    return {
        "name": "voronoi_geometry",
        "checked": len(lattices),
        "worst_area_rel": worst_area,
        "worst_inradius_rel": worst_inradius,
        "pass": worst_area <= 1e-9 and worst_inradius <= 1e-9,
    }


def _prop_grid_search(step: float) -> dict:
    result = oracle.grid_search_density(step)
    ok = (
        result.best_delta <= OPTIMAL_DENSITY + 1e-12
        and result.best_delta >= OPTIMAL_DENSITY - 2.0 * step
        and abs(result.best_shape.s - 1.0) <= step
        and abs(result.best_shape.theta - THETA_MIN) <= step
        and (result.argmax_cells == 1 or step > 1e-2)
    )
    return {
        "name": "grid_search",
        "step": step,
        "best_delta": result.best_delta,
        "best_s": result.best_shape.s,
        "best_theta": result.best_shape.theta,
        "argmax_cells": result.argmax_cells,
        "bound_gap": OPTIMAL_DENSITY - result.best_delta,
        "pass": ok,
    }


def verify_document(seeds: int, step: float, tol: float, base_seed: int) -> dict:
    """Run every property suite and collect one pass/fail entry each."""
    lattices = [oracle.random_lattice(base_seed + i) for i in range(seeds)]
    properties = [
        _prop_oracle_agreement(lattices),
        _prop_density_bound(lattices, tol),
        _prop_wr_dominance(lattices),
        _prop_wr_formula(lattices),
        _prop_voronoi_geometry(lattices),
        _prop_grid_search(step),
    ]
    return {
        "seeds": seeds,
        "base_seed": base_seed,
        "step": step,
        "tol": tol,
        "properties": properties,
        "all_pass": all(p["pass"] for p in properties),
    }


def cmd_verify(args) -> int:
    if args.seeds < 0 or args.seeds > MAX_VERIFY_SEEDS:
        raise CliFailure(
            EXIT_RANGE, "SeedsOutOfRange", f"seeds {args.seeds} not in [0, {MAX_VERIFY_SEEDS}]"
        )
    if not (1e-4 <= args.step <= 0.1):
        raise CliFailure(EXIT_USAGE, "InvalidStep", f"step {args.step!r} outside [1e-4, 0.1]")
    doc = verify_document(args.seeds, args.step, args.tol, args.seed)
    _write_text(args, dumps_json(doc) + "\n")
    return EXIT_OK if doc["all_pass"] else EXIT_VERIFY_FAIL


# --------------------------------------------------------------------------
# Argument parsing


def _add_io(sp) -> None:
    sp.add_argument("--in", dest="in_path", metavar="FILE", help="read input from FILE instead of stdin")
    sp.add_argument("--out", dest="out_path", metavar="FILE", help="write output to FILE instead of stdout")


def _add_tol(sp) -> None:
    sp.add_argument("--tol", type=float, default=1e-9, help="relative tolerance (default 1e-9)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latpack",
        description="Planar lattice circle packing toolkit (JSON in/out).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="minimal basis, successive minima, transform")
    _add_io(p)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("density", help="packing density report")
    _add_io(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("voronoi", help="Voronoi cell as JSON polygon or SVG")
    _add_io(p)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.set_defaults(handler=cmd_voronoi)

    p = sub.add_parser("render", help="SVG of the lattice packing with cell translates")
    _add_io(p)
    p.add_argument("--extent", type=int, default=3, help="translates per axis, in [1, 20]")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("similar", help='compare two lattices given as {"a": ..., "b": ...}')
    _add_io(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_similar)

    p = sub.add_parser("optimize", help="grid search for the densest lattice shape")
    _add_io(p)
    p.add_argument("--step", type=float, default=0.01, help="grid step in [1e-4, 0.1]")
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("verify", help="run the full property suite")
    _add_io(p)
    _add_tol(p)
    p.add_argument("--seeds", type=int, default=200, help="number of random lattices (max 1e5)")
    p.add_argument("--seed", type=int, default=0, help="base seed for the lattice generator")
    p.add_argument("--step", type=float, default=0.01, help="grid step for the sweep suite")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except CliFailure as fail:
        sys.stderr.write(dumps_json({"error": fail.kind, "message": fail.message}) + "\n")
        return fail.code


if __name__ == "__main__":
    sys.exit(main())
