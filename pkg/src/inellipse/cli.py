"""Command-line interface: JSON quadrilateral in, JSON report or SVG out.

Subcommands:

    classify                   full classification report
    inscribe --param R         inscribe the family member at R
    min-ecc                    minimal-eccentricity ellipse + verification
    verify --theorem T         sampled theorem checks (t1 | t2 | t3)
    plot --params R1,R2 --out  SVG figure

Exit codes: 0 success, 2 parse error, 3 non-convex input, 4 parameter out
of range, 5 unwritable output path.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .conic import geometry, scale_normalized
from .diameters import check_T2, equal_conjugate_diameters, t1_margin
from .errors import (InEllipseError, IsCircle, NonConvexInput, NotMDQ,
                     ParamOutOfRegion)
from .family import InscribedEllipse, inscribe
from .minecc import NEAR_CIRCLE_ECC, min_ecc, verify_T3
from .quad import Quadrilateral, canonicalize, classify, diagonals
from .sampling import random_similarity
from .svgfig import Figure

EXIT_PARSE = 2
EXIT_NONCONVEX = 3
EXIT_PARAM = 4
EXIT_OUTPUT = 5


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_document(path: str) -> tuple[Quadrilateral, str | None]:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliError(EXIT_PARSE, f"cannot read input: {exc}")
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise _CliError(EXIT_PARSE, "input must be an object with a 'vertices' key")
    verts = doc["vertices"]
    if (not isinstance(verts, list) or len(verts) != 4
            or any(not isinstance(v, (list, tuple)) or len(v) != 2 for v in verts)):
        raise _CliError(EXIT_PARSE, "'vertices' must be four [x, y] pairs")
    try:
        pts = [(float(x), float(y)) for x, y in verts]
    except (TypeError, ValueError):
        raise _CliError(EXIT_PARSE, "vertex coordinates must be numbers")
    try:
        quad = canonicalize(pts)
    except NonConvexInput as exc:
        raise _CliError(EXIT_NONCONVEX, str(exc))
    label = doc.get("label")
    return quad, label if isinstance(label, str) else None


def _classification_block(quad: Quadrilateral, tol: float) -> dict:
    rep = classify(quad, tol)
    dd = diagonals(quad)
    return {
        "vertices": [list(p) for p in quad.vertices],
        "convex": rep.convex,
        "parallelogram": rep.parallelogram,
        "trapezoid": rep.trapezoid,
        "tangential": rep.tangential,
        "orthodiagonal": rep.orthodiagonal,
        "kite": rep.kite,
        "mdq_type1": rep.mdq_type1,
        "mdq_type2": rep.mdq_type2,
        "side_lengths": list(rep.side_lengths),
        "diagonal_midpoints": [list(dd.m1), list(dd.m2)],
        "diagonal_intersection": list(dd.p),
    }


def _ellipse_block(ie: InscribedEllipse) -> dict:
    raw = ie.conic
    scale = max(abs(x) for x in raw)
    norm = scale_normalized(raw)
    geo = geometry(raw)
    return {
        "coefficients": list(norm),
        "coeff_scale": scale,
        "param": ie.param,
        "frame": ie.frame,
        "center": list(geo.center),
        "eccentricity": geo.eccentricity,
        "axis_ratio_sq": geo.axis_ratio_sq,
        "semi_axes": [geo.semi_major, geo.semi_minor],
        "tangency": [list(p) for p in ie.tangency],
    }


def cmd_classify(quad: Quadrilateral, label: str | None, tol: float) -> dict:
    out = {"classification": _classification_block(quad, tol)}
    if label:
        out["label"] = label
    return out


def cmd_inscribe(quad: Quadrilateral, label: str | None, tol: float,
                 param: float) -> dict:
    try:
        ie = inscribe(quad, param)
    except ParamOutOfRegion as exc:
        raise _CliError(EXIT_PARAM, str(exc))
    out = {"classification": _classification_block(quad, tol),
           "ellipse": _ellipse_block(ie)}
    if label:
        out["label"] = label
    return out


def _smallest_angle(u, v) -> float:
    cross = abs(u[0] * v[1] - u[1] * v[0])
    dot = abs(u[0] * v[0] + u[1] * v[1])
    return math.atan2(cross, dot)


def cmd_min_ecc(quad: Quadrilateral, label: str | None, tol: float) -> dict:
    res = min_ecc(quad)
    out = {
        "classification": _classification_block(quad, tol),
        "ellipse": _ellipse_block(res.ellipse),
        "min_ecc": {
            "r_star": res.r_star,
            "method": res.method,
            "eccentricity": res.eccentricity,
            "axis_ratio_sq": res.axis_ratio_sq,
        },
    }
    # exploratory: compare the angle between the minimal ellipse's equal
    # conjugate diameters with the angle between the diagonals (reported for
    # every quad; equality is only established for MDQs)
    if res.eccentricity >= NEAR_CIRCLE_ECC:
        try:
            pair = equal_conjugate_diameters(res.ellipse.conic)
            a1, a2, a3, a4 = quad.vertices
            d1 = (a3[0] - a1[0], a3[1] - a1[1])
            d2 = (a4[0] - a2[0], a4[1] - a2[1])
            out["min_ecc"]["equal_conjugate_angle"] = _smallest_angle(
                pair.dir1, pair.dir2)
            out["min_ecc"]["diagonal_angle"] = _smallest_angle(d1, d2)
        except IsCircle:
            pass
    rep = classify(quad, tol)
    if rep.mdq_type1 or rep.mdq_type2 or rep.parallelogram:
        t3 = verify_T3(quad)
        out["verification"] = {
            "t3_parallel": t3.parallel,
            "t3_equal_lengths": t3.equal_len,
            "diameter_len_sq": [t3.len1_sq, t3.len2_sq],
            "near_circle": t3.near_circle,
            "parallel_margin": t3.parallel_margin,
            "length_margin": t3.length_margin,
        }
        if t3.closed_form_len_sq is not None:
            out["verification"]["closed_form_len_sq"] = list(t3.closed_form_len_sq)
    if label:
        out["label"] = label
    return out


def _verify_t1_trial(quad: Quadrilateral, rng, tol: float) -> dict:
    r = rng.uniform(0.02, 0.98)
    ie = inscribe(quad, r)
    margin = t1_margin(quad, ie.conic)
    return {"param": r, "margin": margin, "passed": bool(margin <= tol)}


def _verify_t2_trial(quad: Quadrilateral, rng, tol: float) -> dict:
    r = rng.uniform(0.02, 0.98)
    ie = inscribe(quad, r)
    rep = check_T2(quad, ie, tol)
    cls = classify(quad)
    if cls.parallelogram:
        expected1, expected2 = {"q1q2", "q3q4"}, {"q2q3", "q1q4"}
    elif cls.mdq_type1:
        expected1, expected2 = set(), {"q2q3", "q1q4"}
    elif cls.mdq_type2:
        expected1, expected2 = {"q1q2", "q3q4"}, set()
    else:
        margin = min(min(rep.margins_d1.values()), min(rep.margins_d2.values()))
        return {"param": r, "margin": margin, "passed": False}
    ok = expected1 <= rep.parallel_to_d1 and expected2 <= rep.parallel_to_d2
    margins = ([rep.margins_d1[n] for n in expected1]
               + [rep.margins_d2[n] for n in expected2])
    return {"param": r, "margin": max(margins), "passed": bool(ok)}


def _verify_t3_trial(quad: Quadrilateral, rng, tol: float) -> dict:
    sim = random_similarity(rng)
    moved = canonicalize([sim.apply(p) for p in quad.vertices])
    try:
        rep = verify_T3(moved, tol=max(tol, 1e-7))
    except NotMDQ:
        return {"margin": float("nan"), "passed": False, "reason": "not an MDQ"}
    margin = max(rep.parallel_margin, rep.length_margin)
    return {"margin": margin, "passed": bool(rep.parallel and rep.equal_len)}


def cmd_verify(quad: Quadrilateral, label: str | None, tol: float,
               theorem: str, trials: int, seed: int) -> dict:
    runner = {"t1": _verify_t1_trial, "t2": _verify_t2_trial,
              "t3": _verify_t3_trial}[theorem]
    results = []
    for i in range(trials):
        rng = np.random.default_rng(seed + i)
        results.append(runner(quad, rng, tol))
    margins = [r["margin"] for r in results if r["margin"] == r["margin"]]
    out = {
        "theorem": theorem,
        "trials": trials,
        "seed": seed,
        "passes": sum(1 for r in results if r["passed"]),
        "failures": sum(1 for r in results if not r["passed"]),
        "worst_margin": max(margins) if margins else None,
        "per_trial": results,
    }
    if label:
        out["label"] = label
    return out


def cmd_plot(quad: Quadrilateral, params: list[float], out_path: str,
             tol: float) -> None:
    fig = Figure()
    fig.add_polygon(quad.vertices, "quad", "fill:none;stroke:#000;stroke-width:2")
    dd = diagonals(quad)
    diag_style = "stroke:#888;stroke-width:1;stroke-dasharray:6,4"
    fig.add_segment(*dd.d1, "diagonal", diag_style)
    fig.add_segment(*dd.d2, "diagonal", diag_style)
    if dd.newton_line is not None:
        fig.add_segment(*dd.newton_line, "newton",
                        "stroke:#d62728;stroke-width:1.2")
    rep = classify(quad, tol)
    for param in params:
        try:
            ie = inscribe(quad, param)
        except ParamOutOfRegion as exc:
            raise _CliError(EXIT_PARAM, str(exc))
        fig.add_ellipse(ie.conic)
        for p in ie.tangency:
            fig.add_marker(p, "tangency", "fill:#2ca02c")
    if rep.mdq_type1 or rep.mdq_type2 or rep.parallelogram:
        res = min_ecc(quad)
        if res.eccentricity >= NEAR_CIRCLE_ECC:
            try:
                pair = equal_conjugate_diameters(res.ellipse.conic)
            except IsCircle:
                pair = None
            if pair is not None:
                style = "stroke:#9467bd;stroke-width:1.5"
                fig.add_segment(*pair.endpoints1, "diameter", style)
                fig.add_segment(*pair.endpoints2, "diameter", style)
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(fig.render())
    except OSError as exc:
        raise _CliError(EXIT_OUTPUT, f"cannot write SVG: {exc}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inellipse",
        description="Inscribed ellipses in convex quadrilaterals")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="relative tolerance for geometric predicates")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="JSON file with {'vertices': [[x,y] x4]} or - for stdin")

    p = sub.add_parser("classify", help="classification report")
    add_input(p)

    p = sub.add_parser("inscribe", help="inscribe one family member")
    add_input(p)
    p.add_argument("--param", type=float, required=True,
                   help="family parameter (in (0,1), or (-1,1) for parallelograms)")

    p = sub.add_parser("min-ecc", help="minimal-eccentricity ellipse")
    add_input(p)

    p = sub.add_parser("verify", help="sampled theorem verification")
    add_input(p)
    p.add_argument("--theorem", choices=("t1", "t2", "t3"), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("plot", help="render an SVG figure")
    add_input(p)
    p.add_argument("--params", default="",
                   help="comma-separated family parameters to inscribe")
    p.add_argument("--out", required=True, help="output SVG path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        quad, label = _load_document(args.input)
        if args.command == "classify":
            out = cmd_classify(quad, label, args.tol)
        elif args.command == "inscribe":
            out = cmd_inscribe(quad, label, args.tol, args.param)
        elif args.command == "min-ecc":
            out = cmd_min_ecc(quad, label, args.tol)
        elif args.command == "verify":
            if args.trials < 1:
                raise _CliError(EXIT_PARSE, "--trials must be >= 1")
            out = cmd_verify(quad, label, args.tol, args.theorem,
                             args.trials, args.seed)
        elif args.command == "plot":
            params = [float(x) for x in args.params.split(",") if x.strip()]
            cmd_plot(quad, params, args.out, args.tol)
            return 0
        else:  # pragma: no cover
            raise _CliError(EXIT_PARSE, f"unknown command {args.command}")
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParamOutOfRegion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except InEllipseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    json.dump(out, sys.stdout, indent=2)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
