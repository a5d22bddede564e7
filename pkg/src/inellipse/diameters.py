"""Conjugate diameters, tangency chords, and the diagonal-parallelism checks.

Two directions u, v are conjugate for an ellipse when u^T Q2 v = 0, with
Q2 = [[a, b/2], [b/2, c]] the quadratic part of the conic: the midpoints
of all chords parallel to u then lie on the diameter with direction v.
For an ellipse that is not a circle there is exactly one conjugate pair of
equal length, at angle +/-45 degrees from the axes in the parametric sense.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

from .conic import (ConicCoeffs, Direction, Point, center, geometry,
                    is_ellipse, line_intersect)
from .errors import InEllipseError, IsCircle
from .family import InscribedEllipse
from .quad import Quadrilateral

PARALLEL_TOL = 1e-9

#: axis ratio above which an ellipse is treated as a circle
CIRCLE_CUTOFF = 1.0 - 1e-9


class DiameterPair(NamedTuple):
    dir1: Direction
    dir2: Direction
    endpoints1: tuple[Point, Point]
    endpoints2: tuple[Point, Point]
    len1_sq: float
    len2_sq: float


class TangencyChords(NamedTuple):
    c12: tuple[Point, Point]
    c23: tuple[Point, Point]
    c34: tuple[Point, Point]
    c14: tuple[Point, Point]
    slopes: tuple[Optional[float], Optional[float], Optional[float], Optional[float]]


class T2Report(NamedTuple):
    parallel_to_d1: frozenset[str]
    parallel_to_d2: frozenset[str]
    margins_d1: dict[str, float]
    margins_d2: dict[str, float]


def parallel_margin(u: Direction, v: Direction) -> float:
    """|sin(angle)| between two directions (sign-insensitive)."""
    nu, nv = math.hypot(*u), math.hypot(*v)
    if nu == 0.0 or nv == 0.0:
        raise InEllipseError("zero direction")
    return abs(u[0] * v[1] - u[1] * v[0]) / (nu * nv)


def slope_of(p: Point, q: Point) -> Optional[float]:
    """Slope of the line pq; None encodes a vertical line."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if abs(dx) <= 1e-12 * math.hypot(dx, dy):
        return None
    return dy / dx


def conjugate_direction(conic: ConicCoeffs, u: Direction) -> Direction:
    """The direction conjugate to u, unique up to sign and scale."""
    a, b, c, _, _, _ = conic
    wx = a * u[0] + 0.5 * b * u[1]
    wy = 0.5 * b * u[0] + c * u[1]
    if wx == 0.0 and wy == 0.0:
        raise InEllipseError("degenerate quadratic part")
    return (-wy, wx)


def diameter_endpoints(conic: ConicCoeffs, u: Direction) -> tuple[Point, Point]:
    """The two intersections of the diameter with direction u."""
    pts = line_intersect(conic, center(conic), u)
    if len(pts) != 2:
        raise InEllipseError("diameter does not meet the conic twice")
    return pts[0], pts[1]


def equal_conjugate_diameters(conic: ConicCoeffs) -> DiameterPair:
    """The unique conjugate diameter pair of equal length.

    The directions are a*u_major +/- b*u_minor for semi-axes a, b; both
    diameters have squared length 2(a^2 + b^2).  Circles are rejected as
    every perpendicular pair would qualify.
    """
    if not is_ellipse(conic):
        raise InEllipseError("equal conjugate diameters require an ellipse")
    geo = geometry(conic)
    if geo.semi_minor / geo.semi_major > CIRCLE_CUTOFF:
        raise IsCircle("equal conjugate diameters of a circle are ambiguous")
    ux, uy = geo.major_axis_direction
    vx, vy = -uy, ux
    a, b = geo.semi_major, geo.semi_minor
    d1 = (a * ux + b * vx, a * uy + b * vy)
    d2 = (a * ux - b * vx, a * uy - b * vy)
    cx, cy = geo.center
    half = 1.0 / math.sqrt(2.0)
    ep1 = ((cx + half * d1[0], cy + half * d1[1]),
           (cx - half * d1[0], cy - half * d1[1]))
    ep2 = ((cx + half * d2[0], cy + half * d2[1]),
           (cx - half * d2[0], cy - half * d2[1]))
    len_sq = 2.0 * (a * a + b * b)
    return DiameterPair(d1, d2, ep1, ep2, len_sq, len_sq)


def tangency_chords(ie: InscribedEllipse) -> TangencyChords:
    """Chords joining tangency points on consecutive sides."""
    q1, q2, q3, q4 = ie.tangency
    chords = ((q1, q2), (q2, q3), (q3, q4), (q1, q4))
    slopes = tuple(slope_of(p, q) for p, q in chords)
    return TangencyChords(chords[0], chords[1], chords[2], chords[3], slopes)


_CHORD_NAMES = ("q1q2", "q2q3", "q3q4", "q1q4")


def check_T2(quad: Quadrilateral, ie: InscribedEllipse,
             tol: float = PARALLEL_TOL) -> T2Report:
    """Test each tangency chord for parallelism against each diagonal.

    For a type-1 midpoint diagonal quadrilateral the chords q2q3 and q1q4
    come out parallel to D2; for type 2, q1q2 and q3q4 parallel to D1; for
    a non-MDQ quad all four sets are empty.
    """
    q1, q2, q3, q4 = ie.tangency
    chords = {"q1q2": (q1, q2), "q2q3": (q2, q3),
              "q3q4": (q3, q4), "q1q4": (q1, q4)}
    a1, a2, a3, a4 = quad.vertices
    d1 = (a3[0] - a1[0], a3[1] - a1[1])
    d2 = (a4[0] - a2[0], a4[1] - a2[1])
    margins_d1, margins_d2 = {}, {}
    for name, (p, q) in chords.items():
        u = (q[0] - p[0], q[1] - p[1])
        margins_d1[name] = parallel_margin(u, d1)
        margins_d2[name] = parallel_margin(u, d2)
    par1 = frozenset(n for n, m in margins_d1.items() if m <= tol)
    par2 = frozenset(n for n, m in margins_d2.items() if m <= tol)
    return T2Report(par1, par2, margins_d1, margins_d2)


def t1_margin(quad: Quadrilateral, conic: ConicCoeffs) -> float:
    """Angle margin between conj(direction of D1) and the direction of D2."""
    a1, a2, a3, a4 = quad.vertices
    d1 = (a3[0] - a1[0], a3[1] - a1[1])
    d2 = (a4[0] - a2[0], a4[1] - a2[1])
    return parallel_margin(conjugate_direction(conic, d1), d2)


def check_T1(quad: Quadrilateral, conic: ConicCoeffs,
             tol: float = PARALLEL_TOL) -> bool:
    """True iff the conjugate of the D1-parallel diameter is parallel to D2."""
    return t1_margin(quad, conic) <= tol
