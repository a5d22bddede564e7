"""Quadrilateral representation, canonical ordering and classification.

Vertices are labeled A1..A4 in clockwise cyclic order.  `canonicalize`
additionally starts the labeling at the lower-left vertex (minimum y,
ties broken by minimum x).  Sides are S1 = A1A2, S2 = A2A3, S3 = A3A4,
S4 = A4A1 and side lengths are measured as

    a = |A1A4|,  b = |A1A2|,  c = |A2A3|,  d = |A3A4|.

Diagonals are D1 = A1A3 and D2 = A2A4.  A midpoint diagonal quadrilateral
(MDQ) has its diagonal intersection at the midpoint of at least one
diagonal: type 1 bisects D2, type 2 bisects D1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .conic import Point
from .errors import DuplicateVertex, NonConvexInput, ParamOutOfRegion

CONVEXITY_TOL = 1e-12
CLASSIFY_TOL = 1e-9


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _cross(u: Point, v: Point) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _midpoint(p: Point, q: Point) -> Point:
    return (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))


@dataclass(frozen=True)
class Quadrilateral:
    """A strictly convex quadrilateral with clockwise-labeled vertices."""

    vertices: tuple[Point, Point, Point, Point]

    @property
    def a1(self) -> Point:
        return self.vertices[0]

    @property
    def a2(self) -> Point:
        return self.vertices[1]

    @property
    def a3(self) -> Point:
        return self.vertices[2]

    @property
    def a4(self) -> Point:
        return self.vertices[3]

    def side_lengths(self) -> tuple[float, float, float, float]:
        """(a, b, c, d) = (|A1A4|, |A1A2|, |A2A3|, |A3A4|)."""
        v = self.vertices
        return (_dist(v[0], v[3]), _dist(v[0], v[1]),
                _dist(v[1], v[2]), _dist(v[2], v[3]))

    def diameter(self) -> float:
        v = self.vertices
        return max(_dist(v[i], v[j]) for i in range(4) for j in range(i + 1, 4))

    def rotate_labels(self, k: int) -> "Quadrilateral":
        """Cyclically shift the labels by k positions (A1 <- A1+k).

        The vertex set and its clockwise orientation are unchanged; only
        which vertex is called A1 moves, which swaps the roles of the two
        diagonals when k is odd.
        """
        k %= 4
        v = self.vertices
        return Quadrilateral(tuple(v[(i + k) % 4] for i in range(4)))


class DiagonalData(NamedTuple):
    d1: tuple[Point, Point]
    d2: tuple[Point, Point]
    m1: Point
    m2: Point
    p: Point
    newton_line: Optional[tuple[Point, Point]]  # None for parallelograms


class ClassificationReport(NamedTuple):
    convex: bool
    parallelogram: bool
    trapezoid: bool
    tangential: bool
    orthodiagonal: bool
    kite: bool
    mdq_type1: bool
    mdq_type2: bool
    side_lengths: tuple[float, float, float, float]

    @property
    def mdq(self) -> bool:
        return self.mdq_type1 or self.mdq_type2


def _validate_convex(vertices: Sequence[Point]) -> None:
    diam = max(_dist(p, q) for i, p in enumerate(vertices)
               for q in vertices[i + 1:])
    if diam == 0.0:
        raise DuplicateVertex("all vertices coincide")
    for i, p in enumerate(vertices):
        for q in vertices[i + 1:]:
            if _dist(p, q) <= 1e-12 * diam:
                raise DuplicateVertex(f"vertices {p} and {q} coincide")
    crosses = []
    for i in range(4):
        e1 = _sub(vertices[(i + 1) % 4], vertices[i])
        e2 = _sub(vertices[(i + 2) % 4], vertices[(i + 1) % 4])
        crosses.append(_cross(e1, e2))
    floor = CONVEXITY_TOL * diam * diam
    if any(abs(x) <= floor for x in crosses):
        raise NonConvexInput("near-collinear consecutive vertices")
    if not (all(x > 0 for x in crosses) or all(x < 0 for x in crosses)):
        raise NonConvexInput("vertices are not in convex position")


def quadrilateral(vertices: Iterable[Point]) -> Quadrilateral:
    """Build a Quadrilateral from vertices already given in clockwise order.

    Unlike `canonicalize` this keeps the given starting vertex, which is
    what label-sensitive constructions (canonical frames, diagonal-role
    swaps) need.
    """
    pts = tuple((float(x), float(y)) for x, y in vertices)
    if len(pts) != 4:
        raise NonConvexInput("exactly four vertices required")
    _validate_convex(pts)
    e1 = _sub(pts[1], pts[0])
    e2 = _sub(pts[2], pts[1])
    if _cross(e1, e2) > 0:
        raise NonConvexInput("vertices are counterclockwise; expected clockwise")
    return Quadrilateral(pts)


def canonicalize(raw_vertices: Iterable[Point]) -> Quadrilateral:
    """Order four points clockwise starting from the lower-left vertex.

    Accepts the vertices in any order (they are sorted by angle around
    the centroid), rejects inputs that are not in strictly convex
    position, and reverses counterclockwise input.
    """
    pts = [(float(x), float(y)) for x, y in raw_vertices]
    if len(pts) != 4:
        raise NonConvexInput("exactly four vertices required")
    for p in pts:
        if not (math.isfinite(p[0]) and math.isfinite(p[1])):
            raise NonConvexInput(f"non-finite vertex {p}")
    cx = sum(p[0] for p in pts) / 4.0
    cy = sum(p[1] for p in pts) / 4.0
    ordered = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    _validate_convex(ordered)
    # angle sort is counterclockwise; flip to clockwise
    ordered = [ordered[0]] + ordered[:0:-1]
    start = min(range(4), key=lambda i: (ordered[i][1], ordered[i][0]))
    ordered = ordered[start:] + ordered[:start]
    return Quadrilateral(tuple(ordered))


def diagonals(quad: Quadrilateral) -> DiagonalData:
    """Diagonal segments, their midpoints, intersection and Newton line."""
    a1, a2, a3, a4 = quad.vertices
    m1 = _midpoint(a1, a3)
    m2 = _midpoint(a2, a4)
    u = _sub(a3, a1)
    v = _sub(a4, a2)
    denom = _cross(u, v)
    rhs = _sub(a2, a1)
    alpha = _cross(rhs, v) / denom
    p = (a1[0] + alpha * u[0], a1[1] + alpha * u[1])
    newton = None if _dist(m1, m2) <= 1e-14 * quad.diameter() else (m1, m2)
    return DiagonalData((a1, a3), (a2, a4), m1, m2, p, newton)


def _parallel(u: Point, v: Point, tol: float) -> bool:
    return abs(_cross(u, v)) <= tol * math.hypot(*u) * math.hypot(*v)


def classify(quad: Quadrilateral, tol: float = CLASSIFY_TOL) -> ClassificationReport:
    """Evaluate all classification predicates at relative tolerance `tol`."""
    a1, a2, a3, a4 = quad.vertices
    diam = quad.diameter()
    a, b, c, d = quad.side_lengths()
    perim = a + b + c + d
    dd = diagonals(quad)

    mdq1 = _dist(dd.p, dd.m2) <= tol * diam
    mdq2 = _dist(dd.p, dd.m1) <= tol * diam
    parallelogram = _dist(dd.m1, dd.m2) <= tol * diam
    s1, s2 = _sub(a2, a1), _sub(a3, a2)
    s3, s4 = _sub(a4, a3), _sub(a1, a4)
    trapezoid = _parallel(s1, s3, tol) or _parallel(s2, s4, tol)
    tangential = abs(a + c - (b + d)) <= tol * perim
    u, v = _sub(a3, a1), _sub(a4, a2)
    orthodiagonal = abs(u[0] * v[0] + u[1] * v[1]) <= tol * math.hypot(*u) * math.hypot(*v)
    kite = ((abs(a - b) <= tol * perim and abs(c - d) <= tol * perim)
            or (abs(b - c) <= tol * perim and abs(a - d) <= tol * perim))
    return ClassificationReport(True, parallelogram, trapezoid, tangential,
                                orthodiagonal, kite, mdq1, mdq2, (a, b, c, d))


def in_region_g(s: float, t: float, tol: float = CLASSIFY_TOL) -> bool:
    """Membership in the parameter region {s,t > 0, s+t > 1, s != 1}."""
    return s > 0.0 and t > 0.0 and s + t > 1.0 and abs(s - 1.0) > tol


def mdq_type_qst(s: float, t: float, tol: float = CLASSIFY_TOL) -> tuple[bool, bool]:
    """MDQ types of the frame with vertices (0,0),(0,1),(s,t),(1,0).

    Type 1 holds iff s = t, type 2 iff s + t = 2 (within `tol`, relative
    to the parameter scale).
    """
    if not in_region_g(s, t, tol):
        raise ParamOutOfRegion(f"(s,t)=({s},{t}) outside region G")
    scale = abs(s) + abs(t) + 1.0
    return (abs(s - t) <= tol * scale, abs(s + t - 2.0) <= tol * scale)


def f_values(s: float, t: float, v: float, w: float) -> tuple[float, float, float]:
    """Auxiliary frame quantities (f1, f2, f3).

    f1 = v(t-1) + (1-w)s and f2 = vt - ws are positive exactly when the
    frame vertices are convex; f3 = ws - v(t-1) is nonzero exactly when
    sides S2 and S4 are not parallel.
    """
    f1 = v * (t - 1.0) + (1.0 - w) * s
    f2 = v * t - w * s
    f3 = w * s - v * (t - 1.0)
    return f1, f2, f3


def check_qstvw_region(s: float, t: float, v: float, w: float,
                       require_f3: bool = True, tol: float = CLASSIFY_TOL) -> None:
    """Raise ParamOutOfRegion unless (s,t,v,w) is an admissible frame.

    Checks s,v > 0, t > w, s != v and f1, f2 > 0; `require_f3` adds the
    no-parallel-S2S4 condition f3 != 0 needed by the root formulas.
    """
    scale = max(abs(s), abs(t), abs(v), abs(w), 1.0)
    if not (s > 0.0 and v > 0.0):
        raise ParamOutOfRegion("frame requires s, v > 0")
    if not t > w:
        raise ParamOutOfRegion("frame requires t > w")
    if abs(s - v) <= tol * scale:
        raise ParamOutOfRegion("frame requires s != v (parallel vertical sides)")
    f1, f2, f3 = f_values(s, t, v, w)
    if f1 <= 0.0 or f2 <= 0.0:
        raise ParamOutOfRegion("frame is not convex (f1, f2 must be positive)")
    if require_f3 and abs(f3) <= tol * scale * scale:
        raise ParamOutOfRegion("frame requires f3 != 0 (parallel sides S2, S4)")


def mdq_type_qstvw(s: float, t: float, v: float, w: float,
                   tol: float = CLASSIFY_TOL) -> tuple[bool, bool]:
    """MDQ types of the frame with vertices (0,0),(0,1),(s,t),(v,w).

    Type 1 holds iff vt = (w+1)s, type 2 iff (t-2)v = (w-1)s.
    """
    check_qstvw_region(s, t, v, w, require_f3=False, tol=tol)
    scale1 = abs(v * t) + abs((w + 1.0) * s) + 1.0
    scale2 = abs((t - 2.0) * v) + abs((w - 1.0) * s) + 1.0
    type1 = abs(v * t - (w + 1.0) * s) <= tol * scale1
    type2 = abs((t - 2.0) * v - (w - 1.0) * s) <= tol * scale2
    return type1, type2
