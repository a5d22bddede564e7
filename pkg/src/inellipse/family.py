"""One-parameter families of ellipses inscribed in canonical quadrilateral frames.

Three frames are covered:

* the (s,t) frame with vertices (0,0), (0,1), (s,t), (1,0), parametrized by
  the bottom-side tangency abscissa q in (0,1);
* the (s,t,v,w) frame with vertices (0,0), (0,1), (s,t), (v,w), parametrized
  by the left-side tangency ordinate r in (0,1);
* the centered parallelogram frame with vertices (-l-d,-k), (-l+d,k),
  (l+d,k), (l-d,-k), parametrized by v in (-1,1) (v = 0 gives the ellipse
  tangent at the side midpoints).

`inscribe` composes frame normalization with these families to inscribe an
ellipse in an arbitrary convex quadrilateral.  `marden_foci` locates the
foci of the ellipse inscribed in a triangle from weighted pole placement.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .conic import ConicCoeffs, Point, line_intersect
from .affine import AffineMap, normalize_to_qstvw, parallelogram_frame
from .errors import (CollinearTriangle, NonPositiveWeights, ParamOutOfRegion,
                     TangencyNotFound)
from .quad import Quadrilateral, classify, check_qstvw_region, f_values, in_region_g

#: margin keeping family parameters strictly inside their open interval
J_MARGIN = 1e-9


def check_unit_interval(x: float, name: str = "param") -> None:
    if not (J_MARGIN <= x <= 1.0 - J_MARGIN):
        raise ParamOutOfRegion(f"{name}={x} not in the open unit interval")


@dataclass(frozen=True)
class InscribedEllipse:
    """An inscribed ellipse together with its provenance.

    `tangency` lists one point per side, in side order S1..S4 of `quad`'s
    labeling.  `param` is the family parameter in the frame named by
    `frame` ("qstvw" or "parallelogram").
    """

    conic: ConicCoeffs
    param: float
    tangency: tuple[Point, Point, Point, Point]
    frame: str
    quad: Quadrilateral


def qst_conic(s: float, t: float, q: float) -> ConicCoeffs:
    """Inscribed-ellipse coefficients for the (s,t) frame, tangent at (q, 0)."""
    if not in_region_g(s, t):
        raise ParamOutOfRegion(f"(s,t)=({s},{t}) outside region G")
    check_unit_interval(q, "q")
    a = t * t
    b = 4.0 * q * q * (t - 1.0) * t + 2.0 * q * t * (s - t + 2.0) - 2.0 * s * t
    cc = ((1.0 - q) * s + q * t) ** 2
    d = -2.0 * q * t * t
    e = -2.0 * q * t * ((1.0 - q) * s + q * t)
    f = q * q * t * t
    return ConicCoeffs(a, b, cc, d, e, f)


def qst_newton_line(s: float, t: float, x: float) -> float:
    """Ordinate of the line through the diagonal midpoints of the (s,t) frame."""
    return 0.5 * (s - t + 2.0 * x * (t - 1.0)) / (s - 1.0)


def qst_center_param(s: float, t: float, q: float) -> tuple[float, Point]:
    """Center abscissa h and center point of the family member at q.

    The center lies on the open segment between the diagonal midpoints
    (s/2, t/2) and (1/2, 1/2), at (h, L(h)) with h determined by q.
    """
    if not in_region_g(s, t):
        raise ParamOutOfRegion(f"(s,t)=({s},{t}) outside region G")
    check_unit_interval(q, "q")
    h = 0.5 * (q * (t - s) + s) / (q * (t - 1.0) + 1.0)
    return h, (h, qst_newton_line(s, t, h))


def qst_tangency(s: float, t: float, q: float) -> tuple[Point, Point, Point, Point]:
    """Closed-form tangency points on sides S1..S4 of the (s,t) frame."""
    if not in_region_g(s, t):
        raise ParamOutOfRegion(f"(s,t)=({s},{t}) outside region G")
    check_unit_interval(q, "q")
    den1 = (t - s) * q + s
    den2 = (t - 1.0) * (s + t) * q + s
    den3 = (s + t - 2.0) * q + 1.0
    q1 = (0.0, q * t / den1)
    q2 = ((1.0 - q) * s * s / den2, t * (s + q * (t - 1.0)) / den2)
    q3 = ((s + q * (t - 1.0)) / den3, (1.0 - q) * t / den3)
    q4 = (q, 0.0)
    return q1, q2, q3, q4


def parallelogram_tangency(l: float, k: float, d: float,
                           v: float) -> tuple[Point, Point, Point, Point]:
    """Tangency points of the inscribed family on the centered parallelogram.

    The admissible parameter range is v in (-1, 1); the endpoints collapse
    the tangency points into opposite vertices.
    """
    if not (l > 0.0 and k > 0.0 and d < l):
        raise ParamOutOfRegion("parallelogram frame requires l, k > 0 and d < l")
    if not (abs(v) <= 1.0 - J_MARGIN):
        raise ParamOutOfRegion(f"v={v} not in (-1, 1)")
    return ((-l + d * v, k * v), (-l * v + d, k),
            (l - d * v, -k * v), (l * v - d, -k))


def square_inellipse_conic(v: float) -> ConicCoeffs:
    """Inscribed-ellipse coefficients for the square [-1,1]^2 at parameter v.

    Tangent to the sides at (-1, v), (-v, 1), (1, -v), (v, -1); v = 0 is
    the unit incircle.
    """
    if not (abs(v) <= 1.0 - J_MARGIN):
        raise ParamOutOfRegion(f"v={v} not in (-1, 1)")
    return ConicCoeffs(1.0, 2.0 * v, 1.0, 0.0, 0.0, v * v - 1.0)


def qstvw_coeff_polys(s: float, t: float, v: float,
                      w: float) -> tuple[tuple[float, ...], ...]:
    """Coefficient polynomials (ascending powers of r) of the (s,t,v,w) family.

    Returns six tuples for A, B, C, D, E, F of the family conic
    A(r)x^2 + B(r)xy + C(r)y^2 + D(r)x + E(r)y + F(r).
    """
    a2 = (s * s + v * v * t * t + w * w * s * s
          - 2.0 * t * v * s * (w + 1.0) + 2.0 * w * s * (2.0 * v - s))
    a1 = 2.0 * v * (s * t - 2.0 * w * s - t * t * v + t * s * w)
    a0 = t * t * v * v
    b2 = -4.0 * v * s * (v - s)
    b1 = -2.0 * v * s * (s * (w + 1.0) - v * (t + 2.0))
    b0 = -2.0 * v * v * s * t
    c0 = v * v * s * s
    d2 = 2.0 * s * v * (t * v - s * (w + 1.0))
    d1 = 2.0 * s * v * (2.0 * w * s - t * v)
    e1 = -2.0 * v * v * s * s
    f2 = s * s * v * v
    return ((a0, a1, a2), (b0, b1, b2), (c0,), (0.0, d1, d2), (0.0, e1), (0.0, 0.0, f2))


def qstvw_conic(s: float, t: float, v: float, w: float, r: float,
                require_f3: bool = False) -> ConicCoeffs:
    """Inscribed-ellipse coefficients for the (s,t,v,w) frame at parameter r.

    The family remains well defined when sides S2 and S4 happen to be
    parallel (f3 = 0), so that constraint is only enforced on request.
    """
    check_qstvw_region(s, t, v, w, require_f3=require_f3)
    check_unit_interval(r, "r")
    poly_a, poly_b, poly_c, poly_d, poly_e, poly_f = qstvw_coeff_polys(s, t, v, w)

    def ev(poly):
        acc = 0.0
        for coeff in reversed(poly):
            acc = acc * r + coeff
        return acc

    return ConicCoeffs(ev(poly_a), ev(poly_b), ev(poly_c),
                       ev(poly_d), ev(poly_e), ev(poly_f))


def _tangent_point(conic: ConicCoeffs, p0: Point, direction: Point,
                   side: str) -> Point:
    pts = line_intersect(conic, p0, direction)
    if len(pts) != 1:
        raise TangencyNotFound(
            f"side {side}: expected a double root, got {len(pts)} intersections")
    return pts[0]


def qstvw_tangency(s: float, t: float, v: float, w: float, r: float,
                   conic: ConicCoeffs | None = None
                   ) -> tuple[Point, Point, Point, Point]:
    """Tangency points on sides S1..S4 of the (s,t,v,w) frame at parameter r.

    S1 and S4 have closed forms, (0, r) and (q, (w/v)q) with
    q = svr/((s - f2)r + f2); the S2 and S3 points are recovered as the
    double root of the side line against the conic.
    """
    check_qstvw_region(s, t, v, w, require_f3=False)
    check_unit_interval(r, "r")
    if conic is None:
        conic = qstvw_conic(s, t, v, w, r)
    _, f2, _ = f_values(s, t, v, w)
    qq = s * v * r / ((s - f2) * r + f2)
    p1 = (0.0, r)
    p4 = (qq, (w / v) * qq)
    p2 = _tangent_point(conic, (0.0, 1.0), (s, t - 1.0), "S2")
    p3 = _tangent_point(conic, (s, t), (v - s, w - t), "S3")
    return p1, p2, p3, p4


def _square_to_original(quad: Quadrilateral):
    """(parallelogram frame, square->original map) for a parallelogram."""
    frame = parallelogram_frame(quad)
    squeeze = AffineMap(((frame.half_width, frame.shear),
                         (0.0, frame.half_height)), (0.0, 0.0))
    return frame, frame.map.invert().compose(squeeze)


def inscribe(quad: Quadrilateral, param: float) -> InscribedEllipse:
    """Inscribe the family member at `param` in an arbitrary convex quad.

    Parallelograms use the centered-parallelogram family (param in (-1,1));
    all other quads are normalized by a similarity to the (s,t,v,w) frame
    (param in (0,1)) and the conic and tangency points are pulled back.
    """
    if classify(quad).parallelogram:
        frame, sq_to_orig = _square_to_original(quad)
        conic = sq_to_orig.apply_to_conic(square_inellipse_conic(param))
        pts = parallelogram_tangency(frame.half_width, frame.half_height,
                                     frame.shear, param)
        inv = frame.map.invert()
        tangency = [None] * 4
        for i, p in enumerate(pts):
            tangency[(i + frame.shift) % 4] = inv.apply(p)
        return InscribedEllipse(conic, param, tuple(tangency),
                                "parallelogram", quad)
    fr = normalize_to_qstvw(quad)
    frame_conic = qstvw_conic(fr.s, fr.t, fr.v, fr.w, param)
    frame_pts = qstvw_tangency(fr.s, fr.t, fr.v, fr.w, param, conic=frame_conic)
    inv = fr.map.invert()
    conic = inv.apply_to_conic(frame_conic)
    tangency = [None] * 4
    for i, p in enumerate(frame_pts):
        tangency[(i + fr.shift) % 4] = inv.apply(p)
    return InscribedEllipse(conic, param, tuple(tangency), "qstvw", quad)


def marden_foci(z1: Point, z2: Point, z3: Point,
                t1: float, t2: float, t3: float
                ) -> tuple[tuple[Point, Point], tuple[Point, Point, Point]]:
    """Foci and tangency points of the ellipse inscribed in a triangle.

    The foci are the zeros of t1/(z-z1) + t2/(z-z2) + t3/(z-z3) with the
    weights normalized to sum to 1; the inscribed ellipse touches the side
    z2z3 at (t2*z3 + t3*z2)/(t2 + t3) and cyclically.  Requires a positive
    weight product and a nondegenerate triangle.
    """
    area2 = ((z2[0] - z1[0]) * (z3[1] - z1[1])
             - (z2[1] - z1[1]) * (z3[0] - z1[0]))
    scale = max(abs(z2[0] - z1[0]), abs(z2[1] - z1[1]),
                abs(z3[0] - z1[0]), abs(z3[1] - z1[1]), 1e-300)
    if abs(area2) <= 1e-12 * scale * scale:
        raise CollinearTriangle("triangle vertices are collinear")
    total = t1 + t2 + t3
    if abs(total) <= 1e-300:
        raise NonPositiveWeights("weights sum to zero")
    t1, t2, t3 = t1 / total, t2 / total, t3 / total
    if t1 * t2 * t3 <= 0.0:
        raise NonPositiveWeights("weight product must be positive")
    w1, w2, w3 = complex(*z1), complex(*z2), complex(*z3)
    # numerator of the weighted pole sum: z^2 - b z + c
    b = t1 * (w2 + w3) + t2 * (w1 + w3) + t3 * (w1 + w2)
    c = t1 * w2 * w3 + t2 * w1 * w3 + t3 * w1 * w2
    root = cmath.sqrt(b * b - 4.0 * c)
    f1, f2 = (b + root) / 2.0, (b - root) / 2.0
    zeta1 = (t2 * w3 + t3 * w2) / (t2 + t3)
    zeta2 = (t1 * w3 + t3 * w1) / (t1 + t3)
    zeta3 = (t1 * w2 + t2 * w1) / (t1 + t2)
    as_pt = lambda z: (z.real, z.imag)
    return (as_pt(f1), as_pt(f2)), (as_pt(zeta1), as_pt(zeta2), as_pt(zeta3))
