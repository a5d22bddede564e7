"""Eccentricity functional over the inscribed family and its minimizer.

For the (s,t,v,w) frame the squared axis ratio of the family member at r is

    G(r) = (O(r) - sqrt(M(r))) / (O(r) + sqrt(M(r))),
    O = A + C,   M = (A - C)^2 + B^2,

with A, B, C the frame conic's coefficient polynomials.  Minimizing the
eccentricity means maximizing G.  The critical points of G are the roots of
the quartic p = 2*M*O' - O*M'; for a type-1 midpoint diagonal frame p
factors through an explicit quadratic whose unique root in (0,1) is the
optimizer, which is how the closed-form solver works.  A grid-plus-bisection
root isolator on p provides the independent numeric path.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .affine import normalize_to_qstvw
from .conic import ConicCoeffs, Point, geometry
from .diameters import conjugate_direction, diameter_endpoints, parallel_margin
from .errors import InEllipseError, NoRootInJ, NotMDQ, ParamOutOfRegion
from .family import (InscribedEllipse, J_MARGIN, check_unit_interval, inscribe,
                     qstvw_coeff_polys, _square_to_original, square_inellipse_conic)
from .quad import (Quadrilateral, classify, check_qstvw_region, f_values,
                   mdq_type_qstvw)

#: below this eccentricity the minimal ellipse is reported as a circle
NEAR_CIRCLE_ECC = 1e-6


class EccFunctional:
    """Cached polynomials O, M, N, p of the (s,t,v,w) family (ascending coeffs)."""

    def __init__(self, s: float, t: float, v: float, w: float,
                 require_f3: bool = False):
        check_qstvw_region(s, t, v, w, require_f3=require_f3)
        self.s, self.t, self.v, self.w = s, t, v, w
        pa, pb, pc, _, _, _ = qstvw_coeff_polys(s, t, v, w)
        a = np.asarray(pa, float)
        b = np.asarray(pb, float)
        c = np.asarray(pc, float)

        def pad(coeffs, length):
            # numpy's polynomial ops trim exact trailing zeros; fixed shapes
            # keep downstream coefficientwise comparisons simple
            out = np.zeros(length)
            out[:len(coeffs)] = coeffs
            return out

        self.o_coeffs = pad(npoly.polyadd(a, c), 3)
        diff = npoly.polysub(a, c)
        self.m_coeffs = pad(npoly.polyadd(npoly.polymul(diff, diff),
                                          npoly.polymul(b, b)), 5)
        self.n_coeffs = pad(
            npoly.polysub(npoly.polymul(self.o_coeffs, self.o_coeffs),
                          self.m_coeffs), 5)
        p_full = pad(npoly.polysub(
            2.0 * npoly.polymul(self.m_coeffs, npoly.polyder(self.o_coeffs)),
            npoly.polymul(self.o_coeffs, npoly.polyder(self.m_coeffs))), 6)
        top = np.max(np.abs(p_full))
        # the degree-5 terms cancel identically; drop the roundoff residue
        if abs(p_full[5]) > 1e-9 * top:
            raise InEllipseError("critical-point polynomial has degree > 4")
        self.p_coeffs = p_full[:5]

    def o(self, r):
        return npoly.polyval(r, self.o_coeffs)

    def m(self, r):
        return npoly.polyval(r, self.m_coeffs)

    def n(self, r):
        return npoly.polyval(r, self.n_coeffs)

    def p(self, r):
        return npoly.polyval(r, self.p_coeffs)

    def g(self, r):
        """Squared axis ratio (b/a)^2 of the family member at r."""
        o = self.o(r)
        m = np.sqrt(np.maximum(self.m(r), 0.0))
        return (o - m) / (o + m)


def G_value(s: float, t: float, v: float, w: float, r: float) -> float:
    """Squared axis ratio of the (s,t,v,w) family member at r."""
    check_unit_interval(r, "r")
    return float(EccFunctional(s, t, v, w).g(r))


def N_factorization(s: float, t: float, v: float, w: float,
                    tol: float = 1e-9) -> tuple[float, float, float, float]:
    """Roots (0, 1, f2/(v-s), v/(v-s)) of N, verified against the expansion.

    N must factor as 16 s^2 v^2 r (1-r) ((s-v)r + v) ((s-v)r + f2); the
    roots are all distinct for an admissible frame (f3 = 0 would merge the
    last two, which is rejected).
    """
    check_qstvw_region(s, t, v, w, require_f3=True)
    _, f2, _ = f_values(s, t, v, w)
    roots = (0.0, 1.0, f2 / (v - s), v / (v - s))
    scale = max(1.0, *(abs(r) for r in roots))
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(roots[i] - roots[j]) <= tol * scale:
                raise ParamOutOfRegion("roots of N are not distinct")
    func = EccFunctional(s, t, v, w)
    expanded = 16.0 * s * s * v * v * npoly.polymul(
        npoly.polymul([0.0, 1.0], [1.0, -1.0]),
        npoly.polymul([v, s - v], [f2, s - v]))
    top = max(np.max(np.abs(expanded)), np.max(np.abs(func.n_coeffs)))
    if np.max(np.abs(npoly.polysub(expanded, func.n_coeffs))) > tol * top:
        raise InEllipseError("N does not match its factorization")
    return roots


def p_quartic(s: float, t: float, v: float, w: float) -> tuple[float, ...]:
    """Ascending coefficients (degree <= 4) of p = 2*M*O' - O*M'."""
    return tuple(EccFunctional(s, t, v, w).p_coeffs)


def alpha_coeffs(s: float, v: float, w: float) -> tuple[float, float, float]:
    """Ascending coefficients of the type-1 optimizer quadratic.

    alpha(r) = 2(s-v)(v^2+w^2+1) r^2 + 2v(v^2+w^2+1) r - s(v^2+(w+1)^2).
    """
    k = v * v + w * w + 1.0
    return (-s * (v * v + (w + 1.0) ** 2), 2.0 * v * k, 2.0 * (s - v) * k)


def alpha_root(s: float, v: float, w: float, tol: float = 1e-9) -> float:
    """Unique root in (0,1) of the type-1 optimizer quadratic.

    Valid for type-1 frames, where t is determined by t = s(w+1)/v; the
    admissibility conditions reduce to s, v > 0, s != v and 2s - v > 0.
    alpha(0) < 0 < alpha(1) guarantees the root exists.
    """
    scale = max(abs(s), abs(v), 1.0)
    if not (s > 0.0 and v > 0.0):
        raise ParamOutOfRegion("type-1 frame requires s, v > 0")
    if abs(s - v) <= tol * scale:
        raise ParamOutOfRegion("type-1 frame requires s != v")
    if not 2.0 * s - v > 0.0:
        raise ParamOutOfRegion("type-1 frame requires 2s - v > 0")
    a0, a1, a2 = alpha_coeffs(s, v, w)
    disc = a1 * a1 - 4.0 * a2 * a0
    if disc < 0.0:
        raise NoRootInJ("optimizer quadratic has no real root")
    root = math.sqrt(disc)
    q = -0.5 * (a1 + math.copysign(root, a1))
    candidates = [q / a2, a0 / q] if q != 0.0 else [-a1 / a2, 0.0]
    in_j = [r for r in candidates if 0.0 < r < 1.0]
    if len(in_j) == 1:
        return in_j[0]
    # ill-conditioned quadratic: fall back to bisection on the sign change
    lo, hi = 0.0, 1.0
    flo = a0
    if flo >= 0.0:
        raise NoRootInJ("optimizer quadratic does not change sign on (0,1)")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = (a2 * mid + a1) * mid + a0
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    return 0.5 * (lo + hi)


class MinEccResult(NamedTuple):
    r_star: float
    ellipse: InscribedEllipse
    eccentricity: float
    axis_ratio_sq: float
    method: str


class T3Report(NamedTuple):
    parallel: bool
    equal_len: bool
    len1_sq: float
    len2_sq: float
    near_circle: bool
    parallel_margin: float
    length_margin: float
    closed_form_len_sq: Optional[tuple[float, float]]


def _bisect_poly(coeffs, lo: float, hi: float, xtol: float = 1e-12) -> float:
    flo = npoly.polyval(lo, coeffs)
    if flo == 0.0:
        return lo
    fhi = npoly.polyval(hi, coeffs)
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise NoRootInJ("no sign change in bracket")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = npoly.polyval(mid, coeffs)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _critical_points(func: EccFunctional, grid: int = 1024) -> list[float]:
    """Roots of p inside (0,1), isolated on a sign grid and bisected."""
    xs = np.linspace(J_MARGIN, 1.0 - J_MARGIN, grid + 1)
    vals = func.p(xs)
    roots = []
    for i in range(grid):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(float(xs[i]))
        elif (a < 0.0) != (b < 0.0):
            roots.append(_bisect_poly(func.p_coeffs, float(xs[i]), float(xs[i + 1])))
    if vals[-1] == 0.0:
        roots.append(float(xs[-1]))
    return roots


def _incircle(quad: Quadrilateral) -> tuple[Point, float, tuple[Point, ...]]:
    """Center, radius and side tangency points of the inscribed circle."""
    a1, a2, a3, a4 = quad.vertices

    def unit(p, q):
        n = math.dist(p, q)
        return ((q[0] - p[0]) / n, (q[1] - p[1]) / n)

    u1 = unit(a1, a2)
    u2 = unit(a1, a4)
    b1 = (u1[0] + u2[0], u1[1] + u2[1])
    u3 = unit(a2, a1)
    u4 = unit(a2, a3)
    b2 = (u3[0] + u4[0], u3[1] + u4[1])
    det = b1[0] * (-b2[1]) - (-b2[0]) * b1[1]
    rx, ry = a2[0] - a1[0], a2[1] - a1[1]
    alpha = (rx * (-b2[1]) - (-b2[0]) * ry) / det
    cx, cy = a1[0] + alpha * b1[0], a1[1] + alpha * b1[1]

    sides = ((a1, a2), (a2, a3), (a3, a4), (a4, a1))
    feet, dists = [], []
    for p, q in sides:
        ux, uy = q[0] - p[0], q[1] - p[1]
        nn = ux * ux + uy * uy
        lam = ((cx - p[0]) * ux + (cy - p[1]) * uy) / nn
        foot = (p[0] + lam * ux, p[1] + lam * uy)
        feet.append(foot)
        dists.append(math.dist((cx, cy), foot))
    radius = sum(dists) / 4.0
    if max(dists) - min(dists) > 1e-7 * quad.diameter():
        raise ParamOutOfRegion("quad has no inscribed circle")
    return (cx, cy), radius, tuple(feet)


def _incircle_result(quad: Quadrilateral) -> MinEccResult:
    (cx, cy), radius, feet = _incircle(quad)
    conic = ConicCoeffs(1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy,
                        cx * cx + cy * cy - radius * radius)
    if classify(quad).parallelogram:
        pframe, sq_to_orig = _square_to_original(quad)
        param = sq_to_orig.invert().apply(feet[pframe.shift])[1]
        frame = "parallelogram"
    else:
        fr = normalize_to_qstvw(quad)
        param = fr.map.apply(feet[fr.shift])[1]
        frame = "qstvw"
    ellipse = InscribedEllipse(conic, param, feet, frame, quad)
    return MinEccResult(param, ellipse, 0.0, 1.0, "incircle")


def _golden_max(f, lo: float, hi: float, xtol: float = 1e-12) -> float:
    invphi = 0.5 * (math.sqrt(5.0) - 1.0)
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def _parallelogram_result(quad: Quadrilateral) -> MinEccResult:
    _, sq_to_orig = _square_to_original(quad)

    def ratio(v: float) -> float:
        conic = sq_to_orig.apply_to_conic(square_inellipse_conic(v))
        return geometry(conic).axis_ratio_sq

    lo, hi = -1.0 + J_MARGIN, 1.0 - J_MARGIN
    xs = np.linspace(lo, hi, 1025)
    vals = [ratio(float(x)) for x in xs]
    i = int(np.argmax(vals))
    v_star = _golden_max(ratio, xs[max(i - 1, 0)], xs[min(i + 1, 1024)])
    ellipse = inscribe(quad, v_star)
    geo = geometry(ellipse.conic)
    return MinEccResult(v_star, ellipse, geo.eccentricity, geo.axis_ratio_sq,
                        "parallelogram_numeric")


def _pullback_ellipse(quad: Quadrilateral, r: float, original: Quadrilateral,
                      label_shift: int) -> InscribedEllipse:
    """Inscribe at r in the frame of `quad`, reported on `original`'s labels."""
    ie = inscribe(quad, r)
    if label_shift == 0:
        return ie
    tangency = [None] * 4
    for i, p in enumerate(ie.tangency):
        tangency[(i + label_shift) % 4] = p
    return InscribedEllipse(ie.conic, r, tuple(tangency), ie.frame, original)


def _type1_result(quad: Quadrilateral, original: Quadrilateral,
                  label_shift: int) -> MinEccResult:
    fr = normalize_to_qstvw(quad)
    type1, _ = mdq_type_qstvw(fr.s, fr.t, fr.v, fr.w, tol=1e-6)
    if not type1:
        raise NotMDQ("frame does not satisfy the type-1 identity")
    r1 = alpha_root(fr.s, fr.v, fr.w)
    ellipse = _pullback_ellipse(quad, r1, original, label_shift)
    ratio = G_value(fr.s, fr.t, fr.v, fr.w, r1)
    ecc = math.sqrt(max(1.0 - ratio, 0.0))
    return MinEccResult(r1, ellipse, ecc, ratio, "alpha_closed_form")


def min_ecc(quad: Quadrilateral) -> MinEccResult:
    """The unique minimal-eccentricity inscribed ellipse.

    Dispatch: tangential MDQs get their inscribed circle; type-1 MDQs the
    closed-form optimizer; type-2 MDQs are reduced to type 1 by shifting
    the labels one step (which swaps the diagonals); parallelograms are
    minimized numerically over their own family; everything else falls
    back to the quartic root isolation of `min_ecc_numeric`.
    """
    rep = classify(quad)
    if rep.tangential and (rep.mdq_type1 or rep.mdq_type2 or rep.parallelogram):
        return _incircle_result(quad)
    if rep.parallelogram:
        return _parallelogram_result(quad)
    if rep.mdq_type1:
        return _type1_result(quad, quad, 0)
    if rep.mdq_type2:
        return _type1_result(quad.rotate_labels(1), quad, 1)
    return min_ecc_numeric(quad)


def min_ecc_numeric(quad: Quadrilateral) -> MinEccResult:
    """Numeric minimal-eccentricity solver (independent of the closed form).

    Maximizes G over (0,1) by isolating all sign changes of the critical
    quartic p on a 1024-interval grid, bisecting each bracket to 1e-12,
    and comparing G at every critical point found.
    """
    if classify(quad).parallelogram:
        raise ParamOutOfRegion("numeric solver requires a non-parallelogram")
    fr = normalize_to_qstvw(quad)
    func = EccFunctional(fr.s, fr.t, fr.v, fr.w)
    roots = _critical_points(func)
    if not roots:
        raise NoRootInJ("no critical point of G found in (0,1)")
    ratios = [float(func.g(r)) for r in roots]
    best = max(range(len(roots)), key=lambda i: ratios[i])
    r_star = roots[best]
    ellipse = _pullback_ellipse(quad, r_star, quad, 0)
    ecc = math.sqrt(max(1.0 - ratios[best], 0.0))
    return MinEccResult(r_star, ellipse, ecc, ratios[best], "quartic_numeric")


def closed_form_diameter_len_sq(s: float, v: float, w: float,
                                r1: float) -> tuple[float, float]:
    """Frame-coordinate squared lengths of the two diagonal-parallel diameters.

    With beta = (s-v)r1 + v and zeta = (s-v)r1 + s, the diameter parallel
    to D1 has squared length (1 + ((w+1)/v)^2) v^2 s (1-r1) zeta / beta^2
    and the one parallel to D2 has (1 + ((w-1)/v)^2) r1 s v^2 / beta.
    """
    beta = (s - v) * r1 + v
    zeta = (s - v) * r1 + s
    len1 = (1.0 + ((w + 1.0) / v) ** 2) * v * v * s * (1.0 - r1) * zeta / (beta * beta)
    len2 = (1.0 + ((w - 1.0) / v) ** 2) * r1 * s * v * v / beta
    return len1, len2


def verify_T3(quad: Quadrilateral, tol: float = 1e-7) -> T3Report:
    """Check that the minimal ellipse's diagonal-parallel diameters are equal.

    Computes the minimal-eccentricity ellipse, verifies that the conjugate
    of its D1-parallel diameter is parallel to D2 and that the two
    diameters have equal length.  Near-circular optima (eccentricity below
    1e-6) are reported as vacuously true with the `near_circle` flag, as
    equal conjugate diameters degenerate there.  For non-parallelogram
    MDQs the squared lengths are also cross-checked against their frame
    closed forms.
    """
    rep = classify(quad)
    if not (rep.mdq_type1 or rep.mdq_type2 or rep.parallelogram):
        raise NotMDQ("quad is not a midpoint diagonal quadrilateral")
    res = min_ecc(quad)
    conic = res.ellipse.conic
    a1, a2, a3, a4 = quad.vertices
    d1 = (a3[0] - a1[0], a3[1] - a1[1])
    d2 = (a4[0] - a2[0], a4[1] - a2[1])
    if res.eccentricity < NEAR_CIRCLE_ECC:
        return T3Report(True, True, 0.0, 0.0, True, 0.0, 0.0, None)

    par_margin = parallel_margin(conjugate_direction(conic, d1), d2)
    p1, p2 = diameter_endpoints(conic, d1)
    p3, p4 = diameter_endpoints(conic, d2)
    len1 = (p2[0] - p1[0]) ** 2 + (p2[1] - p1[1]) ** 2
    len2 = (p4[0] - p3[0]) ** 2 + (p4[1] - p3[1]) ** 2
    len_margin = abs(len1 - len2) / max(len1, len2)

    closed: Optional[tuple[float, float]] = None
    if not rep.parallelogram and res.method == "alpha_closed_form":
        labeled = quad if rep.mdq_type1 else quad.rotate_labels(1)
        fr = normalize_to_qstvw(labeled)
        cf1, cf2 = closed_form_diameter_len_sq(fr.s, fr.v, fr.w, res.r_star)
        unit = 1.0 / fr.scale
        cf1, cf2 = cf1 * unit * unit, cf2 * unit * unit
        # frame D1 is the original D1 for type 1, the original D2 for type 2
        closed = (cf1, cf2) if rep.mdq_type1 else (cf2, cf1)
    return T3Report(par_margin <= tol, len_margin <= tol, len1, len2,
                    False, par_margin, len_margin, closed)
