"""General-conic algebra: ellipse test, center, axes, eccentricity, line queries.

A conic is the coefficient sextuple (a, b, c, d, e, f) of

    a*x^2 + b*x*y + c*y^2 + d*x + e*y + f = 0,

meaningful only up to a nonzero scalar.  All computations are plain
binary64; points and directions are float pairs.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import InEllipseError

Point = tuple[float, float]
Direction = tuple[float, float]

#: relative discriminant tolerance used to flag a double root in line_intersect
TANGENT_TOL = 1e-9


class ConicCoeffs(NamedTuple):
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float


class EllipseGeometry(NamedTuple):
    center: Point
    semi_major: float
    semi_minor: float
    eccentricity: float
    major_axis_direction: Direction

    @property
    def axis_ratio_sq(self) -> float:
        """(semi_minor / semi_major)^2, i.e. 1 - eccentricity^2."""
        return (self.semi_minor / self.semi_major) ** 2


def sign_normalized(conic: ConicCoeffs) -> ConicCoeffs:
    """Flip all six coefficients when a < 0 (or a = 0 and c < 0).

    The ellipse test assumes the leading quadratic coefficients are
    positive; a real ellipse always has a*c > 0 so flipping on `a`
    suffices, with `c` as the tie-break when a = 0.
    """
    a, b, c, d, e, f = conic
    if a < 0.0 or (a == 0.0 and c < 0.0):
        return ConicCoeffs(-a, -b, -c, -d, -e, -f)
    return ConicCoeffs(a, b, c, d, e, f)


def scale_normalized(conic: ConicCoeffs) -> ConicCoeffs:
    """Rescale so the maximum absolute coefficient is 1, then sign-normalize."""
    m = max(abs(x) for x in conic)
    if m == 0.0:
        raise InEllipseError("all conic coefficients are zero")
    return sign_normalized(ConicCoeffs(*(x / m for x in conic)))


def discriminants(conic: ConicCoeffs) -> tuple[float, float]:
    """Return (Delta, delta) = (4ac - b^2, c d^2 + a e^2 - b d e - f*Delta).

    Coefficients are sign-normalized first so the positivity convention
    of the ellipse test applies.
    """
    a, b, c, d, e, f = sign_normalized(conic)
    big = 4.0 * a * c - b * b
    small = c * d * d + a * e * e - b * d * e - f * big
    return big, small


def is_ellipse(conic: ConicCoeffs) -> bool:
    """True iff the conic is a nondegenerate real ellipse."""
    big, small = discriminants(conic)
    return big > 0.0 and small > 0.0


def center(conic: ConicCoeffs) -> Point:
    """Center of an ellipse: the unique stationary point of the quadratic form."""
    a, b, c, d, e, f = conic
    big = 4.0 * a * c - b * b
    if big <= 0.0:
        raise InEllipseError("conic has no center of ellipse type (Delta <= 0)")
    x0 = (b * e - 2.0 * c * d) / big
    y0 = (b * d - 2.0 * a * e) / big
    return (x0, y0)


def geometry(conic: ConicCoeffs) -> EllipseGeometry:
    """Semi-axes, eccentricity and major-axis direction of an ellipse.

    Semi-axis lengths come from the closed forms

        s^2_major/minor = mu/2 * (a + c +/- sqrt((a-c)^2 + b^2)),
        mu = 4*delta / Delta^2,

    on the sign-normalized coefficients.  The major-axis direction is the
    eigenvector of [[a, b/2], [b/2, c]] belonging to the smaller eigenvalue.
    """
    norm = sign_normalized(conic)
    a, b, c, d, e, f = norm
    big, small = discriminants(norm)
    if big <= 0.0 or small <= 0.0:
        raise InEllipseError("geometry() requires an ellipse")
    mu = 4.0 * small / (big * big)
    root = math.hypot(a - c, b)
    major_sq = 0.5 * mu * (a + c + root)
    minor_sq = 0.5 * mu * (a + c - root)
    # roundoff can push minor_sq a hair negative for near-degenerate input
    minor_sq = max(minor_sq, 0.0)
    ratio = minor_sq / major_sq
    ecc = math.sqrt(max(1.0 - ratio, 0.0))
    if root == 0.0:
        direction = (1.0, 0.0)  # circle: any direction qualifies
    else:
        lam = 0.5 * (a + c - root)
        # eigenvector candidates; keep the better conditioned one
        v1 = (b / 2.0, lam - a)
        v2 = (lam - c, b / 2.0)
        v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
        n = math.hypot(*v)
        direction = (v[0] / n, v[1] / n)
    return EllipseGeometry(center(norm), math.sqrt(major_sq), math.sqrt(minor_sq),
                           ecc, direction)


def evaluate(conic: ConicCoeffs, p: Point) -> float:
    """Residual of the conic equation at p."""
    a, b, c, d, e, f = conic
    x, y = p
    return a * x * x + b * x * y + c * y * y + d * x + e * y + f


def gradient(conic: ConicCoeffs, p: Point) -> Direction:
    """Gradient (2ax + by + d, bx + 2cy + e) of the quadratic form at p."""
    a, b, c, d, e, f = conic
    x, y = p
    return (2.0 * a * x + b * y + d, b * x + 2.0 * c * y + e)


def line_intersect(conic: ConicCoeffs, p0: Point, direction: Direction,
                   tol: float = TANGENT_TOL) -> list[Point]:
    """Real intersections of the parametric line p0 + t*direction with the conic.

    Substituting the line into the conic gives a quadratic in t.  A
    discriminant within `tol` of zero (relative to the quadratic's scale)
    is treated as a double root and yields a single point; for an ellipse
    a singleton result therefore means the line is tangent.
    """
    dx, dy = direction
    if dx == 0.0 and dy == 0.0:
        raise InEllipseError("line direction must be nonzero")
    a, b, c, d, e, f = conic
    x0, y0 = p0
    qa = a * dx * dx + b * dx * dy + c * dy * dy
    qb = (2.0 * a * x0 * dx + b * (x0 * dy + y0 * dx) + 2.0 * c * y0 * dy
          + d * dx + e * dy)
    qc = evaluate(conic, p0)
    scale_sq = qb * qb + 4.0 * abs(qa) * abs(qc)
    if qa == 0.0:
        # line direction is asymptotic (never happens for an ellipse)
        if qb == 0.0:
            return []
        t = -qc / qb
        return [(x0 + t * dx, y0 + t * dy)]
    disc = qb * qb - 4.0 * qa * qc
    if abs(disc) <= tol * scale_sq:
        t = -qb / (2.0 * qa)
        return [(x0 + t * dx, y0 + t * dy)]
    if disc < 0.0:
        return []
    root = math.sqrt(disc)
    # Citardauq pairing avoids cancellation in the smaller root
    q = -0.5 * (qb + math.copysign(root, qb))
    t1, t2 = q / qa, qc / q
    if t1 > t2:
        t1, t2 = t2, t1
    return [(x0 + t1 * dx, y0 + t1 * dy), (x0 + t2 * dx, y0 + t2 * dy)]


def proportional(c1: ConicCoeffs, c2: ConicCoeffs, tol: float = 1e-9) -> bool:
    """True if the two sextuples agree up to a nonzero scalar.

    The scalar is fitted by least squares, then the residual is compared
    against `tol` times the max-abs coefficient.
    """
    dot11 = sum(x * x for x in c1)
    dot12 = sum(x * y for x, y in zip(c1, c2))
    if dot11 == 0.0:
        raise InEllipseError("all conic coefficients are zero")
    lam = dot12 / dot11
    m2 = max(abs(y) for y in c2)
    if m2 == 0.0 or lam == 0.0:
        return False
    return all(abs(lam * x - y) <= tol * m2 for x, y in zip(c1, c2))
