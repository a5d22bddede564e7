"""Affine maps on points, quads, conics and directions; canonical-frame reduction.

Two normalizations are provided.  `normalize_to_qst` sends (A1, A2, A4) to
(0,0), (0,1), (1,0) with a general affine map, so A3 lands at (s, t) in the
region {s,t > 0, s+t > 1, s != 1}.  `normalize_to_qstvw` uses a similarity
only (translation, rotation, uniform positive scaling), sending A1 to (0,0)
and A2 to (0,1); similarities preserve eccentricity, which is what the
minimal-eccentricity solver needs.  Quads whose sides A1A2 and A3A4 are
parallel are pre-rotated by 90 degrees and relabeled, which moves the
parallel pair out of the offending position; the returned `shift` records
the relabeling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .conic import ConicCoeffs, Direction, Point, scale_normalized
from .errors import IsParallelogram, NonConvexInput, SingularMap, ParamOutOfRegion
from .quad import Quadrilateral, canonicalize, classify, check_qstvw_region, in_region_g

Matrix2 = tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation with invertible linear part."""

    linear: Matrix2
    translation: Point

    def __post_init__(self):
        (m00, m01), (m10, m11) = self.linear
        det = m00 * m11 - m01 * m10
        scale = max(abs(m00), abs(m01), abs(m10), abs(m11))
        if scale == 0.0 or abs(det) <= 1e-12 * scale * scale:
            raise SingularMap(f"linear part {self.linear} is singular")

    def det(self) -> float:
        (m00, m01), (m10, m11) = self.linear
        return m00 * m11 - m01 * m10

    def apply(self, p: Point) -> Point:
        (m00, m01), (m10, m11) = self.linear
        tx, ty = self.translation
        x, y = p
        return (m00 * x + m01 * y + tx, m10 * x + m11 * y + ty)

    def apply_direction(self, u: Direction) -> Direction:
        """Push a direction forward through the linear part only."""
        (m00, m01), (m10, m11) = self.linear
        return (m00 * u[0] + m01 * u[1], m10 * u[0] + m11 * u[1])

    def apply_to_quad(self, quad: Quadrilateral) -> Quadrilateral:
        """Image quadrilateral, re-canonicalized to the lower-left convention."""
        return canonicalize([self.apply(p) for p in quad.vertices])

    def apply_to_conic(self, conic: ConicCoeffs) -> ConicCoeffs:
        """Coefficients of the image conic (max-abs normalized).

        Substitutes the inverse map into the quadratic form via congruence
        of the homogeneous 3x3 conic matrix.
        """
        inv = self.invert()
        (i00, i01), (i10, i11) = inv.linear
        tx, ty = inv.translation
        a, b, c, d, e, f = conic
        # rows of Hinv: (i00, i01, tx), (i10, i11, ty), (0, 0, 1)
        # new_M = Hinv^T M Hinv with M the symmetric matrix of the conic
        m00, m01, m02 = a, b / 2.0, d / 2.0
        m11, m12, m22 = c, e / 2.0, f
        # columns of (M @ Hinv); third components against Hinv's zero row drop out
        q00 = m00 * i00 + m01 * i10
        q10 = m01 * i00 + m11 * i10
        q01 = m00 * i01 + m01 * i11
        q11 = m01 * i01 + m11 * i11
        q02 = m00 * tx + m01 * ty + m02
        q12 = m01 * tx + m11 * ty + m12
        q22 = m02 * tx + m12 * ty + m22
        n00 = i00 * q00 + i10 * q10
        n01 = i00 * q01 + i10 * q11
        n02 = i00 * q02 + i10 * q12
        n11 = i01 * q01 + i11 * q11
        n12 = i01 * q02 + i11 * q12
        n22 = tx * q02 + ty * q12 + q22
        return scale_normalized(
            ConicCoeffs(n00, 2.0 * n01, n11, 2.0 * n02, 2.0 * n12, n22))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """Map equal to applying `inner` first, then self."""
        (a00, a01), (a10, a11) = self.linear
        (b00, b01), (b10, b11) = inner.linear
        lin = ((a00 * b00 + a01 * b10, a00 * b01 + a01 * b11),
               (a10 * b00 + a11 * b10, a10 * b01 + a11 * b11))
        tr = self.apply(inner.translation)
        return AffineMap(lin, tr)

    def invert(self) -> "AffineMap":
        (m00, m01), (m10, m11) = self.linear
        det = self.det()
        lin = ((m11 / det, -m01 / det), (-m10 / det, m00 / det))
        tx, ty = self.translation
        return AffineMap(lin, (-(lin[0][0] * tx + lin[0][1] * ty),
                               -(lin[1][0] * tx + lin[1][1] * ty)))


IDENTITY = AffineMap(((1.0, 0.0), (0.0, 1.0)), (0.0, 0.0))
ROT90_CCW = AffineMap(((0.0, -1.0), (1.0, 0.0)), (0.0, 0.0))


def translation(tx: float, ty: float) -> AffineMap:
    return AffineMap(((1.0, 0.0), (0.0, 1.0)), (tx, ty))


def rotation(angle: float) -> AffineMap:
    ca, sa = math.cos(angle), math.sin(angle)
    return AffineMap(((ca, -sa), (sa, ca)), (0.0, 0.0))


def scaling(k: float) -> AffineMap:
    return AffineMap(((k, 0.0), (0.0, k)), (0.0, 0.0))


class QstFrame(NamedTuple):
    map: AffineMap          # original coords -> frame coords
    s: float
    t: float
    shift: int              # frame A_i corresponds to original A_(i+shift)


class QstvwFrame(NamedTuple):
    map: AffineMap
    s: float
    t: float
    v: float
    w: float
    shift: int

    @property
    def scale(self) -> float:
        """Uniform length contraction applied by the similarity."""
        (m00, m01), (m10, m11) = self.map.linear
        return math.hypot(m00, m10)


def _relabel_after_rot90(quad: Quadrilateral) -> tuple[Quadrilateral, int]:
    """Rotate the quad 90 degrees CCW and re-canonicalize.

    Returns the relabeled quad together with the cyclic shift k such that
    the new A_i is the image of the original A_(i+k).
    """
    images = [ROT90_CCW.apply(p) for p in quad.vertices]
    relabeled = canonicalize(images)
    shift = None
    for k in range(4):
        if math.dist(relabeled.a1, images[k]) <= 1e-12 * (quad.diameter() + 1.0):
            shift = k
            break
    if shift is None:
        raise NonConvexInput("lost vertex correspondence after rotation")
    return relabeled, shift


def _qst_map(quad: Quadrilateral) -> tuple[AffineMap, float, float]:
    a1, a2, a3, a4 = quad.vertices
    u = (a2[0] - a1[0], a2[1] - a1[1])  # -> (0, 1)
    v = (a4[0] - a1[0], a4[1] - a1[1])  # -> (1, 0)
    det = u[0] * v[1] - u[1] * v[0]
    # L = [[0,1],[1,0]] @ inverse of the column matrix [u v]
    lin = ((-u[1] / det, u[0] / det), (v[1] / det, -v[0] / det))
    m = AffineMap(lin, (-(lin[0][0] * a1[0] + lin[0][1] * a1[1]),
                        -(lin[1][0] * a1[0] + lin[1][1] * a1[1])))
    s, t = m.apply(a3)
    return m, s, t


def normalize_to_qst(quad: Quadrilateral, tol: float = 1e-9) -> QstFrame:
    """Affine reduction to the frame with vertices (0,0),(0,1),(s,t),(1,0).

    Raises IsParallelogram for parallelograms.  When the direct reduction
    gives s = 1 (sides A1A2 and A3A4 parallel), the quad is rotated 90
    degrees counterclockwise and relabeled first.
    """
    if classify(quad).parallelogram:
        raise IsParallelogram("parallelograms admit no (s,t) frame")
    m, s, t = _qst_map(quad)
    shift = 0
    if abs(s - 1.0) <= tol * (1.0 + abs(s)):
        relabeled, shift = _relabel_after_rot90(quad)
        m2, s, t = _qst_map(relabeled)
        if abs(s - 1.0) <= tol * (1.0 + abs(s)):
            raise IsParallelogram("both side pairs parallel")
        m = m2.compose(ROT90_CCW)
    if not in_region_g(s, t, tol):
        raise ParamOutOfRegion(f"normalized (s,t)=({s},{t}) outside region G")
    return QstFrame(m, s, t, shift)


def _similarity_map(quad: Quadrilateral) -> AffineMap:
    a1, a2 = quad.a1, quad.a2
    ux, uy = a2[0] - a1[0], a2[1] - a1[1]
    norm_sq = ux * ux + uy * uy
    # rotate A1A2 onto the +y axis, then scale it to unit length
    lin = ((uy / norm_sq, -ux / norm_sq), (ux / norm_sq, uy / norm_sq))
    return AffineMap(lin, (-(lin[0][0] * a1[0] + lin[0][1] * a1[1]),
                           -(lin[1][0] * a1[0] + lin[1][1] * a1[1])))


def normalize_to_qstvw(quad: Quadrilateral, tol: float = 1e-9,
                       require_f3: bool = False) -> QstvwFrame:
    """Similarity reduction to the frame with vertices (0,0),(0,1),(s,t),(v,w).

    The similarity preserves eccentricities of inscribed ellipses.  When
    sides A1A2 and A3A4 are parallel (s = v), the quad is pre-rotated by
    90 degrees and relabeled.  A trapezoid whose parallel pair is S2/S4
    yields f3 = 0, which no relabeling can avoid; by default such frames
    are returned (the inscribed family is still well defined) and only
    operations that divide by f3 reject them, via `require_f3`.
    """
    if classify(quad).parallelogram:
        raise IsParallelogram("parallelograms admit no (s,t,v,w) frame")
    m = _similarity_map(quad)
    s, t = m.apply(quad.a3)
    v, w = m.apply(quad.a4)
    shift = 0
    scale = max(abs(s), abs(v), 1.0)
    if abs(s - v) <= tol * scale:
        relabeled, shift = _relabel_after_rot90(quad)
        m2 = _similarity_map(relabeled)
        s, t = m2.apply(relabeled.a3)
        v, w = m2.apply(relabeled.a4)
        if abs(s - v) <= tol * max(abs(s), abs(v), 1.0):
            raise IsParallelogram("both side pairs parallel")
        m = m2.compose(ROT90_CCW)
    check_qstvw_region(s, t, v, w, require_f3=require_f3, tol=tol)
    return QstvwFrame(m, s, t, v, w, shift)


class ParallelogramFrame(NamedTuple):
    map: AffineMap          # original coords -> centered frame coords
    half_width: float       # l: half the horizontal extent of a lateral side pair
    half_height: float      # k: half the vertical extent
    shear: float            # d: horizontal offset of the top side
    shift: int              # frame A_i corresponds to original A_(i+shift)


def _parallelogram_frame_for_labels(quad: Quadrilateral,
                                    shift: int) -> ParallelogramFrame:
    a1, a4 = quad.a1, quad.a4
    angle = math.atan2(a4[1] - a1[1], a4[0] - a1[0])
    rot = rotation(-angle)
    cx = sum(p[0] for p in quad.vertices) / 4.0
    cy = sum(p[1] for p in quad.vertices) / 4.0
    m = rot.compose(translation(-cx, -cy))
    p1 = m.apply(quad.a1)
    p4 = m.apply(quad.a4)
    k = -p1[1]
    l = 0.5 * (p4[0] - p1[0])
    d = -0.5 * (p1[0] + p4[0])
    if k <= 0.0 or l <= 0.0:
        raise ParamOutOfRegion("degenerate parallelogram frame")
    return ParallelogramFrame(m, l, k, d, shift)


def parallelogram_frame(quad: Quadrilateral) -> ParallelogramFrame:
    """Rigid motion taking a parallelogram to the centered frame with
    vertices (-l-d, -k), (-l+d, k), (l+d, k), (l-d, -k).

    The frame requires shear d < l; when the given labeling violates that,
    the labels are rotated one step (using the lateral side pair as the
    base instead), which always yields d < 0 < l.  `shift` records the
    relabeling.
    """
    if not classify(quad).parallelogram:
        raise ParamOutOfRegion("quad is not a parallelogram")
    frame = _parallelogram_frame_for_labels(quad, 0)
    if frame.shear < frame.half_width * (1.0 - 1e-12):
        return frame
    frame = _parallelogram_frame_for_labels(quad.rotate_labels(1), 1)
    if not frame.shear < frame.half_width:
        raise ParamOutOfRegion("no labeling gives an admissible frame")
    return frame
