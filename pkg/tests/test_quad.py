import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from inellipse.errors import DuplicateVertex, NonConvexInput, ParamOutOfRegion
from inellipse.quad import (canonicalize, classify, diagonals, f_values,
                            mdq_type_qst, mdq_type_qstvw, quadrilateral)
from inellipse.sampling import (frame_quad, random_affine, random_kite,
                                random_mdq_quad, random_orthodiagonal_quad,
                                random_parallelogram, random_tangential_quad,
                                random_type1_frame, random_type2_frame)

from conftest import EXAMPLE_VERTICES, assert_points_close


class TestCanonicalize:
    def test_example_ordering(self):
        quad = canonicalize([(8, 4), (0, 0), (6, 2), (0, 1)])
        assert quad.vertices == ((0, 0), (0, 1), (8, 4), (6, 2))

    def test_ccw_square_reversed(self):
        quad = canonicalize([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert quad.vertices == ((0, 0), (0, 1), (1, 1), (1, 0))

    def test_collinear_rejected(self):
        with pytest.raises(NonConvexInput):
            canonicalize([(0, 0), (1, 1), (2, 2), (0, 1)])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateVertex):
            canonicalize([(0, 0), (0, 0), (1, 1), (0, 1)])

    def test_interior_point_rejected(self):
        with pytest.raises(NonConvexInput):
            canonicalize([(0, 0), (4, 0), (2, 3), (2, 1)])

    def test_idempotent(self):
        quad = canonicalize(EXAMPLE_VERTICES)
        assert canonicalize(quad.vertices).vertices == quad.vertices

    def test_permutation_invariant(self):
        pts = EXAMPLE_VERTICES
        expected = canonicalize(pts).vertices
        for perm in itertools.permutations(pts):
            assert canonicalize(perm).vertices == expected


@st.composite
def convex_frames(draw):
    s = draw(st.floats(0.5, 4.0))
    v = draw(st.floats(0.5, 4.0))
    w = draw(st.floats(-0.8, 1.5))
    t = w + draw(st.floats(0.4, 3.0))
    f1, f2, _ = f_values(s, t, v, w)
    if min(f1, f2) <= 0.05 or abs(s - v) <= 0.05:
        return None
    return s, t, v, w


@given(frame=convex_frames())
@settings(max_examples=100)
def test_canonicalize_rotation_and_reversal(frame):
    if frame is None:
        return
    quad = frame_quad(*frame)
    pts = list(quad.vertices)
    expected = canonicalize(pts).vertices
    for k in range(4):
        rotated = pts[k:] + pts[:k]
        assert canonicalize(rotated).vertices == expected
        assert canonicalize(rotated[::-1]).vertices == expected


class TestDiagonals:
    def test_example(self, example_quad):
        dd = diagonals(example_quad)
        assert dd.m1 == (4.0, 2.0)
        assert dd.m2 == (3.0, 1.5)
        # diagonal lines: y = x/2 and y = 1 + x/6 meet at (3, 1.5)
        assert_points_close(dd.p, (3.0, 1.5), 1e-12)

    def test_parallelogram_midpoints_coincide(self):
        dd = diagonals(canonicalize([(0, 0), (0, 1), (1, 1), (1, 0)]))
        assert dd.m1 == dd.m2 == (0.5, 0.5)
        assert dd.p == (0.5, 0.5)
        assert dd.newton_line is None

    def test_qst_intersection(self):
        s, t = 2.0, 3.0
        dd = diagonals(quadrilateral([(0, 0), (0, 1), (s, t), (1, 0)]))
        assert_points_close(dd.p, (s / (s + t), t / (s + t)), 1e-14)


class TestClassify:
    def test_example_is_type1(self, example_quad):
        rep = classify(example_quad)
        assert rep.mdq_type1 and not rep.mdq_type2
        assert not rep.parallelogram and not rep.trapezoid

    def test_unit_square(self):
        rep = classify(canonicalize([(0, 0), (0, 1), (1, 1), (1, 0)]))
        assert rep.parallelogram and rep.trapezoid and rep.tangential
        assert rep.orthodiagonal and rep.kite
        assert rep.mdq_type1 and rep.mdq_type2
        assert rep.side_lengths == (1.0, 1.0, 1.0, 1.0)

    def test_kite(self):
        rep = classify(canonicalize([(0, 0), (-1, 2), (0, 5), (1, 2)]))
        assert rep.kite and rep.orthodiagonal and rep.mdq
        # cross-check orthodiagonality via the side-length identity
        a, b, c, d = rep.side_lengths
        assert a * a + c * c == pytest.approx(b * b + d * d, rel=1e-12)

    def test_trapezoid_not_mdq(self):
        rep = classify(canonicalize([(0, 0), (0, 1), (1, 0.5), (1, 0)]))
        assert rep.trapezoid and not rep.mdq and not rep.parallelogram


class TestMdqTypeQst:
    def test_type1_iff_s_equals_t(self):
        assert mdq_type_qst(2.0, 2.0) == (True, False)

    def test_type2_iff_sum_two(self):
        assert mdq_type_qst(1.5, 0.5) == (False, True)

    def test_neither(self):
        assert mdq_type_qst(2.0, 3.0) == (False, False)

    def test_region_rejected(self):
        with pytest.raises(ParamOutOfRegion):
            mdq_type_qst(1.0, 2.0)
        with pytest.raises(ParamOutOfRegion):
            mdq_type_qst(0.3, 0.3)

    def test_matches_classify(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            s = rng.uniform(0.2, 3.0)
            t = rng.uniform(0.2, 3.0)
            if s + t <= 1.05 or abs(s - 1.0) < 0.02:
                continue
            quad = quadrilateral([(0, 0), (0, 1), (s, t), (1, 0)])
            rep = classify(quad)
            type1, type2 = mdq_type_qst(s, t)
            assert rep.mdq_type1 == type1
            assert rep.mdq_type2 == type2


class TestMdqTypeQstvw:
    def test_example(self):
        assert mdq_type_qstvw(8, 4, 6, 2) == (True, False)

    def test_direct_substitution(self):
        # (2,3,4,1): type1 needs 4*3 = 2*8, type2 needs (3-2)*4 = 0
        assert mdq_type_qstvw(2, 3, 4, 1) == (False, False)

    def test_region_rejected(self):
        with pytest.raises(ParamOutOfRegion):
            mdq_type_qstvw(2, 3, 2, 1)  # s = v

    def test_matches_classify_on_random_frames(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            s, t, v, w = random_type1_frame(rng)
            assert classify(frame_quad(s, t, v, w)).mdq_type1
            assert mdq_type_qstvw(s, t, v, w)[0]
        for _ in range(50):
            s, t, v, w = random_type2_frame(rng)
            assert classify(frame_quad(s, t, v, w)).mdq_type2
            assert mdq_type_qstvw(s, t, v, w)[1]


class TestFValues:
    def test_example(self):
        assert f_values(8, 4, 6, 2) == (10.0, 8.0, -2.0)

    def test_boundary(self):
        f1, f2, f3 = f_values(1, 1, 1, 0)
        assert (f1, f2, f3) == (1.0, 1.0, 0.0)

    def test_third_value(self):
        assert f_values(2, 2, 1, 0) == (3.0, 2.0, -1.0)


class TestClassificationImplications:
    """tangential&MDQ => kite => orthodiagonal; tangential&ortho => MDQ;
    MDQ&trapezoid => parallelogram."""

    def _check(self, rep):
        if rep.tangential and rep.mdq:
            assert rep.kite
        if rep.kite:
            assert rep.orthodiagonal
        if rep.tangential and rep.orthodiagonal:
            assert rep.mdq
        if rep.mdq and rep.trapezoid:
            assert rep.parallelogram

    def test_over_random_quads(self):
        rng = np.random.default_rng(42)
        tol = 1e-8
        for _ in range(60):
            self._check(classify(random_kite(rng), tol))
            self._check(classify(random_tangential_quad(rng), tol))
            self._check(classify(random_orthodiagonal_quad(rng), tol))
            self._check(classify(random_parallelogram(rng), tol))


class TestAffineInvariance:
    def test_mdq_type_preserved_under_label_correspondence(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            quad = random_mdq_quad(rng, type1=bool(rng.integers(2)))
            rep = classify(quad)
            m = random_affine(rng)
            pts = [m.apply(p) for p in quad.vertices]
            if m.det() < 0:
                pts = [pts[0], pts[3], pts[2], pts[1]]  # restore clockwise
            # the reversal keeps both diagonals as sets, so the type survives
            # reflections as well
            rep2 = classify(quadrilateral(pts))
            assert rep2.mdq_type1 == rep.mdq_type1
            assert rep2.mdq_type2 == rep.mdq_type2
