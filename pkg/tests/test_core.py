import math
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ipsets.constructions import regular_simplex
from ipsets.core import (
    SquaredDistanceMatrix,
    cayley_menger_det,
    certify,
    circumradius_squared,
    embedding_dimension,
    integer_sqrt,
    is_perfect_square,
    realize_coordinates,
    scale,
)
from ipsets.errors import NoCommonSphere, NotRealizable
from ipsets.fixtures import load


def sdm_of(rows):
    return SquaredDistanceMatrix(tuple(map(tuple, rows)))


def triangle(a2, b2, c2):
    return sdm_of([[0, a2, b2], [a2, 0, c2], [b2, c2, 0]])


def from_points(points):
    n = len(points)
    return SquaredDistanceMatrix.from_function(
        n, lambda i, j: sum((x - y) ** 2 for x, y in zip(points[i], points[j]))
    )


def heron16(a, b, c):
    """16 * area², computed from side lengths."""
    return 2 * a*a*b*b + 2 * b*b*c*c + 2 * c*c*a*a - a**4 - b**4 - c**4


@pytest.mark.parametrize("x, root, exact", [(0, 0, True), (289, 17, True), (274, 16, False)])
def test_integer_sqrt(x, root, exact):
    assert integer_sqrt(x) == (root, exact)


def test_integer_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        integer_sqrt(-1)


@pytest.mark.parametrize("x, expected", [(169, True), (2, False), (960, False), (-4, False), (0, True)])
def test_is_perfect_square(x, expected):
    assert is_perfect_square(x) is expected


class TestMatrixValidation:
    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            sdm_of([[0, 1], [1, 1]])

    def test_rejects_asymmetry(self):
        with pytest.raises(ValueError):
            sdm_of([[0, 1], [2, 0]])

    def test_rejects_duplicate_points(self):
        with pytest.raises(ValueError):
            sdm_of([[0, 0], [0, 0]])

    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            sdm_of([[0, 1], [1]])


class TestCayleyMenger:
    def test_345_triangle(self):
        assert abs(cayley_menger_det(triangle(9, 16, 25), [0, 1, 2])) == 576

    def test_segment(self):
        d2 = 49
        assert abs(cayley_menger_det(sdm_of([[0, d2], [d2, 0]]), [0, 1])) == 2 * d2

    def test_degenerate_triple(self):
        assert cayley_menger_det(triangle(1, 9, 4), [0, 1, 2]) == 0

    def test_sign_convention(self):
        # (-1)^(k+1) det > 0 for k+1 affinely independent points
        for k in range(1, 7):
            det = cayley_menger_det(regular_simplex(k + 1, 2))
            assert (-1) ** (k + 1) * det > 0

    def test_bad_indices(self):
        tri = triangle(9, 16, 25)
        with pytest.raises(IndexError):
            cayley_menger_det(tri, [0, 3])
        with pytest.raises(ValueError):
            cayley_menger_det(tri, [0, 0])

    def test_heron_agreement_all_triangles_to_30(self):
        count = 0
        for a in range(1, 31):
            for b in range(a, 31):
                for c in range(b, min(a + b, 31)):
                    got = cayley_menger_det(triangle(a * a, b * b, c * c), [0, 1, 2])
                    assert abs(got) == heron16(a, b, c)
                    count += 1
        assert count > 2000


class TestEmbeddingDimension:
    def test_regular_tetrahedron(self):
        assert embedding_dimension(regular_simplex(4, 1)) == 3

    def test_collinear(self):
        assert embedding_dimension(triangle(1, 4, 1)) == 1

    def test_triangle_inequality_violated(self):
        with pytest.raises(NotRealizable):
            embedding_dimension(triangle(1, 9, 1))

    def test_single_point(self):
        assert embedding_dimension(sdm_of([[0]])) == 0

    def test_indefinite_zero_diagonal_block(self):
        # Four points: the Gram pivot leaves a zero-diagonal block with
        # nonzero off-diagonal, i.e. an indefinite remainder.
        square_bad = sdm_of([[0, 1, 1, 1], [1, 0, 4, 4], [1, 4, 0, 4], [1, 4, 4, 0]])
        with pytest.raises(NotRealizable):
            embedding_dimension(square_bad)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda d: st.lists(st.tuples(*[st.integers(-6, 6)] * d), min_size=2, max_size=7, unique=True)
    ))
    def test_matches_exact_rank_of_coordinates(self, points):
        sdm = from_points(points)
        diffs = sympy.Matrix([[x - y for x, y in zip(p, points[0])] for p in points])
        assert embedding_dimension(sdm) == diffs.rank()

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 7), st.integers(1, 5))
    def test_simplex_dimension(self, k, e):
        assert embedding_dimension(regular_simplex(k, e)) == k - 1


class TestCertify:
    def test_hexagon(self):
        cert = certify(load("hexagon_3_5").sdm)
        assert (cert.dim, cert.integral, cert.diameter) == (2, True, 8)

    def test_unit_segment(self):
        cert = certify(sdm_of([[0, 1], [1, 0]]))
        assert (cert.dim, cert.integral, cert.diameter, cert.diameter_squared) == (1, True, 1, 1)

    def test_solid(self):
        cert = certify(load("solid_8_13").sdm)
        assert (cert.dim, cert.integral, cert.diameter) == (3, True, 13)

    def test_non_integral(self):
        cert = certify(triangle(1, 1, 2))
        assert not cert.integral and cert.diameter is None and cert.diameter_squared == 2

    def test_expected_dim_mismatch_flagged(self):
        cert = certify(load("hexagon_3_5").sdm, expected_dim=3)
        assert cert.dim_matches is False and not cert.ok
        assert certify(load("hexagon_3_5").sdm, expected_dim=2).ok

    def test_propagates_not_realizable(self):
        with pytest.raises(NotRealizable):
            certify(triangle(1, 9, 1))

    @pytest.mark.parametrize("name", ["hexagon_3_5", "trapezoid_4_3_2", "two_line_13", "solid_8_13"])
    @pytest.mark.parametrize("k", [1, 2, 7])
    def test_scale_invariance(self, name, k):
        sdm = load(name).sdm
        a, b = certify(sdm), certify(scale(sdm, k))
        assert b.dim == a.dim and b.integral == a.integral
        assert b.diameter_squared == a.diameter_squared * k * k

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(["hexagon_3_5", "two_line_13", "solid_8_13", "line_apex_960"]), st.randoms())
    def test_permutation_invariance(self, name, rnd):
        sdm = load(name).sdm
        perm = list(range(sdm.n))
        rnd.shuffle(perm)
        assert certify(sdm.permuted(perm)) == certify(sdm)


class TestCircumradius:
    def test_isoceles_442(self):
        # R = abc / (4K), K = sqrt(15) by Heron
        a, b, c = 4, 4, 2
        oracle = Fraction(a * a * b * b * c * c, heron16(a, b, c))
        assert oracle == Fraction(64, 15)
        assert circumradius_squared(triangle(16, 16, 4)) == oracle

    def test_scaled_trapezoid(self):
        assert circumradius_squared(load("trapezoid_x15").sdm) == 960

    def test_unscaled_trapezoid(self):
        assert circumradius_squared(load("trapezoid_4_3_2").sdm) == Fraction(64, 15)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_regular_simplex(self, k):
        e = 3
        assert circumradius_squared(regular_simplex(k + 1, e)) == Fraction(e * e * k, 2 * (k + 1))

    def test_segment(self):
        assert circumradius_squared(sdm_of([[0, 9], [9, 0]])) == Fraction(9, 4)

    def test_no_common_sphere(self):
        # A 4-point set with three points collinear has no circumcircle.
        with pytest.raises(NoCommonSphere):
            circumradius_squared(from_points([(0, 0), (1, 0), (2, 0), (0, 1)]))
        # (1, 1) is inside the circumcircle of the 3-4-5 right triangle.
        with pytest.raises(NoCommonSphere):
            circumradius_squared(from_points([(0, 0), (4, 0), (0, 3), (1, 1)]))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 40))
    def test_triangles_against_abc_over_4k(self, a, b, c):
        a, b, c = sorted((a, b, c))
        if a + b <= c:
            return
        assert circumradius_squared(triangle(a * a, b * b, c * c)) == Fraction(
            a * a * b * b * c * c, heron16(a, b, c)
        )

    def test_cospherical_integer_points(self):
        # Points on the circle x² + y² = 25.
        pts = [(5, 0), (3, 4), (-4, 3), (0, -5), (-3, -4)]
        assert circumradius_squared(from_points(pts)) == 25


class TestRealize:
    def test_segment(self):
        real = realize_coordinates(sdm_of([[0, 4], [4, 0]]))
        (a,), (b,) = real.coordinates
        assert abs(abs(a - b) - 2.0) <= 1e-9 and real.residual <= 1e-9

    @pytest.mark.parametrize("name, dim", [("hexagon_3_5", 2), ("solid_8_13", 3), ("line_apex_960", 2),
                                           ("trapezoid_x15", 2)])
    def test_fixtures(self, name, dim):
        sdm = load(name).sdm
        real = realize_coordinates(sdm)
        assert len(real.coordinates) == sdm.n
        assert all(len(p) == dim for p in real.coordinates)
        assert real.residual <= 1e-9
        for i, j in permutations(range(sdm.n), 2):
            got = math.dist(real.coordinates[i], real.coordinates[j]) ** 2
            assert abs(got - sdm[i, j]) <= 1e-9 * max(1, sdm[i, j]) + real.residual

    def test_not_realizable(self):
        with pytest.raises(NotRealizable):
            realize_coordinates(triangle(1, 9, 1))
