import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zhangforge import (
    Direction,
    Polytope,
    axis_direction,
    difference_body,
    intersect,
    make_polytope,
    max_section_anchor,
    minkowski_sum,
    project_drop_last,
    projection_volume,
    slice_at_height,
    transform,
    translate,
    vertical_section,
    volume,
)
from zhangforge.errors import DegenerateBody, DimensionMismatch
from zhangforge.polytope import polytope_from_json, polytope_to_json

F = Fraction


class TestConstruction:
    def test_triangle(self, triangle):
        assert triangle.affine_dim == 2
        assert len(triangle.halfspaces) == 3
        assert len(triangle.vertices) == 3

    def test_collinear_points_make_segment(self):
        seg = make_polytope([(0, 0), (1, 0), (2, 0)], 2)
        assert seg.affine_dim == 1
        assert seg.vertices == ((F(0), F(0)), (F(2), F(0)))

    def test_3simplex_facets(self, simplex3):
        assert len(simplex3.halfspaces) == 4
        assert simplex3.affine_dim == 3

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            make_polytope([(0, 0), (1, 0, 0)], 2)

    def test_interior_points_are_not_vertices(self):
        P = make_polytope([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)], 2)
        assert len(P.vertices) == 4

    def test_halfspace_roundtrip(self, unit_square):
        Q = Polytope.from_halfspaces(unit_square.halfspaces, 2)
        assert Q == unit_square

    def test_redundant_halfspaces_pruned(self, unit_square):
        rows = list(unit_square.halfspaces) + [((F(1), F(0)), F(5))]
        Q = Polytope.from_halfspaces(rows, 2)
        assert Q == unit_square
        assert len(Q.halfspaces) == 4


class TestVolume:
    def test_square(self, unit_square):
        assert volume(unit_square).exact == 1

    def test_triangle(self, triangle):
        assert volume(triangle).exact == F(1, 2)

    def test_difference_body_triangle(self, triangle):
        # shoelace on the hexagon conv{+-(1,0), +-(0,1), +-(1,-1)}
        D = difference_body(triangle)
        assert len(D.vertices) == 6
        assert volume(D).exact == 3

    @pytest.mark.parametrize("n", [2, 3])
    def test_rogers_shephard_equality_for_simplices(self, n):
        pts = [tuple(F(0) for _ in range(n))]
        pts += [tuple(F(int(i == j)) for j in range(n)) for i in range(n)]
        T = make_polytope(pts, n)
        ratio = volume(difference_body(T)).exact / volume(T).exact
        assert ratio == math.comb(2 * n, n)

    def test_monte_carlo_oracle(self, triangle, simplex3):
        rng = np.random.default_rng(123)
        for P in (triangle, simplex3):
            box = P.bounding_box()
            lo = np.array([float(a) for a, _ in box])
            hi = np.array([float(b) for _, b in box])
            pts = rng.uniform(lo, hi, size=(100_000, P.dim))
            A = np.array([[float(x) for x in a] for a, _ in P.halfspaces])
            b = np.array([float(bb) for _, bb in P.halfspaces])
            inside = np.all(pts @ A.T <= b + 1e-12, axis=1)
            boxvol = float(np.prod(hi - lo))
            est = boxvol * inside.mean()
            sigma = boxvol * inside.std() / math.sqrt(len(pts))
            assert abs(est - float(volume(P).exact)) < 3 * sigma


class TestIntersection:
    def test_half_overlap(self, unit_square):
        Q = intersect(unit_square, translate(unit_square, (F(1, 2), 0)))
        assert volume(Q).exact == F(1, 2)

    def test_touching_gives_degenerate(self, unit_square):
        Q = intersect(unit_square, translate(unit_square, (1, 0)))
        assert Q.affine_dim == 1
        assert volume(Q).exact == 0

    def test_disjoint_gives_none(self, unit_square):
        assert intersect(unit_square, translate(unit_square, (3, 0))) is None

    def test_slab(self, big_square):
        Q = intersect(big_square, translate(big_square, (1, 0)))
        assert volume(Q).exact == 2

    def test_covariogram_monotone_along_ray(self, triangle, big_square):
        for P in (triangle, big_square):
            vols = []
            for k in range(8):
                r = F(k, 5)
                Q = intersect(P, translate(P, (r, F(r, 3))))
                vols.append(volume(Q).exact if Q is not None else F(0))
            assert all(a >= b for a, b in zip(vols, vols[1:]))


class TestMinkowskiAndProjections:
    def test_square_doubling(self, unit_square):
        S = minkowski_sum(unit_square, unit_square)
        assert volume(S).exact == 4

    def test_point_translation_identity(self, triangle):
        pt = make_polytope([(3, 5)], 2)
        assert minkowski_sum(triangle, pt) == translate(triangle, (3, 5))

    def test_projection_examples(self, triangle, unit_square, simplex3):
        assert project_drop_last(unit_square).vertices == ((F(0),), (F(1),))
        assert project_drop_last(triangle).vertices == ((F(0),), (F(1),))
        assert project_drop_last(simplex3) == make_polytope([(0, 0), (1, 0), (0, 1)], 2)

    def test_projection_commutes_with_minkowski(self, triangle, unit_square, simplex3):
        pairs = [(triangle, unit_square), (simplex3, simplex3)]
        for P, Q in pairs:
            left = project_drop_last(minkowski_sum(P, Q))
            right = minkowski_sum(project_drop_last(P), project_drop_last(Q))
            assert left == right


class TestSectionsAndSlices:
    def test_triangle_section(self, triangle):
        seg = vertical_section(triangle, (F(1, 2),))
        assert (seg.lo, seg.hi) == (0, F(1, 2))
        assert seg.length == F(1, 2)

    def test_empty_section(self, unit_square):
        assert vertical_section(unit_square, (2,)) is None

    def test_sym_square_section(self, sym_square):
        seg = vertical_section(sym_square, (0,))
        assert (seg.lo, seg.hi) == (-1, 1)

    def test_slices(self, unit_square, sym_square):
        sl = slice_at_height(sym_square, 1)
        assert sl.vertices == ((F(-1),), (F(1),))
        assert slice_at_height(unit_square, 3) is None

    def test_section_matches_symmetral_slice_membership(self, triangle):
        from zhangforge.steiner import steiner_symmetrize

        S = steiner_symmetrize(triangle)
        for k in range(1, 100):
            y = F(k, 100)
            seg = vertical_section(triangle, (y,))
            half = seg.length / 2
            for t in (half / 2, -half / 2):
                sl = slice_at_height(S, t)
                assert sl is not None and sl.contains((y,)) == (abs(t) <= half)


class TestProjectionVolume:
    def test_axis(self, unit_square, triangle):
        e2 = axis_direction(2)
        assert projection_volume(unit_square, e2).exact == 1
        assert projection_volume(triangle, e2).exact == 1

    def test_diagonal_shadow(self, unit_square):
        pv = projection_volume(unit_square, Direction((1, 1)))
        assert pv.exact is None
        assert abs(pv.value - math.sqrt(2)) < 1e-12

    def test_degenerate_raises(self):
        seg = make_polytope([(0, 0), (1, 0)], 2)
        with pytest.raises(DegenerateBody):
            projection_volume(seg, axis_direction(2))


class TestTransform:
    def test_scaling(self, unit_square):
        assert volume(transform(unit_square, [[2, 0], [0, 2]], [0, 0])).exact == 4

    def test_shear_preserves_volume(self, unit_square):
        assert volume(transform(unit_square, [[1, 1], [0, 1]], [0, 0])).exact == 1

    def test_negation(self, triangle):
        N = transform(triangle, [[-1, 0], [0, -1]], [0, 0])
        assert set(N.vertices) == {(F(0), F(0)), (F(-1), F(0)), (F(0), F(-1))}


class TestAnchor:
    def test_examples(self, unit_square, triangle):
        assert max_section_anchor(unit_square) == (F(0),)
        assert max_section_anchor(triangle) == (F(0),)
        assert max_section_anchor(translate(unit_square, (3, 0))) == (F(3),)


class TestSerialization:
    def test_roundtrip(self, triangle, simplex3):
        for P in (triangle, simplex3):
            doc = polytope_to_json(P)
            assert set(doc) == {"dim", "vertices", "halfspaces"}
            Q = polytope_from_json(doc)
            assert Q == P and Q.halfspaces == P.halfspaces


coord = st.integers(-4, 4).map(lambda n: F(n, 2))
point2 = st.tuples(coord, coord)


@settings(max_examples=30, deadline=None)
@given(st.lists(point2, min_size=3, max_size=8))
def test_hull_contains_all_points(pts):
    P = make_polytope(pts, 2)
    for x in pts:
        assert P.contains(x)


@settings(max_examples=30, deadline=None)
@given(st.lists(point2, min_size=3, max_size=7), st.integers(1, 3), st.integers(-2, 2))
def test_volume_scales_with_determinant(pts, s, t):
    P = make_polytope(pts, 2)
    A = [[F(s), F(t)], [F(0), F(1)]]
    Q = transform(P, A, [F(1, 3), F(-2, 5)])
    assert volume(Q).exact == abs(F(s)) * volume(P).exact


@settings(max_examples=20, deadline=None)
@given(st.lists(point2, min_size=3, max_size=6), st.lists(point2, min_size=3, max_size=6))
def test_projection_minkowski_commute_random(p1, p2):
    P, Q = make_polytope(p1, 2), make_polytope(p2, 2)
    assert project_drop_last(minkowski_sum(P, Q)) == minkowski_sum(
        project_drop_last(P), project_drop_last(Q)
    )


class TestDimensionFour:
    def test_hypercube(self):
        pts = [tuple(F((i >> k) & 1) for k in range(4)) for i in range(16)]
        C = make_polytope(pts, 4)
        assert volume(C).exact == 1
        assert len(C.halfspaces) == 8
        assert project_drop_last(C) == make_polytope(
            [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)], 3
        )

    def test_cross_polytope(self):
        pts = []
        for i in range(4):
            for s in (1, -1):
                pts.append(tuple(F(s if j == i else 0) for j in range(4)))
        X = make_polytope(pts, 4)
        assert volume(X).exact == F(2, 3)  # 2^4 / 4!
        assert len(X.halfspaces) == 16
        cube4 = make_polytope(
            [tuple(F((i >> k) & 1) for k in range(4)) for i in range(16)], 4
        )
        assert projection_volume(cube4, axis_direction(4)).exact == 1


class TestDegenerateHalfspacePaths:
    def test_point_from_halfspaces(self):
        rows = []
        for i in range(2):
            e = [F(0), F(0)]
            e[i] = F(1)
            rows.append((tuple(e), F(3)))
            rows.append((tuple(-x for x in e), F(-3)))
        P = Polytope.from_halfspaces(rows, 2)
        assert P.affine_dim == 0 and P.vertices == ((F(3), F(3)),)

    def test_segment_from_halfspaces(self):
        rows = [
            ((F(0), F(1)), F(0)), ((F(0), F(-1)), F(0)),  # y = 0
            ((F(1), F(0)), F(2)), ((F(-1), F(0)), F(1)),  # -1 <= x <= 2
        ]
        P = Polytope.from_halfspaces(rows, 2)
        assert P.affine_dim == 1
        assert P.vertices == ((F(-1), F(0)), (F(2), F(0)))

    def test_infeasible_from_halfspaces(self):
        rows = [((F(1),), F(0)), ((F(-1),), F(-1))]
        assert Polytope.from_halfspaces(rows, 1) is None


def test_scipy_hull_cross_check():
    rng = np.random.default_rng(2024)
    from scipy.spatial import ConvexHull

    for dim in (2, 3):
        for trial in range(4):
            raw = rng.integers(-8, 9, size=(9, dim))
            pts = [tuple(F(int(v), 2) for v in row) for row in raw]
            P = make_polytope(pts, dim)
            if P.affine_dim < dim:
                continue
            hull = ConvexHull(np.array(raw, dtype=float) / 2.0)
            assert abs(float(volume(P).exact) - hull.volume) < 1e-9
            assert len(P.vertices) == len(hull.vertices)
