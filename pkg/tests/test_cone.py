"""Unit tests for cone geometry."""

import pytest

from contingency import table_matrix
from exceptions import NotPointed
from geometry import (
    RationalCone,
    cone_inequality_rep,
    cone_membership,
    cone_profile,
    dual_extreme_rays,
    extreme_ray_columns,
    pointedness_certificate,
    primitive_vector,
    qsat_membership,
)
from geometry.double_description import independent_rows
from models import GeneratorMatrix, MarginalModel


@pytest.fixture
def example22():
    return GeneratorMatrix.from_rows([[1, 1, 1, 1], [0, 1, 3, 4]])


@pytest.fixture
def numerical():
    return GeneratorMatrix.from_rows([[3, 5, 7]])


class TestDoubleDescription:
    """Tests for the dual extreme-ray computation."""

    def test_primitive_vector(self):
        """Test division by the content."""
        assert primitive_vector([4, -6, 8]) == (2, -3, 4)
        assert primitive_vector([0, 0]) == (0, 0)

    def test_independent_rows(self):
        """Test that the earliest independent rows are kept."""
        assert independent_rows([[1, 0], [2, 0], [0, 1], [1, 1]]) == [0, 2]
        assert independent_rows([]) == []

    def test_two_dimensional_cone(self):
        """Test facet normals of the cone spanned by (1,0) and (1,4)."""
        rays = dual_extreme_rays([(1, 0), (1, 1), (1, 3), (1, 4)], 2)
        assert rays == [(0, 1), (4, -1)]

    def test_square_pyramid(self):
        """Test a cone over a square, where a plain simplicial guess is wrong."""
        generators = [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)]
        rays = dual_extreme_rays(generators, 3)
        assert set(rays) == {(0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1)}
        for ray in rays:
            assert all(sum(a * b for a, b in zip(ray, g)) >= 0 for g in generators)

    def test_rejects_degenerate_span(self):
        """Test generators that do not span the requested dimension."""
        with pytest.raises(ValueError, match="dimension 1"):
            dual_extreme_rays([(1, 2), (2, 4)], 2)


class TestPointedness:
    """Tests for pointedness_certificate."""

    def test_first_row_all_ones(self, example22):
        """Test that the grading (1, 0) is found."""
        assert pointedness_certificate(example22) == (1, 0)

    def test_positive_scalars(self, numerical):
        """Test a numerical semigroup."""
        assert pointedness_certificate(numerical) == (1,)

    def test_opposite_rays(self):
        """Test that opposite columns are rejected."""
        with pytest.raises(NotPointed):
            pointedness_certificate(GeneratorMatrix.from_columns([(1, 0), (-1, 0)]))

    def test_certificate_is_positive(self):
        """Test c·a_i >= 1 on a matrix with mixed signs."""
        matrix = GeneratorMatrix.from_columns([(1, -2), (1, 3), (2, 1)])
        c = pointedness_certificate(matrix)
        assert all(sum(x * y for x, y in zip(c, col)) >= 1 for col in matrix.columns)


class TestExtremeColumns:
    """Tests for extreme_ray_columns."""

    def test_two_dimensional(self, example22):
        """Test that only the boundary columns are extreme."""
        assert extreme_ray_columns(example22) == (0, 3)

    def test_single_ray_keeps_smallest(self, numerical):
        """Test that collinear columns report the smallest one."""
        assert extreme_ray_columns(numerical) == (0,)

    def test_duplicate_direction(self):
        """Test that (1,0) represents the ray also spanned by (2,0)."""
        matrix = GeneratorMatrix.from_columns([(2, 0), (1, 0), (0, 1)])
        assert extreme_ray_columns(matrix) == (1, 2)

    def test_k4_all_columns_extreme(self):
        """Test that every column of the no-three-way model is extreme."""
        matrix = table_matrix(MarginalModel.parse("2x2x2x2", "12,13,14,23,24,34"))
        assert extreme_ray_columns(matrix, threads=4) == tuple(range(16))

    def test_non_extreme_columns_are_combinations(self, example22):
        """Test that every non-extreme column lies in the cone of the extreme ones."""
        extreme = extreme_ray_columns(example22)
        rays = GeneratorMatrix.from_columns([example22.column(i) for i in extreme])
        for i in range(example22.n):
            if i not in extreme:
                assert cone_membership(rays, example22.column(i))


class TestMembership:
    """Tests for cone_membership and qsat_membership."""

    @pytest.mark.parametrize("x,expected", [((1, 2), True), ((1, 5), False), ((-1, 0), False), ((0, 0), True)])
    def test_cone_membership(self, example22, x, expected):
        """Test points inside and outside the 2-D cone."""
        assert cone_membership(example22, x) is expected

    def test_cone_membership_dimension_check(self, example22):
        """Test that a point of the wrong length is refused."""
        with pytest.raises(ValueError, match="3 coordinates"):
            cone_membership(example22, (1, 2, 3))

    def test_hole_is_in_qsat(self, numerical):
        """Test that 4 lies in the saturation of <3, 5, 7>."""
        assert qsat_membership(numerical, (4,))

    def test_lattice_excludes(self):
        """Test that 3 is not in the lattice 2Z."""
        assert not qsat_membership(GeneratorMatrix.from_rows([[2, 4]]), (3,))

    def test_apex(self, example22, numerical):
        """Test that 0 is always in Q_sat."""
        assert qsat_membership(example22, (0, 0))
        assert qsat_membership(numerical, (0,))

    def test_closed_under_addition(self, example22):
        """Test sampled sums of Q_sat points."""
        points = [(1, 2), (2, 5), (3, 0), (1, 4)]
        for a in points:
            for b in points:
                assert qsat_membership(example22, tuple(x + y for x, y in zip(a, b)))


class TestInequalityRep:
    """Tests for cone_inequality_rep and profiles."""

    def test_two_dimensional(self, example22):
        """Test the dual of rays (1,0) and (1,4)."""
        assert cone_inequality_rep(example22) == ((0, 1), (4, -1))

    def test_identity(self):
        """Test that the orthant is cut out by the coordinate functionals."""
        assert cone_inequality_rep(GeneratorMatrix.from_rows([[1, 0], [0, 1]])) == ((0, 1), (1, 0))

    def test_one_dimensional(self, numerical):
        """Test a ray on the 1-D span."""
        assert cone_inequality_rep(numerical) == ((1,),)

    def test_agrees_with_lp_membership(self, example22):
        """Test that B·x >= 0 matches the LP answer on a grid."""
        rows = cone_inequality_rep(example22)
        for x in range(-2, 4):
            for y in range(-2, 14):
                by_rows = all(a * x + b * y >= 0 for a, b in rows)
                assert by_rows == cone_membership(example22, (x, y))

    @pytest.mark.parametrize(
        "rows",
        [[[1, 1, 1, 1], [0, 1, 3, 4]], [[3, 5, 7]], [[1, 0], [0, 1], [1, 1]], [[2, 2, 2], [0, 2, 4]]],
    )
    def test_profile_certifies_matrix(self, rows):
        """Test that every profile passes its own consistency check."""
        matrix = GeneratorMatrix.from_rows(rows)
        profile = cone_profile(matrix)
        profile.check_against(matrix)

    def test_rational_cone_view(self):
        """Test normalized coordinates for a scaled lattice."""
        cone = RationalCone(GeneratorMatrix.from_rows([[2, 2, 2], [0, 2, 4]]))
        assert cone.dim == 2
        for z, col in zip(cone.generators, cone.matrix.columns):
            assert cone.lift(z) == col
            assert cone.contains(z)
        assert cone.normalize((1, 1)) is None
        assert cone.degree(cone.zero) == 0
