"""Tests for the brute-force oracles and their agreement with the analyzer."""

import pytest

from analysis import HoleAnalysis, SaturationAnalysis, holes_finite
from engine import Semigroup
from geometry import pointedness_certificate
from models import GeneratorMatrix, PointClass, SaturationTag
from oracle import census, integer_grading, oracle_min_sets, random_instance


@pytest.fixture
def numerical():
    return GeneratorMatrix.from_rows([[3, 5, 7]])


@pytest.fixture
def example22():
    return GeneratorMatrix.from_rows([[1, 1, 1, 1], [0, 1, 3, 4]])


@pytest.fixture
def example23():
    return GeneratorMatrix.from_rows([[1, 1, 1, 1], [0, 2, 3, 4]])


class TestCensus:
    """Tests for census."""

    def test_numerical_holes(self, numerical):
        """Test the holes of <3, 5, 7> in [0, 20]."""
        result = census(numerical, ((0, 20),))
        assert result.holes == [(1,), (2,), (4,)]
        assert result.points(PointClass.OUTSIDE_QSAT) == []
        assert result.tagged(SaturationTag.NONSAT) == [(0,), (3,)]

    def test_negative_range_is_outside(self, numerical):
        """Test that points left of the cone are outside Q_sat."""
        result = census(numerical, ((-2, 3),))
        assert result.points(PointClass.OUTSIDE_QSAT) == [(-2,), (-1,)]
        assert result.contains((3,))
        assert not result.contains((4,))

    def test_two_dimensional(self, example22):
        """Test the single hole (1,2)."""
        assert census(example22, ((0, 3), (0, 12))).holes == [(1, 2)]

    def test_lattice_gaps(self):
        """Test that points off the lattice are outside Q_sat, not holes."""
        result = census(GeneratorMatrix.from_rows([[2, 4]]), ((0, 6),))
        assert result.holes == []
        assert result.points(PointClass.IN_Q) == [(0,), (2,), (4,), (6,)]

    def test_identity_saturated(self):
        """Test that the orthant has no holes."""
        result = census(GeneratorMatrix.from_rows([[1, 0], [0, 1]]), ((0, 4), (0, 4)))
        assert result.holes == []
        assert result.tagged(SaturationTag.NONSAT) == []

    def test_block_embedding_holes(self):
        """Test that (1,2,c) is a hole of diag((1 1 1 1; 0 1 3 4), (1)) for c = 0..5."""
        matrix = GeneratorMatrix.from_rows([[1, 1, 1, 1, 0], [0, 1, 3, 4, 0], [0, 0, 0, 0, 1]])
        assert not holes_finite(matrix).is_finite
        result = census(matrix, ((0, 2), (0, 8), (0, 5)))
        assert all(result.classification[(1, 2, c)] is PointClass.HOLE for c in range(6))
        assert result.classification[(2, 4, 0)] is PointClass.IN_Q

    def test_box_errors(self, numerical):
        """Test malformed boxes."""
        with pytest.raises(ValueError, match="2 ranges"):
            census(numerical, ((0, 1), (0, 1)))
        with pytest.raises(ValueError, match="lo <= hi"):
            census(numerical, ((3, 1),))

    def test_not_pointed(self):
        """Test that an unpointed cone has no census."""
        with pytest.raises(ValueError, match="pointed"):
            census(GeneratorMatrix.from_columns([(1,), (-1,)]), ((0, 3),))


class TestOracleMinSets:
    """Tests for oracle_min_sets."""

    def test_numerical(self, numerical):
        """Test the three sets of <3, 5, 7>."""
        sets = oracle_min_sets(numerical, ((0, 30),))
        assert sets.min_ss == [(5,), (6,), (7,), (8,), (9,)]
        assert sets.min_sq == [(5,), (6,), (7,)]
        assert sets.min_sqsat == [(5,)]

    def test_two_dimensional(self, example22):
        """Test that the four non-hole columns are the minimal saturation points."""
        sets = oracle_min_sets(example22, ((0, 4), (0, 16)))
        assert sets.min_ss == [(1, 0), (1, 1), (1, 3), (1, 4)]

    def test_infinite_example(self, example23):
        """Test min(S;Q) on the part of the box where tags are exact."""
        sets = oracle_min_sets(example23, ((0, 4), (0, 16)))
        low = [p for p in sets.min_sq if p[0] <= 3]
        assert low == [(1, 2), (1, 3), (1, 4)]

    def test_requires_origin(self, numerical):
        """Test that the box must reach down to 0."""
        with pytest.raises(ValueError, match="origin"):
            oracle_min_sets(numerical, ((1, 10),))

    def test_requires_nonnegative_matrix(self):
        """Test that matrices with negative entries are refused."""
        with pytest.raises(ValueError, match="nonnegative"):
            oracle_min_sets(GeneratorMatrix.from_columns([(1, -1), (1, 2)]), ((0, 3), (0, 3)))


class TestRandomInstance:
    """Tests for random_instance."""

    def test_deterministic(self):
        """Test that a seed always gives the same matrix."""
        assert random_instance(1) == random_instance(1)

    def test_limits(self):
        """Test shape and entry limits and pointedness over 100 seeds."""
        for seed in range(100):
            matrix = random_instance(seed)
            assert 1 <= matrix.d <= 3
            assert 1 <= matrix.n <= 5
            assert all(0 <= v <= 4 for row in matrix.entries for v in row)
            assert pointedness_certificate(matrix)
            assert integer_grading(matrix) is not None

    def test_rejects_bad_limits(self):
        """Test nonpositive limits."""
        with pytest.raises(ValueError, match="positive"):
            random_instance(0, max_dim=0)


def _box_for(analysis: SaturationAnalysis) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    """A box holding H, S̄ and min(S;S), widened so every point of that region has exact tags."""
    sg = analysis.semigroup
    d = sg.matrix.d
    holes = sg.lift_all(analysis.holes.holes)
    region = list(holes) + list(sg.lift_all(analysis.non_saturation)) + list(sg.lift_all(analysis.min_ss))
    region += sg.matrix.columns
    reach = tuple(max(p[k] for p in region) for k in range(d))
    widen = tuple(max((h[k] for h in holes), default=0) for k in range(d))
    return tuple((0, reach[k] + widen[k]) for k in range(d)), reach


@pytest.mark.parametrize("seed", range(100))
def test_analyzer_agrees_with_oracle(seed):
    """Test holes, non-saturation points and min(S;S) against the brute-force census."""
    matrix = random_instance(seed)
    analysis = SaturationAnalysis(HoleAnalysis(Semigroup(matrix)))
    sg = analysis.semigroup
    if not analysis.holes.finiteness.is_finite:
        fundamental = sg.lift_all(analysis.holes.fundamental)
        witness = analysis.holes.finiteness.witness
        column = matrix.column(witness.column)
        ray = [tuple(y + lam * a for y, a in zip(witness.source, column)) for lam in range(4)]
        region = fundamental + tuple(matrix.columns) + tuple(ray)
        box = tuple((0, max(p[k] for p in region)) for k in range(matrix.d))
        result = census(matrix, box)
        assert set(fundamental) <= set(result.holes)
        # the witness never reaches Q along its column, out to the edge of the box
        assert all(result.classification[p] is PointClass.HOLE for p in ray)
        return

    box, reach = _box_for(analysis)
    result = census(matrix, box)
    assert result.holes == sorted(sg.lift_all(analysis.holes.holes))
    assert result.tagged(SaturationTag.NONSAT) == sorted(sg.lift_all(analysis.non_saturation))

    def in_reach(p):
        return all(v <= r for v, r in zip(p, reach))

    sets = oracle_min_sets(matrix, box, result)
    if analysis.saturated:
        assert sets.min_ss == [(0,) * matrix.d]
        return
    assert [p for p in sets.min_ss if in_reach(p)] == sorted(sg.lift_all(analysis.min_ss))
    assert [p for p in sets.min_sq if in_reach(p)] == sorted(sg.lift_all(analysis.min_sq[0]))
    assert [p for p in sets.min_sqsat if in_reach(p)] == sorted(sg.lift_all(analysis.min_sqsat[0]))
