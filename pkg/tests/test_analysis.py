"""Tests for hole analysis, saturation points, Frobenius numbers and the staged pipeline."""

import pytest

from analysis import (
    HoleAnalysis,
    SaturationAnalysis,
    analyze,
    classify_point,
    enumerate_holes,
    finiteness_equivalences,
    frobenius_matrix,
    frobenius_number,
    fundamental_holes,
    holes_finite,
    is_fundamental_hole,
    is_saturation_point,
    min_sat_Q,
    min_sat_Qsat,
    min_sat_S,
    non_saturation_points,
)
from contingency import embed_block, table_matrix
from engine import Semigroup
from exceptions import ConsistencyError, GcdNotOne, InfiniteHoles, NotInSemigroup
from models import (
    INFINITY,
    SATURATED_NOTE,
    AnalysisSettings,
    CertificateKind,
    Completeness,
    Finiteness,
    GeneratorMatrix,
    MarginalModel,
    PointClass,
    SaturationTag,
    Stage,
    close_stages,
)
from oracle import census

B17_FOUR_MARGINS = (1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0)
B18_FOUR_MARGINS = (1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1)


@pytest.fixture
def numerical():
    return GeneratorMatrix.from_rows([[3, 5, 7]])


@pytest.fixture
def example22():
    return GeneratorMatrix.from_rows([[1, 1, 1, 1], [0, 1, 3, 4]])


@pytest.fixture
def example23():
    return GeneratorMatrix.from_rows([[1, 1, 1, 1], [0, 2, 3, 4]])


@pytest.fixture
def identity():
    return GeneratorMatrix.from_rows([[1, 0], [0, 1]])


@pytest.fixture
def k4():
    return table_matrix(MarginalModel.parse("2x2x2x2", "12,13,14,23,24,34"))


def _saturation(matrix: GeneratorMatrix, **settings) -> SaturationAnalysis:
    return SaturationAnalysis(HoleAnalysis(Semigroup(matrix, AnalysisSettings(**settings))))


class TestFundamentalHoles:
    """Tests for fundamental holes."""

    def test_numerical(self, numerical):
        """Test H₀ = {1, 2} for <3, 5, 7>."""
        assert fundamental_holes(numerical) == ((1,), (2,))

    @pytest.mark.parametrize("x,expected", [((1,), True), ((2,), True), ((4,), False), ((3,), False), ((-1,), False)])
    def test_is_fundamental(self, numerical, x, expected):
        """Test that 4 = 1 + 3 is a hole but not fundamental."""
        assert is_fundamental_hole(numerical, x) is expected

    def test_two_dimensional(self, example22, example23):
        """Test the single fundamental hole of each 2-D example."""
        assert fundamental_holes(example22) == ((1, 2),)
        assert fundamental_holes(example23) == ((1, 1),)

    def test_saturated(self, identity):
        """Test that the orthant has no fundamental holes."""
        assert fundamental_holes(identity) == ()

    def test_dimension_check(self, numerical):
        """Test that a point of the wrong length is refused."""
        with pytest.raises(ValueError, match="2 coordinates"):
            is_fundamental_hole(numerical, (1, 2))

    @pytest.mark.parametrize(
        ("name", "box"),
        [("numerical", ((0, 15),)), ("example22", ((0, 4), (0, 16))), ("example23", ((0, 3), (0, 12)))],
    )
    def test_column_check_matches_definition(self, name, box, request):
        """Test that checking x - a_i for columns agrees with checking x - q for every nonzero q in Q."""
        matrix = request.getfixturevalue(name)
        result = census(matrix, box)
        in_q = result.points(PointClass.IN_Q)
        in_qsat = set(in_q) | set(result.holes)
        for h in result.holes:
            by_definition = not any(tuple(x - y for x, y in zip(h, q)) in in_qsat for q in in_q if any(q))
            assert is_fundamental_hole(matrix, h) is by_definition


class TestFiniteness:
    """Tests for the finiteness decision."""

    def test_numerical_finite(self, numerical):
        """Test the finite verdict and its shift table."""
        verdict = holes_finite(numerical)
        assert verdict.verdict is Finiteness.FINITE
        assert [(e.source, e.column, e.value) for e in verdict.table.entries] == [
            ((1,), 0, 2),
            ((1,), 1, 1),
            ((1,), 2, 1),
        ]

    def test_basis_hole_shifts_are_one(self, example22):
        """Test that (1,2) reaches Q with one copy of any column."""
        verdict = holes_finite(example22)
        assert verdict.is_finite
        assert [e.value for e in verdict.table.entries] == [1, 1, 1, 1]
        assert [e.extreme for e in verdict.table.entries] == [True, False, False, True]

    def test_infinite_two_dimensional(self, example23):
        """Test that (1,1) never reaches Q along (1,0)."""
        verdict = holes_finite(example23)
        assert verdict.verdict is Finiteness.INFINITE
        assert verdict.witness.source == (1, 1)
        assert verdict.witness.column == 0
        assert verdict.witness.value == INFINITY
        assert verdict.witness.certificate.kind is CertificateKind.LP_INFEASIBLE

    def test_saturated(self, identity):
        """Test the saturated note."""
        verdict = holes_finite(identity)
        assert verdict.is_finite
        assert verdict.saturated
        assert verdict.note == SATURATED_NOTE
        assert verdict.table.entries == ()

    def test_block_matrix_infinite(self, example22):
        """Test that the block matrix with a free extra ray has infinitely many holes."""
        block = embed_block(example22, GeneratorMatrix.from_rows([[1]]))
        assert not holes_finite(block).is_finite
        holes = _saturation(block).holes
        assert (1, 2, 0) in holes.fundamental
        with pytest.raises(InfiniteHoles, match="infinite"):
            holes.holes

    def test_four_margin_model_infinite(self):
        """Test that [12][13][14][234] fails by real infeasibility."""
        matrix = table_matrix(MarginalModel.parse("2x2x2x2", "12,13,14,234"))
        verdict = holes_finite(matrix, AnalysisSettings(threads=4))
        assert verdict.verdict is Finiteness.INFINITE
        assert verdict.witness.source in (B17_FOUR_MARGINS, B18_FOUR_MARGINS)
        assert verdict.witness.certificate.kind is CertificateKind.LP_INFEASIBLE

    def test_k4_all_shifts_one(self, k4):
        """Test that the hole of the no-three-way model reaches Q along every column in one step."""
        analysis = HoleAnalysis(Semigroup(k4, AnalysisSettings(threads=4)))
        verdict = analysis.finiteness
        assert verdict.is_finite
        assert len(verdict.table.entries) == 16
        assert all(e.value == 1 for e in verdict.table.entries)
        assert analysis.column_bounds == (1,) * 16


class TestHoleEnumeration:
    """Tests for enumerate_holes."""

    def test_numerical(self, numerical):
        """Test H = {1, 2, 4}."""
        assert enumerate_holes(numerical) == ((1,), (2,), (4,))

    def test_two_dimensional(self, example22):
        """Test H = {(1,2)}."""
        assert enumerate_holes(example22) == ((1, 2),)

    def test_saturated(self, identity):
        """Test that the orthant has no holes."""
        assert enumerate_holes(identity) == ()

    def test_infinite_raises(self, example23):
        """Test that an infinite hole set cannot be enumerated."""
        with pytest.raises(InfiniteHoles, match="column 1"):
            enumerate_holes(example23)

    def test_column_bounds(self, numerical):
        """Test n_i over the fundamental holes."""
        analysis = HoleAnalysis(Semigroup(numerical))
        assert analysis.column_bounds == (2, 1, 1)

    def test_hole_set_model(self, numerical, example23):
        """Test that the hole set carries the verdict and omits H when infinite."""
        finite = HoleAnalysis(Semigroup(numerical)).hole_set()
        assert finite.holes == ((1,), (2,), (4,))
        infinite = HoleAnalysis(Semigroup(example23)).hole_set()
        assert infinite.holes is None
        assert infinite.fundamental == ((1, 1),)


class TestSaturationPoints:
    """Tests for saturation points and S̄."""

    @pytest.mark.parametrize("x,expected", [((0,), False), ((3,), False), ((5,), True), ((6,), True), ((12,), True)])
    def test_is_saturation_point(self, numerical, x, expected):
        """Test membership in S for <3, 5, 7>."""
        assert is_saturation_point(numerical, x) is expected

    def test_hole_is_not_in_semigroup(self, numerical):
        """Test that a hole is refused."""
        with pytest.raises(NotInSemigroup):
            is_saturation_point(numerical, (4,))

    def test_non_saturation(self, numerical, example22, identity):
        """Test S̄ for the finite examples."""
        assert non_saturation_points(numerical) == ((0,), (3,))
        assert non_saturation_points(example22) == ((0, 0),)
        assert non_saturation_points(identity) == ()

    def test_non_saturation_needs_finite(self, example23):
        """Test that S̄ is not enumerated for an infinite hole set."""
        with pytest.raises(InfiniteHoles):
            non_saturation_points(example23)


class TestMinimalSets:
    """Tests for the three minimal-saturation-point sets."""

    def test_numerical(self, numerical):
        """Test the three sets of <3, 5, 7>."""
        assert min_sat_S(numerical).points == ((5,), (6,), (7,), (8,), (9,))
        assert min_sat_Q(numerical).points == ((5,), (6,), (7,))
        assert min_sat_Qsat(numerical).points == ((5,),)
        assert min_sat_Q(numerical).completeness is Completeness.COMPLETE

    def test_two_dimensional(self, example22):
        """Test that all three sets are the non-hole columns."""
        expected = ((1, 0), (1, 1), (1, 3), (1, 4))
        assert min_sat_S(example22).points == expected
        assert min_sat_Q(example22).points == expected
        assert min_sat_Qsat(example22).points == expected

    def test_bounded_search(self, example23):
        """Test min(S;Q) and min(S;Q_sat) by bounded search when H is infinite."""
        result = min_sat_Q(example23, degree_bound=10)
        assert result.points == ((1, 2), (1, 3), (1, 4))
        assert result.completeness is Completeness.BOUNDED_SEARCH
        assert result.bound == 10
        assert min_sat_Qsat(example23).points == ((1, 2), (1, 3), (1, 4))
        assert min_sat_Qsat(example23).bound == 4

    def test_search_point_limit(self, example23):
        """Test that a capped search reports the degree it fully covers."""
        result = min_sat_Q(example23, degree_bound=10, settings=AnalysisSettings(search_point_limit=20))
        assert result.completeness is Completeness.BOUNDED_SEARCH
        assert result.bound < 10
        assert result.points[0] == (1, 2)

    def test_min_ss_needs_finite(self, example23):
        """Test that min(S;S) is not searched for an infinite hole set."""
        with pytest.raises(InfiniteHoles):
            min_sat_S(example23)

    def test_saturated_note(self, identity):
        """Test that saturated instances report empty sets with a note."""
        result = min_sat_S(identity)
        assert result.points == ()
        assert result.note == SATURATED_NOTE

    def test_inclusions(self, numerical, example22, example23):
        """Test min(S;Q_sat) ⊆ min(S;Q) ⊆ min(S;S) on every example."""
        for matrix in (numerical, example22):
            sets = _saturation(matrix).saturation_sets()
            assert set(sets.min_sqsat.points) <= set(sets.min_sq.points) <= set(sets.min_ss.points)
        sets = _saturation(example23).saturation_sets()
        assert sets.min_ss is None
        assert sets.non_saturation is None
        assert set(sets.min_sqsat.points) <= set(sets.min_sq.points)

    def test_k4_minimal_points_are_columns(self, k4):
        """Test S̄ = {0} and min(S;S) = the 16 columns for the no-three-way model."""
        analysis = _saturation(k4, threads=4)
        assert analysis.non_saturation == [analysis.semigroup.zero]
        assert set(analysis.semigroup.lift_all(analysis.min_ss)) == set(k4.columns)


class TestEquivalences:
    """Tests for finiteness_equivalences."""

    @pytest.mark.parametrize("name", ["numerical", "example22", "identity"])
    def test_all_true(self, name, request):
        """Test that finite examples satisfy every statement."""
        result = finiteness_equivalences(request.getfixturevalue(name))
        assert result.consistent
        assert result.holes_finite and result.extreme_multiples_saturate

    def test_all_false(self, example23):
        """Test that the infinite example fails every statement."""
        result = finiteness_equivalences(example23)
        assert result.consistent
        assert not result.holes_finite
        assert not result.cone_polyhedral

    def test_non_saturation_search_runs_into_cap(self, example23):
        """Test that the infinite S̄ shows up as a search stopped by its cap."""
        result = finiteness_equivalences(example23, AnalysisSettings(search_point_limit=50))
        assert result.consistent
        assert not result.non_saturation_finite
        assert not result.min_ss_finite

    def test_cap_below_non_saturation_disagrees(self, numerical):
        """Test that S̄ = {0, 3} does not fit a one-point search, which the joint check reports."""
        with pytest.raises(ConsistencyError, match="disagree"):
            finiteness_equivalences(numerical, AnalysisSettings(search_point_limit=1))

    def test_polyhedral_from_minimal_points(self, example22, example23):
        """Test that every extreme ray carries a min(S;Q) point exactly in the finite example."""
        assert _saturation(example22).cone_of_s_polyhedral()
        infinite = _saturation(example23)
        assert not infinite.cone_of_s_polyhedral()
        assert not infinite.extreme_multiples_saturate()

    def test_extreme_multiples_without_column_bounds(self, numerical):
        """Test that 6 = 2·3 is found by scanning multiples, not by reading n_i."""
        analysis = _saturation(numerical)
        assert analysis.extreme_multiples_saturate()
        assert "column_bounds" not in vars(analysis.holes)


class TestPartition:
    """Tests for the split of Q_sat into holes, non-saturation points and saturation points."""

    @pytest.mark.parametrize(
        ("name", "box"),
        [("numerical", ((0, 15),)), ("example22", ((0, 4), (0, 16))), ("identity", ((0, 3), (0, 3)))],
    )
    def test_each_point_in_one_part(self, name, box, request):
        """Test that every Q_sat point of a box lies in exactly one part."""
        matrix = request.getfixturevalue(name)
        analysis = _saturation(matrix)
        sg = analysis.semigroup
        holes, sbar = set(analysis.holes.holes), set(analysis.non_saturation)
        for p, kind in census(matrix, box).classification.items():
            if kind is PointClass.OUTSIDE_QSAT:
                continue
            z = analysis.cone.normalize(p)
            parts = [z in holes, z in sbar, sg.member(z) and analysis.is_saturation_point(z)]
            assert parts.count(True) == 1
            assert parts[0] is (kind is PointClass.HOLE)


class TestClassifyPoint:
    """Tests for classify_point."""

    def test_hole(self, numerical):
        """Test a rational but not integral solution."""
        report = classify_point(numerical, (4,))
        assert report.kind is PointClass.HOLE
        assert report.witness is None

    def test_saturation_tags(self, numerical):
        """Test IN_Q points with and without the saturation property."""
        assert classify_point(numerical, (8,)).tag is SaturationTag.SAT
        report = classify_point(numerical, (3,))
        assert report.kind is PointClass.IN_Q
        assert report.tag is SaturationTag.NONSAT
        assert report.witness == (1, 0, 0)

    def test_outside(self, numerical, example22):
        """Test points with no rational solution."""
        assert classify_point(numerical, (-1,)).kind is PointClass.OUTSIDE_QSAT
        assert classify_point(example22, (1, 5)).kind is PointClass.OUTSIDE_QSAT

    def test_payload(self, numerical):
        """Test the JSON-ready payload."""
        assert classify_point(numerical, (7,)).to_payload() == {
            "point": [7],
            "class": "IN_Q",
            "witness": [0, 0, 1],
            "tag": "SAT",
        }


class TestFrobenius:
    """Tests for frobenius_number."""

    @pytest.mark.parametrize(
        "integers,expected",
        [((3, 5, 7), 4), ((2, 3), 1), ((1, 5), -1), ((5, 7), 23), ((6, 10, 15), 29), ((4, 9), 23)],
    )
    def test_values(self, integers, expected):
        """Test known Frobenius numbers."""
        assert frobenius_number(integers) == expected

    def test_gcd_not_one(self):
        """Test that a common divisor is refused."""
        with pytest.raises(GcdNotOne, match="gcd"):
            frobenius_matrix((4, 6))

    @pytest.mark.parametrize("integers,message", [((5,), "at least two"), ((0, 3), "positive"), ((-2, 3), "positive")])
    def test_invalid(self, integers, message):
        """Test malformed inputs."""
        with pytest.raises(ValueError, match=message):
            frobenius_matrix(integers)


class TestPipeline:
    """Tests for the staged analysis pipeline."""

    def test_full_run(self, numerical):
        """Test every stage on <3, 5, 7>."""
        outcome = analyze(numerical)
        report = outcome.report
        assert outcome.error is None
        assert report.errors == ()
        assert report.hilbert_basis.vectors == [(1,)]
        assert report.hole_set.holes == ((1,), (2,), (4,))
        assert report.column_bounds == (2, 1, 1)
        assert report.saturation.non_saturation == ((0,), (3,))
        assert report.saturation.min_sqsat.points == ((5,),)
        assert report.equivalences.consistent
        assert set(report.timings_ms) == {"cone"} | {stage.value for stage in Stage}

    def test_partial_stages(self, numerical):
        """Test that stages that were not requested stay empty."""
        report = analyze(numerical, close_stages(["finiteness"])).report
        assert report.hole_set.finiteness.is_finite
        assert report.hole_set.holes is None
        assert report.shift_table is not None
        assert report.saturation is None
        assert report.to_payload()["minSS"] is None

    def test_infinite_continues(self, example23):
        """Test that InfiniteHoles is recorded and the bounded stages still run."""
        outcome = analyze(example23)
        report = outcome.report
        assert isinstance(outcome.error, InfiniteHoles)
        assert report.errors[0].startswith("InfiniteHoles:")
        assert report.hole_set.finiteness.verdict is Finiteness.INFINITE
        assert report.saturation.min_sq.completeness is Completeness.BOUNDED_SEARCH
        assert report.equivalences.consistent

    def test_not_pointed(self):
        """Test that an unpointed cone stops the run."""
        outcome = analyze(GeneratorMatrix.from_columns([(1, 0), (-1, 0), (0, 1)]))
        assert outcome.report.pointed is False
        assert outcome.report.errors[0].startswith("NotPointed:")
        assert outcome.report.hilbert_basis is None

    def test_payload_keys(self, example22):
        """Test the published payload names."""
        payload = analyze(example22).report.to_payload()
        assert payload["extremeColumns"] == [1, 4]
        assert payload["grading"] == [1, 0]
        assert payload["holes"] == [[1, 2]]
        assert payload["finiteness"]["verdict"] == "FINITE"
        assert payload["minSS"]["points"] == [[1, 0], [1, 1], [1, 3], [1, 4]]
        assert payload["theorem21"]["holesFinite"] is True
        assert [row["column"] for row in payload["shiftTable"]] == [1, 2, 3, 4]
        assert payload["fundamentalShiftTable"][0]["hole"] == [1, 2]
        assert [row["value"] for row in payload["fundamentalShiftTable"]] == [1, 1, 1, 1]
