"""Saturation points, non-saturation points and the three minimal-saturation-point sets.

A point a of Q is a saturation point when a + Q_sat ⊆ Q, which reduces to
a + y ∈ Q for every fundamental hole y. Minimality with respect to Q and Q_sat
reduces to single steps (columns, resp. Hilbert basis elements) because
S + Q ⊆ S and S + Q_sat ⊆ S.
"""

import heapq
import logging
from functools import cached_property

from analysis.holes import HoleAnalysis
from engine.semigroup import Semigroup, add, scale, sub
from exceptions import ConsistencyError, NotInSemigroup
from models.census import PointClass, PointReport, SaturationTag
from models.matrix import GeneratorMatrix, Vector
from models.report import AnalysisSettings
from models.saturation import (
    SATURATED_NOTE,
    Completeness,
    FinitenessEquivalences,
    MinimalSet,
    SaturationSets,
)
from models.shifts import INFINITY

logger = logging.getLogger(__name__)


class SaturationAnalysis:
    def __init__(self, holes: HoleAnalysis):
        self.holes = holes
        self.semigroup = holes.semigroup
        self.cone = holes.cone
        self.settings = self.semigroup.settings
        self._s_minimal: dict[Vector, bool] = {}

    @property
    def saturated(self) -> bool:
        """S = Q = Q_sat exactly when there is no fundamental hole."""
        return not self.holes.fundamental

    def is_saturation_point(self, z: Vector) -> bool:
        sg = self.semigroup
        return sg.member(z) and all(sg.member(add(z, y)) for y in self.holes.fundamental)

    def _search_non_saturation(self, limit: int | None = None) -> tuple[dict[Vector, tuple[int, ...]], bool]:
        """S̄ by search from 0, with the column counts of the path that reached each point.

        S̄ is closed under taking Q-predecessors, so the search reaches all of it. The flag
        is False when `limit` points were found and the search still had points to expand.
        """
        sg = self.semigroup
        counts_of: dict[Vector, tuple[int, ...]] = {}
        if not self.is_saturation_point(sg.zero):
            counts_of[sg.zero] = (0,) * sg.n
        frontier = list(counts_of)
        seen = set(frontier)
        while frontier:
            following = []
            for z in frontier:
                counts = counts_of[z]
                for i, g in enumerate(sg.generators):
                    w = add(z, g)
                    if w in seen:
                        continue
                    seen.add(w)
                    if not self.is_saturation_point(w):
                        if limit is not None and len(counts_of) >= limit:
                            logger.info("Non-saturation search stopped at %d points", limit)
                            return counts_of, False
                        counts_of[w] = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
                        following.append(w)
            frontier = following
        return counts_of, True

    @cached_property
    def non_saturation(self) -> list[Vector]:
        """Complete S̄, checked against the column bounds."""
        self.holes.require_finite()
        bounds = self.holes.column_bounds
        counts_of, _ = self._search_non_saturation()
        for z, counts in counts_of.items():
            if any(bound != INFINITY and c >= bound for c, bound in zip(counts, bounds)):
                raise ConsistencyError(f"Non-saturation point {self.cone.lift(z)} exceeds the column bounds {bounds}")
        result = self.semigroup.sorted_points(counts_of)
        logger.info("Found %d non-saturation points", len(result))
        return result

    def _points_below(self, a: Vector) -> list[Vector]:
        """Points s of Q with a - s in K."""
        sg = self.semigroup
        seen = {sg.zero}
        frontier = [sg.zero]
        while frontier:
            following = []
            for z in frontier:
                for g in sg.generators:
                    w = add(z, g)
                    if w not in seen and self.cone.contains(sub(a, w)):
                        seen.add(w)
                        following.append(w)
            frontier = following
        return list(seen)

    def is_s_minimal(self, a: Vector) -> bool:
        if a in self._s_minimal:
            return self._s_minimal[a]
        sg = self.semigroup
        result = not any(
            s != sg.zero and self.is_saturation_point(s) and self.is_saturation_point(sub(a, s))
            for s in self._points_below(a)
        )
        self._s_minimal[a] = result
        return result

    def is_q_minimal(self, a: Vector) -> bool:
        return not any(self.is_saturation_point(sub(a, g)) for g in self.semigroup.generators)

    def is_qsat_minimal(self, a: Vector) -> bool:
        return not any(self.is_saturation_point(sub(a, b)) for b in self.semigroup.hilbert_basis)

    def _keep(self, candidates, test) -> list[Vector]:
        return self.semigroup.sorted_points(a for a in set(candidates) if self.is_saturation_point(a) and test(a))

    def _min_ss_from(self, sbar) -> list[Vector]:
        """min(S;S) from the candidates S̄ + columns + S̄."""
        gens = self.semigroup.generators
        candidates = {add(add(p, g), q) for p in sbar for g in gens for q in sbar}
        result = self._keep(candidates, self.is_s_minimal)
        logger.info("min(S;S) has %d points from %d candidates", len(result), len(candidates))
        return result

    @cached_property
    def min_ss(self) -> list[Vector]:
        self.holes.require_finite()
        if self.saturated:
            return []
        return self._min_ss_from(self.non_saturation)

    def _bound(self) -> int:
        if self.settings.degree_bound is not None:
            return self.settings.degree_bound
        points = self.holes.fundamental + self.semigroup.hilbert_basis
        return 4 * max(self.cone.degree(z) for z in points)

    @cached_property
    def bounded_points(self) -> tuple[list[Vector], int]:
        """Points of Q by increasing degree up to the degree bound, and the degree fully covered."""
        sg = self.semigroup
        bound = self._bound()
        limit = self.settings.search_point_limit
        heap = [(0, sg.zero)]
        seen = {sg.zero}
        points: list[Vector] = []
        covered = bound
        while heap:
            degree, z = heapq.heappop(heap)
            if len(points) >= limit:
                covered = degree - 1
                logger.warning("Bounded search stopped at %d points; complete up to degree %d", limit, covered)
                break
            points.append(z)
            for g in sg.generators:
                w = add(z, g)
                if w not in seen and sg.degree(w) <= bound:
                    seen.add(w)
                    heapq.heappush(heap, (sg.degree(w), w))
        logger.debug("Bounded search visited %d points up to degree %d", len(points), covered)
        return points, covered

    def _minimal(self, test, complete_candidates) -> tuple[list[Vector], int | None]:
        if self.holes.finiteness.is_finite:
            return self._keep(complete_candidates(), test), None
        points, covered = self.bounded_points
        return self._keep(points, test), covered

    @cached_property
    def min_sq(self) -> tuple[list[Vector], int | None]:
        """min(S;Q) and, for a bounded search, the degree it covers."""
        if self.saturated:
            return [], None
        gens = self.semigroup.generators
        return self._minimal(self.is_q_minimal, lambda: {add(p, g) for p in self.non_saturation for g in gens})

    @cached_property
    def min_sqsat(self) -> tuple[list[Vector], int | None]:
        if self.saturated:
            return [], None
        basis = self.semigroup.hilbert_basis

        def candidates() -> set[Vector]:
            below = self.non_saturation + self.holes.holes
            return {add(p, b) for p in below for b in basis}

        return self._minimal(self.is_qsat_minimal, candidates)

    def minimal_set(self, points: list[Vector], bound: int | None) -> MinimalSet:
        if self.saturated:
            return MinimalSet(points=(), note=SATURATED_NOTE)
        completeness = Completeness.COMPLETE if bound is None else Completeness.BOUNDED_SEARCH
        return MinimalSet(points=self.semigroup.lift_all(points), completeness=completeness, bound=bound)

    def check_inclusions(self, with_min_ss: bool = True) -> None:
        """min(S;Q_sat) ⊆ min(S;Q) ⊆ min(S;S) and min(S;Q) ⊆ min(S;Q_sat) + (H₀ ∪ {0})."""
        sq, _ = self.min_sq
        sqsat, _ = self.min_sqsat
        sq_set, sqsat_set = set(sq), set(sqsat)
        lift = self.cone.lift
        if stray := sqsat_set - sq_set:
            raise ConsistencyError(f"min(S;Q_sat) points outside min(S;Q): {[lift(z) for z in stray]}")
        if with_min_ss and (stray := sq_set - set(self.min_ss)):
            raise ConsistencyError(f"min(S;Q) points outside min(S;S): {[lift(z) for z in stray]}")
        shifts = [self.semigroup.zero] + self.holes.fundamental
        for a in sq:
            if not any(sub(a, y) in sqsat_set for y in shifts):
                raise ConsistencyError(f"{lift(a)} in min(S;Q) is no min(S;Q_sat) point plus a fundamental hole")

    def saturation_sets(self) -> SaturationSets:
        finite = self.holes.finiteness.is_finite
        if finite:
            non_saturation = self.semigroup.lift_all(self.non_saturation)
            min_ss = self.minimal_set(self.min_ss, None)
        else:
            non_saturation, min_ss = None, None
        self.check_inclusions(with_min_ss=finite)
        return SaturationSets(
            non_saturation=non_saturation,
            min_ss=min_ss,
            min_sq=self.minimal_set(*self.min_sq),
            min_sqsat=self.minimal_set(*self.min_sqsat),
        )

    def extreme_multiples_saturate(self) -> bool:
        """For every extreme column a_i some multiple λ·a_i is a saturation point.

        An infinite shift of a hole y along a_i keeps every y + λ·a_i out of Q, so the
        witness of an infinite verdict rules its column out. Other columns are scanned
        up to `search_point_limit` multiples.
        """
        verdict = self.holes.finiteness
        if verdict.witness is not None and not verdict.witness.is_finite:
            return False
        gens = self.semigroup.generators
        limit = self.settings.search_point_limit
        return all(
            any(self.is_saturation_point(scale(lam, gens[i])) for lam in range(limit + 1))
            for i in self.cone.extreme_columns
        )

    def cone_of_s_polyhedral(self) -> bool:
        """cone(S) is polyhedral iff it is K, iff every extreme ray of K holds a point of S.

        Writing such a point as m + q with m in min(S;Q) and q in Q puts m on the same
        ray, so it is enough to look at min(S;Q).
        """
        if self.saturated:
            return True
        points, _ = self.min_sq
        gens = self.semigroup.generators
        return all(any(_on_ray(p, gens[i]) for p in points) for i in self.cone.extreme_columns)

    def equivalences(self) -> FinitenessEquivalences:
        """The five finiteness statements, each from its own computation, checked to agree."""
        counts_of, sbar_complete = self._search_non_saturation(self.settings.search_point_limit)
        if not sbar_complete:
            min_ss_finite = False
        elif self.saturated:
            min_ss_finite = True
        else:
            # S is not empty, so some S-minimal point must turn up among the candidates
            min_ss_finite = bool(self._min_ss_from(counts_of))
        result = FinitenessEquivalences(
            holes_finite=self.holes.finiteness.is_finite,
            non_saturation_finite=sbar_complete,
            min_ss_finite=min_ss_finite,
            extreme_multiples_saturate=self.extreme_multiples_saturate(),
            cone_polyhedral=self.cone_of_s_polyhedral(),
        )
        if not result.consistent:
            raise ConsistencyError(f"Finiteness statements disagree: {result.model_dump()}")
        return result


def _on_ray(p: Vector, g: Vector) -> bool:
    """p is a positive multiple of g."""
    if not any(p):
        return False
    if any(p[k] * g[m] != p[m] * g[k] for k in range(len(p)) for m in range(k + 1, len(p))):
        return False
    return sum(x * y for x, y in zip(p, g)) > 0


def _analysis(matrix: GeneratorMatrix, settings: AnalysisSettings | None) -> SaturationAnalysis:
    return SaturationAnalysis(HoleAnalysis(Semigroup(matrix, settings)))


def _with_bound(settings: AnalysisSettings | None, degree_bound: int | None) -> AnalysisSettings:
    settings = settings or AnalysisSettings()
    if degree_bound is None:
        return settings
    return settings.model_copy(update={"degree_bound": degree_bound})


def is_saturation_point(matrix: GeneratorMatrix, x: Vector, settings: AnalysisSettings | None = None) -> bool:
    analysis = _analysis(matrix, settings)
    if len(x) != matrix.d:
        raise ValueError(f"Point has {len(x)} coordinates, matrix has {matrix.d} rows")
    z = analysis.cone.normalize(tuple(x))
    if z is None or not analysis.semigroup.member(z):
        raise NotInSemigroup(f"{tuple(x)} is not a nonnegative integer combination of the columns")
    return analysis.is_saturation_point(z)


def non_saturation_points(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> tuple[Vector, ...]:
    analysis = _analysis(matrix, settings)
    return analysis.semigroup.lift_all(analysis.non_saturation)


def min_sat_S(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> MinimalSet:
    analysis = _analysis(matrix, settings)
    analysis.holes.require_finite()
    return analysis.minimal_set(analysis.min_ss, None)


def min_sat_Q(
    matrix: GeneratorMatrix, degree_bound: int | None = None, settings: AnalysisSettings | None = None
) -> MinimalSet:
    analysis = _analysis(matrix, _with_bound(settings, degree_bound))
    return analysis.minimal_set(*analysis.min_sq)


def min_sat_Qsat(
    matrix: GeneratorMatrix, degree_bound: int | None = None, settings: AnalysisSettings | None = None
) -> MinimalSet:
    analysis = _analysis(matrix, _with_bound(settings, degree_bound))
    return analysis.minimal_set(*analysis.min_sqsat)


def finiteness_equivalences(
    matrix: GeneratorMatrix, settings: AnalysisSettings | None = None
) -> FinitenessEquivalences:
    return _analysis(matrix, settings).equivalences()


def classify_point(matrix: GeneratorMatrix, b: Vector, settings: AnalysisSettings | None = None) -> PointReport:
    """Decide whether A·x = b has a nonnegative integral solution, a rational one only, or neither."""
    if len(b) != matrix.d:
        raise ValueError(f"Point has {len(b)} coordinates, matrix has {matrix.d} rows")
    point = tuple(b)
    analysis = _analysis(matrix, settings)
    z = analysis.cone.normalize(point)
    if z is None or not analysis.cone.contains(z):
        return PointReport(point=point, kind=PointClass.OUTSIDE_QSAT)
    witness = analysis.semigroup.decompose(z)
    if witness is None:
        return PointReport(point=point, kind=PointClass.HOLE)
    tag = SaturationTag.SAT if analysis.is_saturation_point(z) else SaturationTag.NONSAT
    return PointReport(point=point, kind=PointClass.IN_Q, witness=witness, tag=tag)
