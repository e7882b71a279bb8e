"""Fundamental holes, the finiteness decision and hole enumeration."""

import logging
from collections.abc import Sequence
from functools import cached_property

from engine.semigroup import Semigroup, add, sub
from engine.shifts import ShiftSolver
from exceptions import ConsistencyError, InfiniteHoles
from models.matrix import GeneratorMatrix, Vector
from models.report import AnalysisSettings
from models.saturation import SATURATED_NOTE, Finiteness, FinitenessVerdict, HoleSet
from models.shifts import INFINITY, ShiftKind, ShiftTable, ShiftValue

logger = logging.getLogger(__name__)


class HoleAnalysis:
    """Hole structure of one semigroup, computed lazily and cached.

    All points are kept in the normalized coordinates of the semigroup's cone;
    `hole_set()` lifts them back for reporting.
    """

    def __init__(self, semigroup: Semigroup):
        self.semigroup = semigroup
        self.cone = semigroup.cone
        self.solver = ShiftSolver(semigroup)

    def is_fundamental(self, z: Vector) -> bool:
        sg = self.semigroup
        return sg.is_hole(z) and not any(self.cone.contains(sub(z, g)) for g in sg.generators)

    @cached_property
    def fundamental(self) -> list[Vector]:
        """H₀ as sums of hole-flagged basis elements.

        A sum using a column or a basis element of Q reduces by a column, so only
        hole-flagged elements take part; a node that reduces by a column inside K
        has no fundamental descendants and is pruned.
        """
        sg = self.semigroup
        sources = sg.hole_basis
        found: set[Vector] = set()
        frontier = list(sources)
        seen = set(frontier)
        while frontier:
            following = []
            for z in frontier:
                if any(self.cone.contains(sub(z, g)) for g in sg.generators):
                    continue
                if sg.member(z):
                    continue
                found.add(z)
                for b in sources:
                    w = add(z, b)
                    if w not in seen:
                        seen.add(w)
                        following.append(w)
            frontier = following
        result = sg.sorted_points(found)
        logger.info("Found %d fundamental holes from %d hole-flagged basis elements", len(result), len(sources))
        return result

    @cached_property
    def finiteness(self) -> FinitenessVerdict:
        """Decide |H| < ∞ from the shifts of hole-flagged basis elements along extreme columns."""
        sg = self.semigroup
        sources = sg.hole_basis
        if not sources:
            logger.info("Semigroup is saturated")
            return FinitenessVerdict(
                verdict=Finiteness.FINITE, table=ShiftTable(kind=ShiftKind.BASIS), note=SATURATED_NOTE
            )

        extreme = self.cone.extreme_columns
        witness = self.solver.first_relaxation_failure(sources, extreme)
        if witness is None:
            extreme_table = self.solver.table(ShiftKind.BASIS, sources, extreme)
            witness = extreme_table.first_infinite()
        if witness is not None:
            logger.info("Hole set is infinite: %s along column %d", witness.source, witness.column)
            return FinitenessVerdict(verdict=Finiteness.INFINITE, witness=witness)

        rest = [i for i in range(sg.n) if i not in self.solver.extreme]
        computed = {(e.source, e.column): e for e in extreme_table.entries}
        if rest:
            for e in self.solver.table(ShiftKind.BASIS, sources, rest).entries:
                computed[(e.source, e.column)] = e
        entries = tuple(computed[(self.cone.lift(z), i)] for z in sources for i in range(sg.n))
        logger.info("Hole set is finite")
        return FinitenessVerdict(verdict=Finiteness.FINITE, table=ShiftTable(kind=ShiftKind.BASIS, entries=entries))

    @cached_property
    def fundamental_table(self) -> ShiftTable:
        """λ̄ over fundamental holes and every column; only meaningful when H is finite."""
        self.require_finite()
        return self.solver.table(ShiftKind.FUNDAMENTAL, self.fundamental, range(self.semigroup.n))

    @cached_property
    def column_bounds(self) -> tuple[ShiftValue, ...]:
        """n_i = max over fundamental holes y of λ̄(y, i); n_i·a_i is a saturation point."""
        return self.fundamental_table.column_bounds(self.semigroup.n)

    def require_finite(self) -> None:
        verdict = self.finiteness
        if not verdict.is_finite:
            witness = verdict.witness
            raise InfiniteHoles(
                f"Shift of {witness.source} along column {witness.column + 1} is infinite; H has infinitely many points"
            )

    def _shift_rows(self) -> dict[Vector, Sequence[ShiftValue]]:
        n = self.semigroup.n
        entries = self.fundamental_table.entries
        return {y: [e.value for e in entries[k * n : (k + 1) * n]] for k, y in enumerate(self.fundamental)}

    @cached_property
    def holes(self) -> list[Vector]:
        """Complete H by closure of H₀ under column additions."""
        self.require_finite()
        sg = self.semigroup
        # hole -> (fundamental hole, column counts) along the search path
        paths: dict[Vector, tuple[Vector, tuple[int, ...]]] = {y: (y, (0,) * sg.n) for y in self.fundamental}
        frontier = list(self.fundamental)
        while frontier:
            following = []
            for z in frontier:
                origin, counts = paths[z]
                for i, g in enumerate(sg.generators):
                    w = add(z, g)
                    if w in paths or sg.member(w):
                        continue
                    paths[w] = (origin, counts[:i] + (counts[i] + 1,) + counts[i + 1 :])
                    following.append(w)
            logger.debug("Hole closure frontier: %d points", len(following))
            frontier = following

        rows = self._shift_rows()
        for z, (origin, counts) in paths.items():
            bounds = rows[origin]
            if any(bound != INFINITY and c >= bound for c, bound in zip(counts, bounds)):
                raise ConsistencyError(
                    f"Hole {self.cone.lift(z)} lies outside the shift box of {self.cone.lift(origin)}"
                )
        result = sg.sorted_points(paths)
        logger.info("Hole set has %d points", len(result))
        return result

    def hole_set(self) -> HoleSet:
        verdict = self.finiteness
        holes = None
        if verdict.is_finite:
            holes = self.semigroup.lift_all(self.holes)
        return HoleSet(fundamental=self.semigroup.lift_all(self.fundamental), holes=holes, finiteness=verdict)


def _normalized(sg: Semigroup, x: Vector) -> Vector | None:
    if len(x) != sg.matrix.d:
        raise ValueError(f"Point has {len(x)} coordinates, matrix has {sg.matrix.d} rows")
    return sg.cone.normalize(tuple(x))


def is_fundamental_hole(matrix: GeneratorMatrix, x: Vector) -> bool:
    sg = Semigroup(matrix)
    z = _normalized(sg, x)
    return z is not None and HoleAnalysis(sg).is_fundamental(z)


def fundamental_holes(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> tuple[Vector, ...]:
    analysis = HoleAnalysis(Semigroup(matrix, settings))
    return analysis.semigroup.lift_all(analysis.fundamental)


def holes_finite(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> FinitenessVerdict:
    return HoleAnalysis(Semigroup(matrix, settings)).finiteness


def enumerate_holes(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> tuple[Vector, ...]:
    analysis = HoleAnalysis(Semigroup(matrix, settings))
    return analysis.semigroup.lift_all(analysis.holes)
