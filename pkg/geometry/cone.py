"""Geometry of K = cone(a_1..a_n): pointedness, extreme rays, inequalities and membership.

The module-level operations take a GeneratorMatrix and answer in original coordinates.
`RationalCone` is the cached working view the search engines use: it lives in the
normalized coordinates where the lattice L becomes Z^r, so Q_sat membership there is
just "integral and inside every facet".
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import cached_property
from math import lcm

from exact.lattice import lattice_normalize
from exact.simplex import LinearConstraint, LPStatus, lp_feasible, solve_lp
from exceptions import NotPointed
from geometry.double_description import dual_extreme_rays, primitive_vector
from models.cone import ConeProfile
from models.matrix import GeneratorMatrix, Vector

logger = logging.getLogger(__name__)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def integral_direction(values: Sequence[Fraction]) -> Vector:
    """Primitive integer vector pointing the same way as a rational vector."""
    scale = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    return primitive_vector([int(Fraction(v) * scale) for v in values])


def pointedness_certificate(matrix: GeneratorMatrix) -> Vector:
    """Primitive integer c with c·a_i > 0 for every column.

    Solves min sum_i c·a_i subject to c·a_i >= 1 over free c and clears denominators.
    """
    names = [f"c{k}" for k in range(matrix.d)]
    constraints = [LinearConstraint.ge(dict(zip(names, col)), 1) for col in matrix.columns]
    objective = {name: sum(row) for name, row in zip(names, matrix.entries)}
    result = solve_lp(objective, constraints)
    if result.status is LPStatus.INFEASIBLE:
        raise NotPointed(f"No linear functional is positive on every column of the {matrix.d}x{matrix.n} matrix")
    return integral_direction([result.witness[name] for name in names])


def _in_cone_of(target: Vector, others: Sequence[Vector]) -> bool:
    if not others:
        return all(v == 0 for v in target)
    names = [f"l{j}" for j in range(len(others))]
    constraints = [
        LinearConstraint.eq({name: g[k] for name, g in zip(names, others)}, target[k]) for k in range(len(target))
    ]
    return lp_feasible(constraints, nonnegative=names).feasible


def cone_membership(matrix: GeneratorMatrix, x: Vector) -> bool:
    """True iff x is a nonnegative rational combination of the columns."""
    if len(x) != matrix.d:
        raise ValueError(f"Point has {len(x)} coordinates, matrix has {matrix.d} rows")
    return _in_cone_of(tuple(x), matrix.columns)


def qsat_membership(matrix: GeneratorMatrix, x: Vector) -> bool:
    """True iff x lies in Q_sat = K ∩ L."""
    if lattice_normalize(matrix).normalize(tuple(x)) is None:
        return False
    return cone_membership(matrix, x)


class RationalCone:
    """The cone K and lattice L of a generator matrix, in normalized coordinates.

    Normalized points z correspond to lattice points x = lift·z; every point of Z^r
    is a lattice point, so z is in Q_sat exactly when it satisfies the facet
    inequalities.
    """

    def __init__(self, matrix: GeneratorMatrix, threads: int = 1):
        self.matrix = matrix
        self.threads = threads
        self.normalization = lattice_normalize(matrix)
        self.dim = self.normalization.rank
        self.generators: list[Vector] = self.normalization.reduced_columns()
        self.grading = pointedness_certificate(matrix)
        lift = self.normalization.lift
        self.normalized_grading: Vector = tuple(
            sum(c * lift[j][k] for j, c in enumerate(self.grading)) for k in range(self.dim)
        )
        self.zero: Vector = (0,) * self.dim

    @property
    def n(self) -> int:
        return len(self.generators)

    def degree(self, z: Vector) -> int:
        return dot(self.normalized_grading, z)

    def normalize(self, x: Vector) -> Vector | None:
        return self.normalization.normalize(tuple(x))

    def lift(self, z: Vector) -> Vector:
        return self.normalization.lift_point(z)

    def sort_key(self, z: Vector) -> tuple[int, Vector]:
        """Report order: degree, then lexicographic in original coordinates."""
        return self.degree(z), self.lift(z)

    def sorted_points(self, points) -> list[Vector]:
        return sorted(set(points), key=self.sort_key)

    @cached_property
    def facets(self) -> list[Vector]:
        rows = dual_extreme_rays(self.generators, self.dim)
        logger.info("Cone of rank %d has %d facets", self.dim, len(rows))
        return rows

    def contains(self, z: Vector) -> bool:
        return all(dot(f, z) >= 0 for f in self.facets)

    def slack(self, z: Vector) -> Vector:
        return tuple(dot(f, z) for f in self.facets)

    def direction_representatives(self) -> list[int]:
        """Lowest column (degree, then lexicographic, then index) per ray direction."""
        best: dict[Vector, int] = {}
        for i, g in enumerate(self.generators):
            direction = primitive_vector(g)
            current = best.get(direction)
            if current is None or self._column_key(i) < self._column_key(current):
                best[direction] = i
        return sorted(best.values())

    def _column_key(self, i: int) -> tuple[int, Vector, int]:
        return self.degree(self.generators[i]), self.matrix.column(i), i

    @cached_property
    def extreme_columns(self) -> tuple[int, ...]:
        representatives = self.direction_representatives()

        def is_extreme(i: int) -> bool:
            others = [self.generators[j] for j in representatives if j != i]
            return not _in_cone_of(self.generators[i], others)

        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            flags = list(pool.map(is_extreme, representatives))
        extreme = tuple(i for i, flag in zip(representatives, flags) if flag)
        logger.info("%d of %d columns span extreme rays", len(extreme), self.n)
        return extreme

    @cached_property
    def inequality_rep(self) -> tuple[Vector, ...]:
        """Facet inequalities rewritten for original coordinates."""
        rows = []
        transform, scales = self.normalization.transform, self.normalization.scales
        d = self.matrix.d
        for f in self.facets:
            row = [sum(Fraction(f[k] * transform[k][j], scales[k]) for k in range(self.dim)) for j in range(d)]
            rows.append(integral_direction(row))
        return tuple(sorted(rows))

    def profile(self) -> ConeProfile:
        return ConeProfile(
            grading=self.grading, extreme_columns=self.extreme_columns, inequality_rep=self.inequality_rep
        )


def extreme_ray_columns(matrix: GeneratorMatrix, threads: int = 1) -> tuple[int, ...]:
    return RationalCone(matrix, threads=threads).extreme_columns


def cone_inequality_rep(matrix: GeneratorMatrix) -> tuple[Vector, ...]:
    return RationalCone(matrix).inequality_rep


def cone_profile(matrix: GeneratorMatrix, threads: int = 1) -> ConeProfile:
    return RationalCone(matrix, threads=threads).profile()
