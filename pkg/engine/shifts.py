"""Shift indices: the least λ >= 0 with y + λ·a_i in Q.

For a hole y the shift solves sum_{j != i} x_j·a_j - λ·a_i = y over nonnegative
integers. Three tiers answer it, cheapest first:

1. the real relaxation of that system (infeasible means no shift exists),
2. membership probes of y + λ·a_i for λ = 1..shift_scan_limit,
3. the completion engine; the least λ over its minimal solutions is the answer,
   since adding a homogeneous solution never lowers λ.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from engine.diophantine import solve_diophantine
from engine.semigroup import Semigroup, add, scale
from exact.simplex import FarkasCertificate, LinearConstraint, lp_feasible
from models.matrix import GeneratorMatrix, Vector
from models.report import AnalysisSettings
from models.shifts import INFINITY, CertificateKind, ShiftCertificate, ShiftEntry, ShiftKind, ShiftTable

logger = logging.getLogger(__name__)


class ShiftSolver:
    def __init__(self, semigroup: Semigroup):
        self.semigroup = semigroup
        self.settings = semigroup.settings
        self.extreme = set(semigroup.cone.extreme_columns)

    def real_relaxation(self, z: Vector, i: int) -> FarkasCertificate | None:
        """Farkas certificate when sum_{j != i} x_j·g_j - λ·g_i = z has no real solution >= 0."""
        gens = self.semigroup.generators
        others = [j for j in range(len(gens)) if j != i]
        names = [f"x{j}" for j in others] + ["lam"]
        constraints = []
        for k in range(len(z)):
            coefficients = {f"x{j}": gens[j][k] for j in others}
            coefficients["lam"] = -gens[i][k]
            constraints.append(LinearConstraint.eq(coefficients, z[k]))
        result = lp_feasible(constraints, nonnegative=names)
        return None if result.feasible else result.certificate

    def shift(self, z: Vector, i: int) -> ShiftEntry:
        sg = self.semigroup
        source = sg.cone.lift(z)
        extreme = i in self.extreme

        witness = sg.decompose(z)
        if witness is not None:
            return ShiftEntry(source=source, column=i, value=0, extreme=extreme, witness=witness)

        certificate = self.real_relaxation(z, i)
        if certificate is not None:
            logger.debug("Shift of %s along column %d is infinite by LP", source, i)
            return ShiftEntry(
                source=source,
                column=i,
                value=INFINITY,
                extreme=extreme,
                certificate=ShiftCertificate(
                    kind=CertificateKind.LP_INFEASIBLE, multipliers=tuple(str(m) for m in certificate.multipliers)
                ),
            )

        g = sg.generators[i]
        for lam in range(1, self.settings.shift_scan_limit + 1):
            witness = sg.decompose(add(z, scale(lam, g)))
            if witness is not None:
                return ShiftEntry(source=source, column=i, value=lam, extreme=extreme, witness=witness)
        return self._by_completion(z, i, source, extreme)

    def _by_completion(self, z: Vector, i: int, source: Vector, extreme: bool) -> ShiftEntry:
        gens = self.semigroup.generators
        others = [j for j in range(len(gens)) if j != i]
        rows = [[gens[j][k] for j in others] + [-gens[i][k]] for k in range(len(z))]
        solutions = solve_diophantine(rows, z, node_limit=self.settings.completion_node_limit).inhomogeneous_minimal
        if not solutions:
            logger.debug("Shift of %s along column %d is infinite by completion", source, i)
            return ShiftEntry(
                source=source,
                column=i,
                value=INFINITY,
                extreme=extreme,
                certificate=ShiftCertificate(kind=CertificateKind.NO_MINIMAL_SOLUTION),
            )
        best = min(solutions, key=lambda x: (x[-1], x))
        counts = [0] * len(gens)
        for position, j in enumerate(others):
            counts[j] = best[position]
        return ShiftEntry(source=source, column=i, value=best[-1], extreme=extreme, witness=tuple(counts))

    def first_relaxation_failure(self, sources: Sequence[Vector], columns: Sequence[int]) -> ShiftEntry | None:
        """First (source, column) pair, in order, whose real relaxation is infeasible."""
        sg = self.semigroup
        pairs = [(z, i) for z in sources if not sg.member(z) for i in columns]
        with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
            certificates = list(pool.map(lambda pair: self.real_relaxation(*pair), pairs))
        for (z, i), certificate in zip(pairs, certificates):
            if certificate is not None:
                return ShiftEntry(
                    source=sg.cone.lift(z),
                    column=i,
                    value=INFINITY,
                    extreme=i in self.extreme,
                    certificate=ShiftCertificate(
                        kind=CertificateKind.LP_INFEASIBLE,
                        multipliers=tuple(str(m) for m in certificate.multipliers),
                    ),
                )
        return None

    def table(self, kind: ShiftKind, sources: Sequence[Vector], columns: Sequence[int]) -> ShiftTable:
        pairs = [(z, i) for z in sources for i in columns]
        with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
            entries = list(pool.map(lambda pair: self.shift(*pair), pairs))
        return ShiftTable(kind=kind, entries=tuple(entries))


def min_shift(
    matrix: GeneratorMatrix, y: Vector, i: int, settings: AnalysisSettings | None = None
) -> ShiftEntry:
    sg = Semigroup(matrix, settings)
    if not 0 <= i < sg.n:
        raise ValueError(f"Column index {i} out of range for {sg.n} columns")
    z = sg.cone.normalize(tuple(y))
    if z is None or not sg.in_saturation(z):
        raise ValueError(f"Point {tuple(y)} is not in the saturation Q_sat")
    return ShiftSolver(sg).shift(z, i)
