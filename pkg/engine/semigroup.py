"""The semigroup Q generated by the columns of A, worked in normalized coordinates."""

import logging
import threading
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from typing import Final

from engine.hilbert import hilbert_basis_vectors
from geometry.cone import RationalCone
from models.basis import HilbertBasis, HilbertElement
from models.matrix import GeneratorMatrix, Vector
from models.report import AnalysisSettings

logger = logging.getLogger(__name__)

ROOT: Final = -1
NOT_MEMBER: Final = -2


def add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Vector) -> Vector:
    return tuple(k * x for x in a)


@dataclass
class MembershipResult:
    """Outcome of a membership query; `witness` holds column multiplicities when b is in Q."""

    member: bool
    witness: tuple[int, ...] | None = None


class Semigroup:
    """Membership, Hilbert basis and point classification for Q.

    Decompositions are found by a depth-first search that subtracts columns and
    prunes every residual leaving the cone K; results are memoized per instance under a lock,
    so repeated queries during one analysis share their work.
    """

    def __init__(self, matrix: GeneratorMatrix, settings: AnalysisSettings | None = None):
        self.matrix = matrix
        self.settings = settings or AnalysisSettings()
        self.cone = RationalCone(matrix, threads=self.settings.threads)
        self.generators = self.cone.generators
        self.zero = self.cone.zero
        # point -> index of a column whose removal stays in Q, ROOT for 0, NOT_MEMBER otherwise
        self._steps: dict[Vector, int] = {self.zero: ROOT}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return len(self.generators)

    def _resolve(self, target: Vector) -> None:
        stack = [target]
        while stack:
            z = stack[-1]
            if z in self._steps:
                stack.pop()
                continue
            outcome = NOT_MEMBER
            for i, g in enumerate(self.generators):
                w = sub(z, g)
                state = self._steps.get(w)
                if state is None:
                    if not self.cone.contains(w):
                        self._steps[w] = NOT_MEMBER
                        continue
                    stack.append(w)
                    outcome = None
                    break
                if state != NOT_MEMBER:
                    outcome = i
                    break
            if outcome is not None:
                self._steps[z] = outcome
                stack.pop()

    def member(self, z: Vector) -> bool:
        if not self.cone.contains(z):
            return False
        with self._lock:
            self._resolve(z)
            return self._steps[z] != NOT_MEMBER

    def decompose(self, z: Vector) -> tuple[int, ...] | None:
        """Column multiplicities summing to z, or None when z is not in Q."""
        if not self.member(z):
            return None
        counts = [0] * self.n
        while z != self.zero:
            i = self._steps[z]
            counts[i] += 1
            z = sub(z, self.generators[i])
        return tuple(counts)

    def in_saturation(self, z: Vector) -> bool:
        return self.cone.contains(z)

    def is_hole(self, z: Vector) -> bool:
        return self.cone.contains(z) and not self.member(z)

    def degree(self, z: Vector) -> int:
        return self.cone.degree(z)

    def sorted_points(self, points: Iterable[Vector]) -> list[Vector]:
        return self.cone.sorted_points(points)

    def lift_all(self, points: Iterable[Vector]) -> tuple[Vector, ...]:
        return tuple(self.cone.lift(z) for z in self.sorted_points(points))

    @cached_property
    def hilbert_basis(self) -> list[Vector]:
        """Minimal Hilbert basis of Q_sat in normalized coordinates, in report order."""
        return hilbert_basis_vectors(self.cone)

    @cached_property
    def hole_basis(self) -> list[Vector]:
        return [b for b in self.hilbert_basis if not self.member(b)]

    def hilbert_basis_model(self) -> HilbertBasis:
        columns = set(self.generators)
        elements = tuple(
            HilbertElement(
                vector=self.cone.lift(b),
                degree=self.degree(b),
                is_generator=b in columns,
                is_hole=not self.member(b),
            )
            for b in self.hilbert_basis
        )
        return HilbertBasis(elements=elements)

    def classify_membership(self, x: Vector) -> MembershipResult:
        """Membership of an original-coordinate point, with witness."""
        z = self.cone.normalize(x)
        if z is None:
            return MembershipResult(member=False)
        witness = self.decompose(z)
        return MembershipResult(member=witness is not None, witness=witness)


def hilbert_basis_of_cone(matrix: GeneratorMatrix, settings: AnalysisSettings | None = None) -> HilbertBasis:
    return Semigroup(matrix, settings).hilbert_basis_model()


def semigroup_member(matrix: GeneratorMatrix, b: Vector) -> MembershipResult:
    if len(b) != matrix.d:
        raise ValueError(f"Point has {len(b)} coordinates, matrix has {matrix.d} rows")
    return Semigroup(matrix).classify_membership(tuple(b))
