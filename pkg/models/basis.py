from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from models.matrix import Vector


class VariableSign(StrEnum):
    NONNEGATIVE = "nonnegative"
    NONPOSITIVE = "nonpositive"
    FREE = "free"


class SignPattern(BaseModel):
    model_config = ConfigDict(frozen=True)

    signs: tuple[VariableSign, ...]

    @classmethod
    def nonnegative(cls, count: int) -> "SignPattern":
        return cls(signs=(VariableSign.NONNEGATIVE,) * count)

    def __len__(self) -> int:
        return len(self.signs)

    def respects(self, x: Vector) -> bool:
        for sign, value in zip(self.signs, x):
            if sign is VariableSign.NONNEGATIVE and value < 0:
                return False
            if sign is VariableSign.NONPOSITIVE and value > 0:
                return False
        return True

    def dominated(self, smaller: Vector, larger: Vector) -> bool:
        """True if larger - smaller respects the pattern on every sign-restricted coordinate."""
        for sign, s, t in zip(self.signs, smaller, larger):
            if sign is VariableSign.NONNEGATIVE and s > t:
                return False
            if sign is VariableSign.NONPOSITIVE and s < t:
                return False
        return True


class DioSolutionSet(BaseModel):
    """Solutions of Mx = b under a sign pattern.

    Every solution is an inhomogeneous minimal solution plus a nonnegative integer
    combination of the homogeneous basis.
    """

    model_config = ConfigDict(frozen=True)

    inhomogeneous_minimal: tuple[Vector, ...]
    homogeneous_basis: tuple[Vector, ...]


class HilbertElement(BaseModel):
    model_config = ConfigDict(frozen=True)

    vector: Vector
    degree: int
    is_generator: bool
    is_hole: bool


class HilbertBasis(BaseModel):
    """Minimal Hilbert basis of K ∩ L, sorted by degree then lexicographically."""

    model_config = ConfigDict(frozen=True)

    elements: tuple[HilbertElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def vectors(self) -> list[Vector]:
        return [e.vector for e in self.elements]

    @property
    def holes(self) -> list[Vector]:
        return [e.vector for e in self.elements if e.is_hole]
