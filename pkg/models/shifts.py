"""Shift indices: the least λ >= 0 with y + λ·a_i in Q, or infinity."""

from enum import StrEnum
from typing import Final, Literal

from pydantic import BaseModel, ConfigDict, model_validator

from models.matrix import Vector

INFINITY: Final = "inf"

ShiftValue = int | Literal["inf"]


class CertificateKind(StrEnum):
    LP_INFEASIBLE = "lp_infeasible"
    NO_MINIMAL_SOLUTION = "no_minimal_solution"


class ShiftKind(StrEnum):
    BASIS = "basis"
    FUNDAMENTAL = "fundamental"


class ShiftCertificate(BaseModel):
    """Proof that no shift works.

    LP_INFEASIBLE carries the Farkas multipliers (as exact rational strings) of the
    real relaxation; NO_MINIMAL_SOLUTION records that the completion engine found no
    minimal solution at all.
    """

    model_config = ConfigDict(frozen=True)

    kind: CertificateKind
    multipliers: tuple[str, ...] = ()


class ShiftEntry(BaseModel):
    """Shift of `source` along column `column` (0-based).

    A finite entry carries `witness`: multiplicities x with A·x = source + value·a_column.
    """

    model_config = ConfigDict(frozen=True)

    source: Vector
    column: int
    value: ShiftValue
    extreme: bool = True
    witness: tuple[int, ...] | None = None
    certificate: ShiftCertificate | None = None

    @model_validator(mode="after")
    def validate_evidence(self) -> "ShiftEntry":
        if self.value == INFINITY:
            if self.certificate is None:
                raise ValueError(f"Infinite shift for {self.source} along column {self.column} needs a certificate")
        else:
            if self.value < 0:
                raise ValueError(f"Shift must be nonnegative, got {self.value}")
            if self.witness is None:
                raise ValueError(f"Finite shift for {self.source} along column {self.column} needs a witness")
        return self

    @property
    def is_finite(self) -> bool:
        return self.value != INFINITY


class ShiftTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ShiftKind
    entries: tuple[ShiftEntry, ...] = ()

    def lookup(self, source: Vector, column: int) -> ShiftEntry | None:
        return next((e for e in self.entries if e.source == source and e.column == column), None)

    def sources(self) -> list[Vector]:
        return list(dict.fromkeys(e.source for e in self.entries))

    def first_infinite(self, extreme_only: bool = True) -> ShiftEntry | None:
        return next((e for e in self.entries if not e.is_finite and (e.extreme or not extreme_only)), None)

    def column_bounds(self, n: int) -> tuple[ShiftValue, ...]:
        """n_i = max over sources of the shift along column i (0 without sources)."""
        bounds: list[ShiftValue] = [0] * n
        for e in self.entries:
            current = bounds[e.column]
            if current == INFINITY:
                continue
            if not e.is_finite:
                bounds[e.column] = INFINITY
            else:
                bounds[e.column] = max(current, e.value)
        return tuple(bounds)
