from enum import StrEnum

from pydantic import BaseModel, ConfigDict
from pydantic.alias_generators import to_camel

from models.matrix import Vector
from models.shifts import ShiftEntry, ShiftTable

SATURATED_NOTE = "saturated"


class Finiteness(StrEnum):
    FINITE = "FINITE"
    INFINITE = "INFINITE"
    NOT_RUN = "NOT_RUN"


class Completeness(StrEnum):
    COMPLETE = "COMPLETE"
    BOUNDED_SEARCH = "BOUNDED_SEARCH"


class FinitenessVerdict(BaseModel):
    """Whether the hole set H is finite.

    FINITE carries the shift table over hole-flagged basis elements; INFINITE carries
    the first infinite entry (basis element, extreme column) as its witness.
    """

    model_config = ConfigDict(frozen=True)

    verdict: Finiteness
    witness: ShiftEntry | None = None
    table: ShiftTable | None = None
    note: str | None = None

    @property
    def is_finite(self) -> bool:
        return self.verdict is Finiteness.FINITE

    @property
    def saturated(self) -> bool:
        return self.note == SATURATED_NOTE


class HoleSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    fundamental: tuple[Vector, ...]
    holes: tuple[Vector, ...] | None = None
    finiteness: FinitenessVerdict = FinitenessVerdict(verdict=Finiteness.NOT_RUN)


class MinimalSet(BaseModel):
    """One of min(S;S), min(S;Q), min(S;Q_sat).

    BOUNDED_SEARCH sets are exact up to degree `bound` and say nothing beyond it.
    """

    model_config = ConfigDict(frozen=True)

    points: tuple[Vector, ...]
    completeness: Completeness = Completeness.COMPLETE
    bound: int | None = None
    note: str | None = None


class SaturationSets(BaseModel):
    model_config = ConfigDict(frozen=True)

    non_saturation: tuple[Vector, ...] | None = None
    min_ss: MinimalSet | None = None
    min_sq: MinimalSet | None = None
    min_sqsat: MinimalSet | None = None


class FinitenessEquivalences(BaseModel):
    """Five statements about Q that hold or fail together."""

    model_config = ConfigDict(frozen=True, alias_generator=to_camel, populate_by_name=True)

    holes_finite: bool
    non_saturation_finite: bool
    min_ss_finite: bool
    extreme_multiples_saturate: bool
    cone_polyhedral: bool

    @property
    def consistent(self) -> bool:
        values = {
            self.holes_finite,
            self.non_saturation_finite,
            self.min_ss_finite,
            self.extreme_multiples_saturate,
            self.cone_polyhedral,
        }
        return len(values) == 1
