"""Run settings, CLI requests and the aggregated analysis report."""

import os
from collections.abc import Mapping
from enum import StrEnum
from pathlib import Path
from typing import ClassVar, Final

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from models.basis import HilbertBasis
from models.cone import ConeProfile
from models.matrix import GeneratorMatrix, Vector
from models.saturation import FinitenessEquivalences, HoleSet, MinimalSet, SaturationSets
from models.shifts import ShiftEntry, ShiftTable
from models.tables import MarginalModel

THREADS_ENV: Final = "SEMIHOLE_THREADS"


class Stage(StrEnum):
    HILBERT = "hilbert"
    FUNDAMENTAL = "fundamental"
    FINITENESS = "finiteness"
    HOLES = "holes"
    SATURATION = "saturation"
    MINSETS = "minsets"


# Each stage requires every stage listed before it.
STAGE_ORDER: Final = tuple(Stage)


def close_stages(stages) -> tuple[Stage, ...]:
    """Smallest prerequisite-closed stage tuple containing `stages`."""
    stages = [Stage(s) for s in stages]
    if not stages:
        return ()
    last = max(STAGE_ORDER.index(s) for s in stages)
    return STAGE_ORDER[: last + 1]


class Command(StrEnum):
    ANALYZE = "analyze"
    TABLE = "table"
    FROBENIUS = "frobenius"
    HILBERT = "hilbert"
    MEMBER = "member"
    ORACLE = "oracle"


class AnalysisSettings(BaseModel):
    """Tunables for one analysis run.

    Fields:
        threads: worker threads for independent work items (results never depend on it)
        shift_scan_limit: membership probes y + λ·a_i tried before falling back to completion
        degree_bound: degree covered by bounded minimal-set searches (None = derived default)
        search_point_limit: cap on semigroup points a bounded search may visit
        completion_node_limit: cap on nodes the completion engine may create
    """

    model_config = ConfigDict(frozen=True)

    DEFAULT_SCAN_LIMIT: ClassVar[int] = 8

    threads: int = 1
    shift_scan_limit: int = DEFAULT_SCAN_LIMIT
    degree_bound: int | None = None
    search_point_limit: int = 20_000
    completion_node_limit: int = 2_000_000

    @field_validator("threads", "search_point_limit", "completion_node_limit")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"Value must be at least 1, got {v}")
        return v

    @field_validator("shift_scan_limit")
    @classmethod
    def validate_scan_limit(cls, v: int) -> int:
        if v < 0:
            raise ValueError(f"Scan limit must be nonnegative, got {v}")
        return v

    @field_validator("degree_bound")
    @classmethod
    def validate_degree_bound(cls, v: int | None) -> int | None:
        if v is not None and v < 0:
            raise ValueError(f"Degree bound must be nonnegative, got {v}")
        return v

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides) -> "AnalysisSettings":
        """Settings with `threads` taken from SEMIHOLE_THREADS unless overridden."""
        environ = os.environ if environ is None else environ
        values = {}
        raw = environ.get(THREADS_ENV)
        if raw:
            try:
                values["threads"] = int(raw)
            except ValueError as e:
                raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from e
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class AnalysisRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    matrix_path: Path | None = None
    table: MarginalModel | None = None
    keep_redundant: bool = False
    emit_path: Path | None = None
    integers: tuple[int, ...] | None = None
    point: Vector | None = None
    box: tuple[tuple[int, int], ...] | None = None
    stages: tuple[Stage, ...] = STAGE_ORDER
    output_path: Path | None = None
    timings: bool = True
    verbosity: int = 0
    settings: AnalysisSettings = AnalysisSettings()

    @field_validator("stages")
    @classmethod
    def validate_stages(cls, v: tuple[Stage, ...]) -> tuple[Stage, ...]:
        closed = close_stages(v)
        if tuple(v) != closed:
            raise ValueError(f"Stages must be closed under prerequisites, got {[s.value for s in v]}")
        return v

    @model_validator(mode="after")
    def validate_source(self) -> "AnalysisRequest":
        match self.command:
            case Command.ANALYZE | Command.HILBERT | Command.MEMBER | Command.ORACLE:
                if self.matrix_path is None:
                    raise ValueError(f"'{self.command}' needs a matrix file")
            case Command.TABLE:
                if self.table is None:
                    raise ValueError("'table' needs sizes and --margins")
            case Command.FROBENIUS:
                if not self.integers:
                    raise ValueError("'frobenius' needs at least one integer")
        if self.command is Command.MEMBER and self.point is None:
            raise ValueError("'member' needs a point")
        if self.command is Command.ORACLE and self.box is None:
            raise ValueError("'oracle' needs --box")
        return self


def _vectors(points) -> list[list[int]] | None:
    return None if points is None else [list(p) for p in points]


def _minimal_set(block: MinimalSet | None) -> dict | None:
    if block is None:
        return None
    return {
        "points": _vectors(block.points),
        "completeness": block.completeness.value,
        "bound": block.bound,
        "note": block.note,
    }


def _shift_row(entry: ShiftEntry, source_key: str = "basisElement") -> dict:
    row = {
        source_key: list(entry.source),
        "column": entry.column + 1,
        "value": entry.value,
        "extreme": entry.extreme,
    }
    if entry.witness is not None:
        row["witness"] = list(entry.witness)
    if entry.certificate is not None:
        row["certificate"] = {"kind": entry.certificate.kind.value, "multipliers": list(entry.certificate.multipliers)}
    return row


class SaturationReport(BaseModel):
    """Everything one run computed; None marks a stage that did not run."""

    model_config = ConfigDict(frozen=True)

    matrix: GeneratorMatrix
    pointed: bool = True
    rank: int | None = None
    profile: ConeProfile | None = None
    hilbert_basis: HilbertBasis | None = None
    hole_set: HoleSet | None = None
    shift_table: ShiftTable | None = None
    fundamental_shift_table: ShiftTable | None = None
    column_bounds: tuple[int | str, ...] | None = None
    saturation: SaturationSets | None = None
    equivalences: FinitenessEquivalences | None = None
    frobenius_number: int | None = None
    errors: tuple[str, ...] = ()
    timings_ms: dict[str, float] = {}

    def to_payload(self) -> dict:
        """JSON-ready payload with the published field names (column indices 1-based)."""
        profile = self.profile
        basis = self.hilbert_basis
        holes = self.hole_set
        finiteness = None
        if holes is not None and holes.finiteness is not None:
            verdict = holes.finiteness
            finiteness = {
                "verdict": verdict.verdict.value,
                "witness": None if verdict.witness is None else _shift_row(verdict.witness),
                "note": verdict.note,
                "columnBounds": None if self.column_bounds is None else list(self.column_bounds),
            }
        saturation = self.saturation or SaturationSets()
        payload = {
            "matrix": [list(row) for row in self.matrix.entries],
            "rank": self.rank,
            "pointed": self.pointed,
            "grading": None if profile is None else list(profile.grading),
            "extremeColumns": None if profile is None else [i + 1 for i in profile.extreme_columns],
            "hilbertBasis": None
            if basis is None
            else [
                {"vector": list(e.vector), "degree": e.degree, "isGenerator": e.is_generator, "isHole": e.is_hole}
                for e in basis.elements
            ],
            "fundamentalHoles": None if holes is None else _vectors(holes.fundamental),
            "shiftTable": None if self.shift_table is None else [_shift_row(e) for e in self.shift_table.entries],
            "finiteness": finiteness,
            "holes": None if holes is None else _vectors(holes.holes),
            "nonSaturation": _vectors(saturation.non_saturation),
            "minSS": _minimal_set(saturation.min_ss),
            "minSQ": _minimal_set(saturation.min_sq),
            "minSQsat": _minimal_set(saturation.min_sqsat),
            "theorem21": None
            if self.equivalences is None
            else self.equivalences.model_dump(by_alias=True),
            "timingsMs": dict(self.timings_ms),
        }
        if self.fundamental_shift_table is not None:
            payload["fundamentalShiftTable"] = [_shift_row(e, "hole") for e in self.fundamental_shift_table.entries]
        if self.frobenius_number is not None:
            payload["frobeniusNumber"] = self.frobenius_number
        return payload
