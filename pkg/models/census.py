from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from models.matrix import IntMatrix, Vector


class PointClass(StrEnum):
    IN_Q = "IN_Q"
    HOLE = "HOLE"
    OUTSIDE_QSAT = "OUTSIDE_QSAT"


class SaturationTag(StrEnum):
    SAT = "SAT"
    NONSAT = "NONSAT"


class BoxCensus(BaseModel):
    """Brute-force classification of every lattice point of a box.

    SAT tags are optimistic: a point is NONSAT only when the box shows a hole h with
    x + h also a hole inside the box. Tags are exact for x whenever x + H fits in the box.
    """

    model_config = ConfigDict(frozen=True)

    box: tuple[tuple[int, int], ...]
    classification: dict[Vector, PointClass]
    saturation_tags: dict[Vector, SaturationTag]

    def points(self, kind: PointClass) -> list[Vector]:
        return sorted(p for p, c in self.classification.items() if c is kind)

    @property
    def holes(self) -> list[Vector]:
        return self.points(PointClass.HOLE)

    def tagged(self, tag: SaturationTag) -> list[Vector]:
        return sorted(p for p, t in self.saturation_tags.items() if t is tag)

    def contains(self, x: Vector) -> bool:
        return all(lo <= v <= hi for (lo, hi), v in zip(self.box, x))


class PointReport(BaseModel):
    """Classification of one right-hand side b.

    `witness` holds column multiplicities x >= 0 with A·x = b for IN_Q points;
    `tag` says whether an IN_Q point is a saturation point.
    """

    model_config = ConfigDict(frozen=True)

    point: Vector
    kind: PointClass
    witness: tuple[int, ...] | None = None
    tag: SaturationTag | None = None

    def to_payload(self) -> dict:
        return {
            "point": list(self.point),
            "class": self.kind.value,
            "witness": None if self.witness is None else list(self.witness),
            "tag": None if self.tag is None else self.tag.value,
        }


class OracleReport(BaseModel):
    """What the brute-force oracle sees inside one box."""

    model_config = ConfigDict(frozen=True)

    matrix: IntMatrix
    box: tuple[tuple[int, int], ...]
    holes: tuple[Vector, ...]
    non_saturation: tuple[Vector, ...]
    min_ss: tuple[Vector, ...] | None = None
    min_sq: tuple[Vector, ...] | None = None
    min_sqsat: tuple[Vector, ...] | None = None

    def to_payload(self) -> dict:
        def vectors(points):
            return None if points is None else [list(p) for p in points]

        return {
            "matrix": [list(row) for row in self.matrix],
            "box": [list(r) for r in self.box],
            "holes": vectors(self.holes),
            "nonSaturation": vectors(self.non_saturation),
            "minSS": vectors(self.min_ss),
            "minSQ": vectors(self.min_sq),
            "minSQsat": vectors(self.min_sqsat),
        }
