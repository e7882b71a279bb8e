"""Generator matrices and their lattice normalization.

Matrix text format (shared with the CLI):
    first line  "d n"
    then d lines of n whitespace-separated integers

Vectors are one line of whitespace-separated integers.
"""

from typing import ClassVar

from pydantic import BaseModel, ConfigDict, model_validator

Vector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


def parse_vector(text: str) -> Vector:
    """Parse a whitespace-separated integer vector."""
    try:
        return tuple(int(token) for token in text.split())
    except ValueError as e:
        raise ValueError(f"Vector must contain integers only, got {text!r}") from e


def format_vector(vector: Vector) -> str:
    return " ".join(str(v) for v in vector)


class GeneratorMatrix(BaseModel):
    """The d×n integer matrix A whose columns a_1..a_n generate the semigroup Q.

    Entries are stored row by row. The model is frozen (and therefore hashable) so
    that analysis objects can be keyed by the matrix they were built from.
    """

    model_config = ConfigDict(frozen=True)

    MAX_TEXT_DIM: ClassVar[int] = 10_000

    entries: IntMatrix

    @model_validator(mode="after")
    def validate_shape(self) -> "GeneratorMatrix":
        if len(self.entries) < 1:
            raise ValueError("Generator matrix needs at least one row (d >= 1)")
        width = len(self.entries[0])
        if width < 1:
            raise ValueError("Generator matrix needs at least one column (n >= 1)")
        for k, row in enumerate(self.entries):
            if len(row) != width:
                raise ValueError(f"Row {k} has {len(row)} entries, expected {width}")
        for i in range(width):
            if all(row[i] == 0 for row in self.entries):
                raise ValueError(f"Column {i} is the zero vector")
        return self

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    @property
    def columns(self) -> list[Vector]:
        return [tuple(row[i] for row in self.entries) for i in range(self.n)]

    def column(self, i: int) -> Vector:
        return tuple(row[i] for row in self.entries)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self.entries for v in row)

    @classmethod
    def from_rows(cls, rows) -> "GeneratorMatrix":
        return cls(entries=tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_columns(cls, columns) -> "GeneratorMatrix":
        columns = [tuple(int(v) for v in col) for col in columns]
        if not columns:
            raise ValueError("Generator matrix needs at least one column (n >= 1)")
        return cls(entries=tuple(zip(*columns)))

    def to_text(self) -> str:
        lines = [f"{self.d} {self.n}"]
        lines.extend(format_vector(row) for row in self.entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GeneratorMatrix":
        lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        if not lines:
            raise ValueError("Matrix text is empty")
        header = parse_vector(lines[0])
        if len(header) != 2:
            raise ValueError(f"Matrix header must be 'd n', got {lines[0]!r}")
        d, n = header
        if not (1 <= d <= cls.MAX_TEXT_DIM and 1 <= n <= cls.MAX_TEXT_DIM):
            raise ValueError(f"Matrix dimensions out of range: {d}x{n}")
        body = lines[1:]
        if len(body) != d:
            raise ValueError(f"Matrix header announces {d} rows, found {len(body)}")
        rows = []
        for k, line in enumerate(body):
            row = parse_vector(line)
            if len(row) != n:
                raise ValueError(f"Matrix row {k} has {len(row)} entries, expected {n}")
            rows.append(row)
        return cls.from_rows(rows)


class LatticeNormalization(BaseModel):
    """Coordinates in which the columns of A generate the full lattice Z^r.

    For x in the lattice L generated by the columns, the normalized point is
    z_k = (transform·x)_k / scales_k, and x = lift·z. A point lies in L exactly when
    every scaled coordinate divides evenly and every kernel row vanishes on it.

    Fields:
        rank: r, the rank of A
        transform: r×d integer matrix (leading rows of the Smith left transform)
        scales: the r nonzero invariant factors of A
        kernel: (d-r)×d integer rows vanishing on the column span
        reduced: r×n matrix whose columns generate Z^r
        lift: d×r matrix mapping normalized points back to original coordinates
    """

    model_config = ConfigDict(frozen=True)

    rank: int
    transform: IntMatrix
    scales: tuple[int, ...]
    kernel: IntMatrix
    reduced: IntMatrix
    lift: IntMatrix

    @model_validator(mode="after")
    def validate_dimensions(self) -> "LatticeNormalization":
        if len(self.transform) != self.rank or len(self.scales) != self.rank or len(self.reduced) != self.rank:
            raise ValueError(f"Normalization blocks disagree with rank {self.rank}")
        if any(s <= 0 for s in self.scales):
            raise ValueError(f"Scales must be positive, got {self.scales}")
        return self

    @property
    def is_identity(self) -> bool:
        d = len(self.lift)
        if self.rank != d or self.kernel:
            return False
        return all(self.transform[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d)) and all(
            s == 1 for s in self.scales
        )

    def normalize(self, x: Vector) -> Vector | None:
        """Normalized coordinates of x, or None when x lies outside the lattice L."""
        for row in self.kernel:
            if sum(r * v for r, v in zip(row, x)) != 0:
                return None
        z = []
        for row, scale in zip(self.transform, self.scales):
            value = sum(r * v for r, v in zip(row, x))
            if value % scale != 0:
                return None
            z.append(value // scale)
        return tuple(z)

    def lift_point(self, z: Vector) -> Vector:
        return tuple(sum(row[k] * z[k] for k in range(self.rank)) for row in self.lift)

    def reduced_columns(self) -> list[Vector]:
        n = len(self.reduced[0]) if self.reduced else 0
        return [tuple(row[i] for row in self.reduced) for i in range(n)]
