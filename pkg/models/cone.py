from pydantic import BaseModel, ConfigDict, model_validator

from models.matrix import GeneratorMatrix, IntMatrix, Vector


class ConeProfile(BaseModel):
    """Geometry of K = cone(a_1..a_n) in original coordinates.

    grading: integer vector c with c·a_i > 0 for every column
    extreme_columns: 0-based indices of the columns spanning extreme rays
    inequality_rep: rows B with K = {x in span(A) : Bx >= 0}
    """

    model_config = ConfigDict(frozen=True)

    grading: Vector
    extreme_columns: tuple[int, ...]
    inequality_rep: IntMatrix

    @model_validator(mode="after")
    def validate_ordering(self) -> "ConeProfile":
        if list(self.extreme_columns) != sorted(set(self.extreme_columns)):
            raise ValueError(f"Extreme columns must be strictly increasing, got {self.extreme_columns}")
        return self

    def check_against(self, matrix: GeneratorMatrix) -> None:
        """Raise ValueError if the profile is not a valid certificate for `matrix`."""
        for i, col in enumerate(matrix.columns):
            if sum(c * v for c, v in zip(self.grading, col)) <= 0:
                raise ValueError(f"Grading {self.grading} is not positive on column {i}")
            for row in self.inequality_rep:
                if sum(b * v for b, v in zip(row, col)) < 0:
                    raise ValueError(f"Column {i} violates inequality {row}")
