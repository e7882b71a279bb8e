from math import prod
from typing import ClassVar

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class MarginalModel(BaseModel):
    """Hierarchical marginal model of an s-way contingency table.

    sizes: (n_1, ..., n_s) level counts per table index
    margins: index subsets of {1..s} (1-based), e.g. ((1, 2), (2, 3, 4))
    """

    model_config = ConfigDict(frozen=True)

    MAX_WAYS: ClassVar[int] = 9  # margins are written as digit strings

    sizes: tuple[int, ...]
    margins: tuple[tuple[int, ...], ...]

    @field_validator("sizes")
    @classmethod
    def validate_sizes(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if not v:
            raise ValueError("Table needs at least one index")
        if len(v) > cls.MAX_WAYS:
            raise ValueError(f"At most {cls.MAX_WAYS} table indices are supported, got {len(v)}")
        if any(size < 1 for size in v):
            raise ValueError(f"Table sizes must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def validate_margins(self) -> "MarginalModel":
        if not self.margins:
            raise ValueError("Model needs at least one margin")
        s = len(self.sizes)
        for margin in self.margins:
            if not margin:
                raise ValueError("Margins must be nonempty index subsets")
            if len(set(margin)) != len(margin):
                raise ValueError(f"Margin {margin} repeats an index")
            if any(k < 1 or k > s for k in margin):
                raise ValueError(f"Margin {margin} is not a subset of 1..{s}")
        return self

    @property
    def cell_count(self) -> int:
        return prod(self.sizes)

    @classmethod
    def parse(cls, sizes: str, margins: str) -> "MarginalModel":
        """Build a model from CLI syntax such as ("2x2x2x2", "12,13,14,234")."""
        try:
            parsed_sizes = tuple(int(part) for part in sizes.lower().split("x"))
        except ValueError as e:
            raise ValueError(f"Table sizes must look like 2x3x4, got {sizes!r}") from e
        parsed_margins = []
        for token in margins.split(","):
            token = token.strip()
            if not token.isdigit():
                raise ValueError(f"Margins must be comma-separated digit strings, got {token!r}")
            parsed_margins.append(tuple(int(ch) for ch in token))
        return cls(sizes=parsed_sizes, margins=tuple(parsed_margins))

    def describe(self) -> str:
        sizes = "x".join(str(n) for n in self.sizes)
        margins = "".join("[" + "".join(str(k) for k in m) + "]" for m in self.margins)
        return f"{sizes} {margins}"
