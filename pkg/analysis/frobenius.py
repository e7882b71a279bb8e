from collections.abc import Sequence
from math import gcd

from analysis.holes import enumerate_holes
from exceptions import GcdNotOne
from models.matrix import GeneratorMatrix
from models.report import AnalysisSettings


def frobenius_matrix(integers: Sequence[int]) -> GeneratorMatrix:
    """The 1 x n generator matrix of a numerical semigroup, after validation."""
    values = tuple(integers)
    if len(values) < 2:
        raise ValueError(f"Frobenius number needs at least two integers, got {len(values)}")
    if any(v <= 0 for v in values):
        raise ValueError(f"Frobenius integers must be positive, got {values}")
    if gcd(*values) != 1:
        raise GcdNotOne(f"gcd{values} = {gcd(*values)}; every large enough integer must be representable")
    return GeneratorMatrix.from_rows([values])


def frobenius_number(integers: Sequence[int], settings: AnalysisSettings | None = None) -> int:
    """Largest integer that is not a nonnegative combination of `integers`, or -1 if there is none."""
    holes = enumerate_holes(frobenius_matrix(integers), settings)
    return max((h[0] for h in holes), default=-1)
