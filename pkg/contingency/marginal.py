"""Generator matrices of hierarchical marginal models.

Table cells are ordered with the first index varying fastest, so for a
2x2x2x2 table the cell (i1, i2, i3, i4) is column i1 + 2·i2 + 4·i3 + 8·i4.
Margin cells use the same order over their own indices, and the row blocks
follow the order of the margin family.
"""

import logging
from collections.abc import Sequence
from itertools import product

from geometry.double_description import independent_rows
from models.matrix import GeneratorMatrix, Vector
from models.tables import MarginalModel

logger = logging.getLogger(__name__)


def cells(sizes: Sequence[int]) -> list[Vector]:
    return [tuple(reversed(c)) for c in product(*(range(n) for n in reversed(sizes)))]


def marginal_matrix(model: MarginalModel) -> GeneratorMatrix:
    table_cells = cells(model.sizes)
    rows = []
    for margin in model.margins:
        axes = [k - 1 for k in margin]
        for margin_cell in cells([model.sizes[k] for k in axes]):
            rows.append([int(tuple(cell[k] for k in axes) == margin_cell) for cell in table_cells])
    logger.info("Model %s: %dx%d marginal matrix", model.describe(), len(rows), len(table_cells))
    return GeneratorMatrix.from_rows(rows)


def remove_redundant_rows(matrix: GeneratorMatrix) -> GeneratorMatrix:
    """Keep the earliest rows spanning the row space over Q."""
    keep = independent_rows(matrix.rows)
    if len(keep) < matrix.d:
        logger.info("Removed %d redundant rows", matrix.d - len(keep))
    return GeneratorMatrix.from_rows([matrix.entries[k] for k in keep])


def embed_block(upper: GeneratorMatrix, lower: GeneratorMatrix) -> GeneratorMatrix:
    """Block-diagonal matrix diag(upper, lower)."""
    rows = [list(row) + [0] * lower.n for row in upper.entries]
    rows.extend([0] * upper.n + list(row) for row in lower.entries)
    return GeneratorMatrix.from_rows(rows)


def table_matrix(model: MarginalModel, keep_redundant: bool = False) -> GeneratorMatrix:
    matrix = marginal_matrix(model)
    return matrix if keep_redundant else remove_redundant_rows(matrix)
