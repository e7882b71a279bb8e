import logging

from exact.normal_forms import identity, mat_mul, smith_normal_form
from models.matrix import GeneratorMatrix, LatticeNormalization

logger = logging.getLogger(__name__)


def lattice_normalize(matrix: GeneratorMatrix) -> LatticeNormalization:
    """Change coordinates so the columns of A generate the full lattice Z^r.

    With D = U·A·V the Smith form and d_1..d_r its nonzero invariant factors, the
    normalized coordinates of x are z_k = (U·x)_k / d_k for k < r, and the rows
    U[r:] cut out the column span. When A already generates Z^d the identity
    normalization is returned, so well-posed inputs keep their own coordinates.
    """
    form = smith_normal_form(matrix.rows)
    scales = form.invariants
    rank = len(scales)
    d = matrix.d

    if rank == d and all(s == 1 for s in scales):
        eye = tuple(tuple(row) for row in identity(d))
        logger.debug("Columns generate Z^%d, keeping original coordinates", d)
        return LatticeNormalization(
            rank=rank, transform=eye, scales=tuple(scales), kernel=(), reduced=matrix.entries, lift=eye
        )

    transform = form.u[:rank]
    kernel = form.u[rank:]
    image = mat_mul(transform, matrix.rows)
    reduced = [[value // scale for value in row] for row, scale in zip(image, scales)]
    lift = [row[:rank] for row in mat_mul(matrix.rows, form.v)]
    logger.info("Normalized a %dx%d matrix to rank %d (invariant factors %s)", d, matrix.n, rank, scales)
    return LatticeNormalization(
        rank=rank,
        transform=tuple(tuple(row) for row in transform),
        scales=tuple(scales),
        kernel=tuple(tuple(row) for row in kernel),
        reduced=tuple(tuple(row) for row in reduced),
        lift=tuple(tuple(row) for row in lift),
    )
