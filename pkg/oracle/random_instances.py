import logging

import numpy as np

from models.matrix import GeneratorMatrix
from oracle.census import integer_grading

logger = logging.getLogger(__name__)


def random_instance(seed: int, max_dim: int = 3, max_columns: int = 5, entry_max: int = 4) -> GeneratorMatrix:
    """Reproducible pointed instance with entries in [0, entry_max].

    Draws with a zero column, or whose cone is not pointed, are discarded and redrawn
    from the same generator, so a seed always maps to the same matrix.
    """
    if max_dim < 1 or max_columns < 1 or entry_max < 1:
        raise ValueError(f"Instance limits must be positive, got d<={max_dim}, n<={max_columns}, entries<={entry_max}")
    rng = np.random.default_rng(seed)
    attempts = 0
    while True:
        attempts += 1
        d = int(rng.integers(1, max_dim + 1))
        n = int(rng.integers(1, max_columns + 1))
        entries = rng.integers(0, entry_max + 1, size=(d, n))
        if not entries.any(axis=0).all():
            continue
        matrix = GeneratorMatrix.from_rows(entries.tolist())
        if integer_grading(matrix) is not None:
            logger.debug("Seed %d gave a %dx%d instance after %d draws", seed, d, n, attempts)
            return matrix
