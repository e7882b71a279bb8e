"""Minimal nonnegative solutions of homogeneous systems by Contejean-Devie completion.

Starting from the unit vectors, a partial solution p is extended by e_j only when
the defect M·p points against column j (⟨M·p, M·e_j⟩ < 0), and dropped as soon
as it dominates a solution already found. Points are processed level by level
(total size), so every solution is minimal when it is first reached.
"""

import logging
from collections.abc import Sequence

from exceptions import UnsupportedSystem
from models.matrix import Vector

logger = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 2_000_000


def _dominates(larger: Vector, smaller: Vector) -> bool:
    return all(a >= b for a, b in zip(larger, smaller))


def minimal_solutions(
    columns: Sequence[Vector],
    bounded: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> list[Vector]:
    """Minimal nonzero y >= 0 with sum_j y_j·columns[j] = 0.

    When `bounded` names a coordinate, only solutions with y[bounded] <= 1 are searched.
    """
    m = len(columns)
    if m == 0:
        return []
    height = len(columns[0])
    found: list[Vector] = []
    frontier: dict[Vector, Vector] = {}
    for j in range(m):
        unit = tuple(1 if k == j else 0 for k in range(m))
        frontier[unit] = tuple(columns[j])
    created = m
    level = 1

    while frontier:
        ordered = sorted(frontier)
        solved = [p for p in ordered if not any(frontier[p])]
        found.extend(solved)
        following: dict[Vector, Vector] = {}
        for p in ordered:
            defect = frontier[p]
            if not any(defect):
                continue
            for j in range(m):
                column = columns[j]
                if sum(defect[k] * column[k] for k in range(height)) >= 0:
                    continue
                if j == bounded and p[j] >= 1:
                    continue
                q = p[:j] + (p[j] + 1,) + p[j + 1 :]
                if q in following or any(_dominates(q, s) for s in found):
                    continue
                following[q] = tuple(defect[k] + column[k] for k in range(height))
                created += 1
                if created > node_limit:
                    raise UnsupportedSystem(f"Completion exceeded {node_limit} nodes at level {level}")
        logger.debug("Completion level %d: %d solutions so far, %d open nodes", level, len(found), len(following))
        frontier = following
        level += 1
    return found
