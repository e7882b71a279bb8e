"""Extreme rays of a dual cone by the double description method.

For generators g_1..g_m spanning Q^r the dual cone {y : g·y >= 0 for every g} is
pointed, and its extreme rays are exactly the facet normals of cone(g_1..g_m).
The method starts from the simplicial cone cut out by r independent generators and
adds the remaining half-spaces one at a time, keeping only combinations of
adjacent rays (combinatorial adjacency test on the sets of tight constraints).
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import gcd, lcm

from sympy import Matrix

from models.matrix import Vector

logger = logging.getLogger(__name__)


def primitive_vector(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def independent_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of the earliest linearly independent rows."""
    if not rows:
        return []
    _, pivots = Matrix(rows).T.rref()
    return list(pivots)


@dataclass
class _Ray:
    vector: Vector
    zeros: frozenset[int]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def dual_extreme_rays(generators: Sequence[Vector], dim: int) -> list[Vector]:
    """Primitive integer extreme rays of {y in Q^dim : g·y >= 0 for all generators g}."""
    chosen = independent_rows(generators)
    if len(chosen) != dim:
        raise ValueError(f"Generators span a space of dimension {len(chosen)}, expected {dim}")

    inverse = Matrix([list(generators[i]) for i in chosen]).inv()
    rays: list[_Ray] = []
    for k in range(dim):
        entries = [inverse[row, k] for row in range(dim)]
        scale = lcm(*(int(e.q) for e in entries))
        vector = primitive_vector([int(e * scale) for e in entries])
        rays.append(_Ray(vector, frozenset(chosen[j] for j in range(dim) if j != k)))

    chosen_set = set(chosen)
    for j, g in enumerate(generators):
        if j in chosen_set:
            continue
        values = [_dot(g, ray.vector) for ray in rays]
        positive = [(ray, v) for ray, v in zip(rays, values) if v > 0]
        negative = [(ray, v) for ray, v in zip(rays, values) if v < 0]
        tight = [_Ray(ray.vector, ray.zeros | {j}) for ray, v in zip(rays, values) if v == 0]
        created: list[_Ray] = []
        for p, vp in positive:
            for q, vq in negative:
                common = p.zeros & q.zeros
                if len(common) < dim - 2:
                    continue
                if any(other is not p and other is not q and common <= other.zeros for other in rays):
                    continue
                combined = tuple(vp * a - vq * b for a, b in zip(q.vector, p.vector))
                created.append(_Ray(primitive_vector(combined), common | {j}))
        rays = [ray for ray, _ in positive] + tight + created
        logger.debug("Constraint %d: %d rays (%d new)", j, len(rays), len(created))

    return sorted({ray.vector for ray in rays})
