"""Minimal Hilbert basis of Q_sat = K ∩ Z^r, by parallelepiped enumeration plus reduction.

Every irreducible lattice point of K is a column or a lattice point of the half-open
parallelepiped of some simplicial cone spanned by r independent extreme columns.
Those parallelepipeds are enumerated through Hermite coset representatives, and the
candidates are reduced in the slack order: z is dropped when some other candidate y
of smaller degree has B·y <= B·z componentwise, i.e. z - y is a nonzero point of K.
No completion procedure runs here; `engine.completion` is only used for the shift
systems and `solve_diophantine`.
"""

import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import combinations, product
from math import floor

import numpy as np

from exact.normal_forms import determinant, hermite_normal_form
from geometry.cone import RationalCone
from models.matrix import Vector

logger = logging.getLogger(__name__)

_INT64_SAFE = 2**62


def parallelepiped_points(rays: Sequence[Vector]) -> Iterator[Vector]:
    """Nonzero lattice points of {sum θ_j·rays[j] : 0 <= θ_j < 1} for r independent rays in Z^r."""
    r = len(rays)
    columns = [[rays[j][i] for j in range(r)] for i in range(r)]
    form = hermite_normal_form(columns)
    h, u = form.h, form.u
    diagonal = [h[i][i] for i in range(r)]
    for x in product(*(range(size) for size in diagonal)):
        if not any(x):
            continue
        w: list[Fraction] = []
        for i in range(r):
            acc = Fraction(x[i]) - sum((h[i][j] * w[j] for j in range(i)), Fraction(0))
            w.append(acc / h[i][i])
        theta = [sum((u[i][j] * w[j] for j in range(r)), Fraction(0)) for i in range(r)]
        frac = [t - floor(t) for t in theta]
        point = [sum((columns[i][j] * frac[j] for j in range(r)), Fraction(0)) for i in range(r)]
        yield tuple(int(v) for v in point)


def _candidates(cone: RationalCone) -> set[Vector]:
    rays = [cone.generators[i] for i in cone.extreme_columns]
    found: set[Vector] = set(cone.generators)
    simplicial = 0
    for subset in combinations(rays, cone.dim):
        det = determinant([list(ray) for ray in subset])
        if abs(det) <= 1:
            continue
        simplicial += 1
        found.update(parallelepiped_points(subset))
    logger.debug("Collected %d candidates from %d non-unimodular simplicial cones", len(found), simplicial)
    return found


def _irreducible(cone: RationalCone, candidates: Sequence[Vector]) -> list[Vector]:
    slacks = [cone.slack(z) for z in candidates]
    degrees = [cone.degree(z) for z in candidates]
    largest = max((abs(v) for row in slacks for v in row), default=0)
    dtype = np.int64 if largest < _INT64_SAFE else object
    slack_array = np.array(slacks, dtype=dtype).reshape(len(candidates), len(cone.facets))
    degree_array = np.array(degrees, dtype=dtype)
    keep = []
    for k, z in enumerate(candidates):
        below = (degree_array < degrees[k]) & np.all(slack_array <= slack_array[k], axis=1)
        if not below.any():
            keep.append(z)
    return keep


def hilbert_basis_vectors(cone: RationalCone) -> list[Vector]:
    candidates = sorted(_candidates(cone), key=cone.sort_key)
    basis = _irreducible(cone, candidates)
    logger.info("Hilbert basis has %d elements (%d candidates)", len(basis), len(candidates))
    return cone.sorted_points(basis)
