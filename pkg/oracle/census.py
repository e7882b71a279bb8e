"""Brute-force classification of box points, independent of the search engines.

Only exact linear algebra is shared with the analyzer: Q membership comes from a
coin-problem recursion over column subtractions, Q_sat membership from the lattice
normalization plus one LP per point outside Q.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import lcm

import numpy as np

from exact.lattice import lattice_normalize
from exact.simplex import LinearConstraint, LPStatus, lp_feasible, solve_lp
from models.census import BoxCensus, PointClass, SaturationTag
from models.matrix import GeneratorMatrix, Vector

logger = logging.getLogger(__name__)

Box = tuple[tuple[int, int], ...]

_OUTSIDE, _HOLE, _IN_Q = 0, 1, 2
_LABELS = {_OUTSIDE: PointClass.OUTSIDE_QSAT, _HOLE: PointClass.HOLE, _IN_Q: PointClass.IN_Q}


def integer_grading(matrix: GeneratorMatrix) -> Vector | None:
    """Integer c with c·a_i >= 1 for every column, or None when the cone is not pointed."""
    names = [f"c{k}" for k in range(matrix.d)]
    constraints = [LinearConstraint.ge(dict(zip(names, col)), 1) for col in matrix.columns]
    objective = {name: sum(row) for name, row in zip(names, matrix.entries)}
    result = solve_lp(objective, constraints)
    if result.status is LPStatus.INFEASIBLE:
        return None
    values = [Fraction(result.witness[name]) for name in names]
    scale = lcm(*(v.denominator for v in values))
    return tuple(int(v * scale) for v in values)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _validate_box(matrix: GeneratorMatrix, box: Box) -> Box:
    box = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(box) != matrix.d:
        raise ValueError(f"Box has {len(box)} ranges, matrix has {matrix.d} rows")
    if any(lo > hi for lo, hi in box):
        raise ValueError(f"Box ranges must satisfy lo <= hi, got {box}")
    return box


def census(matrix: GeneratorMatrix, box: Box) -> BoxCensus:
    box = _validate_box(matrix, box)
    grading = integer_grading(matrix)
    if grading is None:
        raise ValueError("Census needs a pointed cone")
    columns = matrix.columns
    degrees = [_dot(grading, col) for col in columns]

    @cache
    def in_q(p: Vector) -> bool:
        if not any(p):
            return True
        degree = _dot(grading, p)
        return any(
            degree - step >= 0 and in_q(tuple(x - y for x, y in zip(p, col))) for col, step in zip(columns, degrees)
        )

    normalization = lattice_normalize(matrix)
    names = [f"l{j}" for j in range(matrix.n)]

    def in_qsat(p: Vector) -> bool:
        if normalization.normalize(p) is None:
            return False
        constraints = [
            LinearConstraint.eq({name: col[k] for name, col in zip(names, columns)}, p[k]) for k in range(matrix.d)
        ]
        return lp_feasible(constraints, nonnegative=names).feasible

    shape = tuple(hi - lo + 1 for lo, hi in box)
    labels = np.full(shape, _OUTSIDE, dtype=np.int8)
    origin = np.array([lo for lo, _ in box])
    points = {index: tuple(int(v) for v in origin + index) for index in np.ndindex(*shape)}
    # increasing degree keeps the membership recursion shallow
    for index in sorted(points, key=lambda i: _dot(grading, points[i])):
        p = points[index]
        if _dot(grading, p) < 0:
            continue
        if in_q(p):
            labels[index] = _IN_Q
        elif in_qsat(p):
            labels[index] = _HOLE

    nonsat = np.zeros(shape, dtype=bool)
    for hole_index in zip(*np.nonzero(labels == _HOLE)):
        h = origin + np.array(hole_index)
        source, target = [], []
        for k, size in enumerate(shape):
            start, stop = max(0, -int(h[k])), min(size, size - int(h[k]))
            if start >= stop:
                break
            source.append(slice(start, stop))
            target.append(slice(start + int(h[k]), stop + int(h[k])))
        else:
            nonsat[tuple(source)] |= labels[tuple(target)] == _HOLE

    classification: dict[Vector, PointClass] = {}
    tags: dict[Vector, SaturationTag] = {}
    for index, p in points.items():
        label = int(labels[index])
        classification[p] = _LABELS[label]
        if label == _IN_Q:
            tags[p] = SaturationTag.NONSAT if nonsat[index] else SaturationTag.SAT
    in_q_count, hole_count = int((labels == _IN_Q).sum()), int((labels == _HOLE).sum())
    logger.info("Census of %d points: %d in Q, %d holes", labels.size, in_q_count, hole_count)
    return BoxCensus(box=box, classification=classification, saturation_tags=tags)


@dataclass
class OracleMinimalSets:
    min_ss: list[Vector]
    min_sq: list[Vector]
    min_sqsat: list[Vector]


def _below(a: Vector, b: Vector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def oracle_min_sets(matrix: GeneratorMatrix, box: Box, result: BoxCensus | None = None) -> OracleMinimalSets:
    """The three minimality notions evaluated literally on the census.

    For a nonnegative matrix and a box starting at or below 0, every point of Q_sat
    below a box point lies in the box, so the answers are exact for every point
    whose saturation tag is exact.
    """
    if not matrix.is_nonnegative():
        raise ValueError("Oracle minimal sets need a nonnegative matrix")
    box = _validate_box(matrix, box)
    if any(lo > 0 for lo, _ in box):
        raise ValueError(f"Box must contain the origin, got {box}")
    result = result or census(matrix, box)
    saturated = set(result.tagged(SaturationTag.SAT))
    in_q = result.points(PointClass.IN_Q)
    in_qsat = in_q + result.holes
    zero = (0,) * matrix.d

    def minimal(steps: list[Vector]) -> list[Vector]:
        found = []
        for a in sorted(saturated):
            reducible = any(
                q != zero and _below(q, a) and tuple(x - y for x, y in zip(a, q)) in saturated for q in steps
            )
            if not reducible:
                found.append(a)
        return found

    return OracleMinimalSets(
        min_ss=minimal(sorted(saturated)),
        min_sq=minimal(in_q),
        min_sqsat=minimal(in_qsat),
    )
