import logging
from collections.abc import Sequence

from sympy import Matrix

from engine.completion import DEFAULT_NODE_LIMIT, minimal_solutions
from exceptions import UnsupportedSystem
from models.basis import DioSolutionSet, SignPattern, VariableSign
from models.matrix import Vector

logger = logging.getLogger(__name__)


def _minimal(points: set[Vector], signs: SignPattern) -> list[Vector]:
    """Points not dominating any other point in the sign-adjusted order."""
    return [x for x in points if not any(y != x and signs.dominated(y, x) for y in points)]


def _size_key(x: Vector) -> tuple[int, Vector]:
    return sum(abs(v) for v in x), x


def solve_diophantine(
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[int],
    signs: SignPattern | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> DioSolutionSet:
    """Minimal solutions of M·x = b and the Hilbert basis of M·x = 0 under a sign pattern.

    The system is homogenized as M·x - b·t = 0 with t <= 1; basis elements with t = 1
    are the minimal inhomogeneous solutions. Nonpositive variables are handled by
    negating their column, free variables by splitting into two nonnegative parts.
    """
    rows = [list(row) for row in matrix]
    if not rows:
        raise ValueError("System needs at least one equation")
    n = len(rows[0])
    if any(len(row) != n for row in rows):
        raise ValueError("System matrix rows have different lengths")
    if len(rhs) != len(rows):
        raise ValueError(f"Right-hand side has {len(rhs)} entries, system has {len(rows)} equations")
    signs = signs or SignPattern.nonnegative(n)
    if len(signs) != n:
        raise ValueError(f"Sign pattern has {len(signs)} entries, system has {n} variables")

    columns = [tuple(row[j] for row in rows) for j in range(n)]
    free = [j for j, s in enumerate(signs.signs) if s is VariableSign.FREE]
    if free and Matrix([list(columns[j]) for j in free]).rank() < len(free):
        raise UnsupportedSystem("Free variables admit a line of homogeneous solutions")

    split: list[tuple[int, int]] = []
    for j, sign in enumerate(signs.signs):
        match sign:
            case VariableSign.NONNEGATIVE:
                split.append((j, 1))
            case VariableSign.NONPOSITIVE:
                split.append((j, -1))
            case VariableSign.FREE:
                split.extend([(j, 1), (j, -1)])
    work = [tuple(mult * v for v in columns[j]) for j, mult in split]
    work.append(tuple(-v for v in rhs))
    marker = len(split)

    homogeneous: set[Vector] = set()
    inhomogeneous: set[Vector] = set()
    for y in minimal_solutions(work, bounded=marker, node_limit=node_limit):
        x = [0] * n
        for (j, mult), v in zip(split, y):
            x[j] += mult * v
        if y[marker] == 1:
            inhomogeneous.add(tuple(x))
        elif any(x):
            homogeneous.add(tuple(x))

    if free:
        homogeneous_list = _minimal(homogeneous, signs)
        inhomogeneous_list = _minimal(inhomogeneous, signs)
    else:
        homogeneous_list, inhomogeneous_list = list(homogeneous), list(inhomogeneous)
    logger.debug(
        "Diophantine system %dx%d: %d minimal solutions, %d basis elements",
        len(rows),
        n,
        len(inhomogeneous_list),
        len(homogeneous_list),
    )
    return DioSolutionSet(
        inhomogeneous_minimal=tuple(sorted(inhomogeneous_list, key=_size_key)),
        homogeneous_basis=tuple(sorted(homogeneous_list, key=_size_key)),
    )
