"""Hermite and Smith normal forms over the integers, with their unimodular transforms.

Matrices are plain lists of integer rows. Every routine copies its input.

    hermite_normal_form(M) -> H, U with H = M·U  (column style, lower echelon)
    smith_normal_form(M)   -> D, U, V with D = U·M·V
"""

from collections.abc import Sequence
from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    width = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(width)] for row in a]


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def add_columns(m: Matrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # replace m[:, i] by a*m[:, i] + b*m[:, j]
    # and m[:, j] by c*m[:, i] + d*m[:, j]
    for row in m:
        e = row[i]
        row[i] = a * e + b * row[j]
        row[j] = c * e + d * row[j]


def add_rows(m: Matrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # replace m[i, :] by a*m[i, :] + b*m[j, :]
    # and m[j, :] by c*m[i, :] + d*m[j, :]
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def negate_column(m: Matrix, i: int) -> None:
    for row in m:
        row[i] = -row[i]


def swap_columns(m: Matrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if any(len(row) != n for row in a):
        raise ValueError(f"Determinant needs a square matrix, got {n} rows of widths {[len(r) for r in a]}")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class HermiteForm:
    """H = M·U with U unimodular; H is in lower column echelon form.

    Pivots are positive and entries left of a pivot are reduced into [0, pivot).
    """

    h: Matrix
    u: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for j in range(len(self.u)) if any(row[j] != 0 for row in self.h))


@dataclass
class SmithForm:
    """D = U·M·V with U, V unimodular and D diagonal, d_1 | d_2 | ... ."""

    d: Matrix
    u: Matrix
    v: Matrix

    @property
    def invariants(self) -> list[int]:
        size = min(len(self.d), len(self.d[0]) if self.d else 0)
        return [self.d[k][k] for k in range(size) if self.d[k][k] != 0]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> HermiteForm:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(row) for row in m]
    u = identity(cols)
    pivot = 0
    for r in range(rows):
        if pivot >= cols:
            break
        for j in range(pivot + 1, cols):
            b = h[r][j]
            if b == 0:
                continue
            a = h[r][pivot]
            if a != 0 and b % a == 0:
                q = b // a
                add_columns(h, pivot, j, 1, 0, -q, 1)
                add_columns(u, pivot, j, 1, 0, -q, 1)
                continue
            g, x, y = extended_gcd(a, b)
            add_columns(h, pivot, j, x, y, -b // g, a // g)
            add_columns(u, pivot, j, x, y, -b // g, a // g)
        if h[r][pivot] == 0:
            continue
        if h[r][pivot] < 0:
            negate_column(h, pivot)
            negate_column(u, pivot)
        p = h[r][pivot]
        for j in range(pivot):
            q = h[r][j] // p
            if q:
                add_columns(h, j, pivot, 1, -q, 0, 1)
                add_columns(u, j, pivot, 1, -q, 0, 1)
        pivot += 1
    return HermiteForm(h=h, u=u)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(row) for row in m]
    u = identity(rows)
    v = identity(cols)

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j] != 0]
            if not entries:
                return SmithForm(d=d, u=u, v=v)
            _, pi, pj = min(entries)
            if pi != t:
                d[t], d[pi] = d[pi], d[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                swap_columns(d, t, pj)
                swap_columns(v, t, pj)

            clean = True
            for i in range(t + 1, rows):
                q = d[i][t] // d[t][t]
                if q:
                    add_rows(d, i, t, 1, -q, 0, 1)
                    add_rows(u, i, t, 1, -q, 0, 1)
                if d[i][t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = d[t][j] // d[t][t]
                if q:
                    add_columns(d, j, t, 1, -q, 0, 1)
                    add_columns(v, j, t, 1, -q, 0, 1)
                if d[t][j] != 0:
                    clean = False
            if not clean:
                continue

            # divisibility: fold an offending row into row t and repeat
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t] != 0),
                None,
            )
            if offender is None:
                break
            add_rows(d, t, offender, 1, 1, 0, 1)
            add_rows(u, t, offender, 1, 1, 0, 1)

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return SmithForm(d=d, u=u, v=v)
