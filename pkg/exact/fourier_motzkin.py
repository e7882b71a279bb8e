"""Naive Fourier-Motzkin elimination; an independent feasibility check for small systems."""

from collections.abc import Iterable
from fractions import Fraction

from exact.simplex import LinearConstraint, Sense

# (coefficients, rhs) meaning sum(coefficients[v] * v) <= rhs
_Row = tuple[dict[str, Fraction], Fraction]


def _as_upper_bounds(constraints: Iterable[LinearConstraint], nonnegative: Iterable[str]) -> list[_Row]:
    rows: list[_Row] = []
    for con in constraints:
        coeffs = dict(con.coefficients)
        negated = {name: -c for name, c in coeffs.items()}
        match con.sense:
            case Sense.LE:
                rows.append((coeffs, con.rhs))
            case Sense.GE:
                rows.append((negated, -con.rhs))
            case Sense.EQ:
                rows.append((coeffs, con.rhs))
                rows.append((negated, -con.rhs))
    for name in nonnegative:
        rows.append(({name: Fraction(-1)}, Fraction(0)))
    return rows


def fourier_motzkin_feasible(constraints: Iterable[LinearConstraint], nonnegative: Iterable[str] = ()) -> bool:
    rows = _as_upper_bounds(constraints, nonnegative)
    names = sorted({name for coeffs, _ in rows for name in coeffs})
    for name in names:
        upper = [(c, b) for c, b in rows if c.get(name, 0) > 0]
        lower = [(c, b) for c, b in rows if c.get(name, 0) < 0]
        kept = [(c, b) for c, b in rows if c.get(name, 0) == 0]
        for cu, bu in upper:
            for cl, bl in lower:
                su, sl = cu[name], -cl[name]
                combined: dict[str, Fraction] = {}
                for var in set(cu) | set(cl):
                    value = cu.get(var, 0) / su + cl.get(var, 0) / sl
                    if value != 0:
                        combined[var] = value
                kept.append((combined, bu / su + bl / sl))
        rows = _dedupe(kept)
    return all(b >= 0 for _, b in rows)


def _dedupe(rows: list[_Row]) -> list[_Row]:
    seen = set()
    unique = []
    for coeffs, b in rows:
        key = (tuple(sorted(coeffs.items())), b)
        if key not in seen:
            seen.add(key)
            unique.append((coeffs, b))
    return unique
