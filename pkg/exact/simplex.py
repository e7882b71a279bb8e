"""Exact rational linear programming.

A two-phase primal simplex over `fractions.Fraction` with Bland's anti-cycling rule.
Constraints range over named variables, free unless listed as nonnegative; a free
variable is split into a positive and a negative part. Infeasible problems come
back with a Farkas certificate read off the phase-one reduced costs.
"""

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

logger = logging.getLogger(__name__)

Rational = int | Fraction


class Sense(StrEnum):
    LE = "<="
    GE = ">="
    EQ = "=="


class LPStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coefficients[v] * v) <sense> rhs"""

    coefficients: Mapping[str, Fraction]
    sense: Sense
    rhs: Fraction

    def __post_init__(self):
        coefficients = {name: Fraction(value) for name, value in self.coefficients.items() if value != 0}
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "sense", Sense(self.sense))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @classmethod
    def eq(cls, coefficients: Mapping[str, Rational], rhs: Rational) -> "LinearConstraint":
        return cls(coefficients, Sense.EQ, rhs)

    @classmethod
    def le(cls, coefficients: Mapping[str, Rational], rhs: Rational) -> "LinearConstraint":
        return cls(coefficients, Sense.LE, rhs)

    @classmethod
    def ge(cls, coefficients: Mapping[str, Rational], rhs: Rational) -> "LinearConstraint":
        return cls(coefficients, Sense.GE, rhs)

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        return sum((c * Fraction(point.get(name, 0)) for name, c in self.coefficients.items()), Fraction(0))

    def satisfied_by(self, point: Mapping[str, Rational]) -> bool:
        value = self.evaluate(point)
        match self.sense:
            case Sense.LE:
                return value <= self.rhs
            case Sense.GE:
                return value >= self.rhs
            case Sense.EQ:
                return value == self.rhs

    def __str__(self) -> str:
        lhs = " + ".join(f"{c}*{name}" for name, c in self.coefficients.items()) or "0"
        return f"{lhs} {self.sense} {self.rhs}"


@dataclass(frozen=True)
class FarkasCertificate:
    """One multiplier per constraint proving that no point satisfies them all.

    Multipliers are >= 0 on `<=` rows, <= 0 on `>=` rows and free on equalities.
    The combined row vanishes on free variables, is >= 0 on nonnegative ones,
    and its right-hand side is negative.
    """

    multipliers: tuple[Fraction, ...]

    def verify(self, constraints: Iterable[LinearConstraint], nonnegative: Iterable[str] = ()) -> bool:
        constraints = list(constraints)
        if len(constraints) != len(self.multipliers):
            return False
        nonneg = set(nonnegative)
        combined: dict[str, Fraction] = {}
        rhs = Fraction(0)
        for mu, con in zip(self.multipliers, constraints):
            if con.sense is Sense.LE and mu < 0:
                return False
            if con.sense is Sense.GE and mu > 0:
                return False
            for name, c in con.coefficients.items():
                combined[name] = combined.get(name, Fraction(0)) + mu * c
            rhs += mu * con.rhs
        for name, value in combined.items():
            if name in nonneg:
                if value < 0:
                    return False
            elif value != 0:
                return False
        return rhs < 0


@dataclass
class LPResult:
    status: LPStatus
    witness: dict[str, Fraction] | None = None
    objective: Fraction | None = None
    certificate: FarkasCertificate | None = None

    @property
    def feasible(self) -> bool:
        return self.status is not LPStatus.INFEASIBLE


@dataclass
class _Tableau:
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    basis: list[int]
    costs: list[Fraction] = field(default_factory=list)
    value: Fraction = Fraction(0)

    def set_costs(self, costs: list[Fraction]) -> None:
        """Install an objective and price it out against the current basis."""
        reduced = list(costs)
        for row, b in zip(self.rows, self.basis):
            cb = costs[b]
            if cb:
                reduced = [r - cb * a for r, a in zip(reduced, row)]
        self.costs = reduced
        self.value = sum((costs[b] * x for b, x in zip(self.basis, self.rhs)), Fraction(0))

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        self.rows[r] = [v / piv for v in self.rows[r]]
        self.rhs[r] /= piv
        pivot_row = self.rows[r]
        for i, row in enumerate(self.rows):
            f = row[c]
            if i != r and f:
                self.rows[i] = [a - f * b for a, b in zip(row, pivot_row)]
                self.rhs[i] -= f * self.rhs[r]
        f = self.costs[c] if self.costs else 0
        if f:
            self.costs = [a - f * b for a, b in zip(self.costs, pivot_row)]
            self.value += f * self.rhs[r]
        self.basis[r] = c

    def bland_step(self, limit: int) -> LPStatus | None:
        entering = next((j for j in range(limit) if self.costs[j] < 0), None)
        if entering is None:
            return LPStatus.OPTIMAL
        best = None
        for i, row in enumerate(self.rows):
            a = row[entering]
            if a > 0:
                key = (self.rhs[i] / a, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return LPStatus.UNBOUNDED
        self.pivot(best[1], entering)
        return None

    def optimize(self, limit: int) -> LPStatus:
        while True:
            status = self.bland_step(limit)
            if status is not None:
                return status

    def drive_out(self, first_artificial: int) -> None:
        """Pivot artificial variables out of the basis; drop rows that are redundant."""
        i = 0
        while i < len(self.rows):
            if self.basis[i] >= first_artificial:
                row = self.rows[i]
                j = next((j for j in range(first_artificial) if row[j] != 0), None)
                if j is None:
                    del self.rows[i], self.rhs[i], self.basis[i]
                    continue
                self.pivot(i, j)
            i += 1

    def solution(self, width: int) -> list[Fraction]:
        values = [Fraction(0)] * width
        for b, x in zip(self.basis, self.rhs):
            values[b] = x
        return values


def _variable_order(constraints: list[LinearConstraint], *extra: Iterable[str]) -> list[str]:
    names: dict[str, None] = {}
    for con in constraints:
        names.update(dict.fromkeys(con.coefficients))
    for group in extra:
        names.update(dict.fromkeys(group))
    return list(names)


def _solve(
    constraints: list[LinearConstraint],
    nonnegative: set[str],
    names: list[str],
    column_cost: Callable[[str, int], Fraction],
) -> LPResult:
    columns: list[tuple[str, int]] = []
    for name in names:
        columns.append((name, 1))
        if name not in nonnegative:
            columns.append((name, -1))
    n_struct = len(columns)
    slack_of: dict[int, int] = {}
    for i, con in enumerate(constraints):
        if con.sense is not Sense.EQ:
            slack_of[i] = n_struct + len(slack_of)
    n_real = n_struct + len(slack_of)
    m = len(constraints)
    width = n_real + m

    rows, rhs, flips = [], [], []
    for i, con in enumerate(constraints):
        row = [Fraction(0)] * width
        for j, (name, sign) in enumerate(columns):
            row[j] = sign * con.coefficients.get(name, Fraction(0))
        if i in slack_of:
            row[slack_of[i]] = Fraction(1 if con.sense is Sense.LE else -1)
        flip = -1 if con.rhs < 0 else 1
        if flip < 0:
            row = [-v for v in row]
        row[n_real + i] = Fraction(1)
        rows.append(row)
        rhs.append(flip * con.rhs)
        flips.append(flip)

    tableau = _Tableau(rows=rows, rhs=rhs, basis=[n_real + i for i in range(m)])
    tableau.set_costs([Fraction(0)] * n_real + [Fraction(1)] * m)
    tableau.optimize(width)
    if tableau.value > 0:
        duals = [1 - tableau.costs[n_real + i] for i in range(m)]
        multipliers = tuple(-y * flip for y, flip in zip(duals, flips))
        logger.debug("LP infeasible over %d constraints (phase-one value %s)", m, tableau.value)
        return LPResult(status=LPStatus.INFEASIBLE, certificate=FarkasCertificate(multipliers))

    tableau.drive_out(n_real)
    costs = [Fraction(column_cost(name, sign)) for name, sign in columns] + [Fraction(0)] * (width - n_struct)
    tableau.set_costs(costs)
    status = tableau.optimize(n_real)
    if status is LPStatus.UNBOUNDED:
        return LPResult(status=LPStatus.UNBOUNDED)

    values = tableau.solution(width)
    witness = {name: Fraction(0) for name in names}
    for j, (name, sign) in enumerate(columns):
        witness[name] += sign * values[j]
    return LPResult(status=LPStatus.OPTIMAL, witness=witness, objective=tableau.value)


def solve_lp(
    objective: Mapping[str, Rational],
    constraints: Iterable[LinearConstraint],
    nonnegative: Iterable[str] = (),
) -> LPResult:
    """Minimize objective·x subject to the constraints."""
    constraints = list(constraints)
    nonneg = set(nonnegative)
    names = _variable_order(constraints, objective, sorted(nonneg))
    objective = {name: Fraction(value) for name, value in objective.items()}
    return _solve(constraints, nonneg, names, lambda name, sign: sign * objective.get(name, Fraction(0)))


def lp_feasible(constraints: Iterable[LinearConstraint], nonnegative: Iterable[str] = ()) -> LPResult:
    """Decide feasibility; feasible answers carry a witness of least L1 norm."""
    constraints = list(constraints)
    nonneg = set(nonnegative)
    names = _variable_order(constraints, sorted(nonneg))
    return _solve(constraints, nonneg, names, lambda name, sign: Fraction(1))
