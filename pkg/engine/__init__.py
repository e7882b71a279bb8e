"""Completion engine: Diophantine solving, semigroup membership, Hilbert bases and shift indices."""

from engine.completion import minimal_solutions
from engine.diophantine import solve_diophantine
from engine.semigroup import MembershipResult, Semigroup, hilbert_basis_of_cone, semigroup_member
from engine.shifts import ShiftSolver, min_shift

__all__ = [
    "MembershipResult",
    "Semigroup",
    "ShiftSolver",
    "hilbert_basis_of_cone",
    "min_shift",
    "minimal_solutions",
    "semigroup_member",
    "solve_diophantine",
]
