"""Exact integer and rational linear algebra used by every geometric test."""

from exact.fourier_motzkin import fourier_motzkin_feasible
from exact.lattice import lattice_normalize
from exact.normal_forms import HermiteForm, SmithForm, determinant, hermite_normal_form, smith_normal_form
from exact.simplex import FarkasCertificate, LinearConstraint, LPResult, LPStatus, Sense, lp_feasible, solve_lp

__all__ = [
    "FarkasCertificate",
    "HermiteForm",
    "LinearConstraint",
    "LPResult",
    "LPStatus",
    "Sense",
    "SmithForm",
    "determinant",
    "fourier_motzkin_feasible",
    "hermite_normal_form",
    "lattice_normalize",
    "lp_feasible",
    "smith_normal_form",
    "solve_lp",
]
