"""Cone geometry: pointedness, extreme rays, facets and membership in K and Q_sat."""

from geometry.cone import (
    RationalCone,
    cone_inequality_rep,
    cone_membership,
    cone_profile,
    extreme_ray_columns,
    pointedness_certificate,
    qsat_membership,
)
from geometry.double_description import dual_extreme_rays, primitive_vector

__all__ = [
    "RationalCone",
    "cone_inequality_rep",
    "cone_membership",
    "cone_profile",
    "dual_extreme_rays",
    "extreme_ray_columns",
    "pointedness_certificate",
    "primitive_vector",
    "qsat_membership",
]
