"""Spherical functions, dimensions and Plancherel norms on rank-one compact symmetric spaces."""

from .catalog import (
    CatalogError,
    JacobiParams,
    SpaceFamily,
    SymmetricSpace,
    jacobi_params,
    list_catalog,
    make_space,
    parse_space,
)
from .radial import RadialPoint, parse_angle

__all__ = [
    "CatalogError",
    "JacobiParams",
    "RadialPoint",
    "SpaceFamily",
    "SymmetricSpace",
    "jacobi_params",
    "list_catalog",
    "make_space",
    "parse_angle",
    "parse_space",
]

__version__ = "0.1.0"
