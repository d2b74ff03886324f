"""Lattice point covering radii of planar convex bodies over the integer lattice."""

from .errors import ConstraintError, DomainError
from .geom import ConvexPolygon, Point, RegularPolygonSpec, make_regular, regular

__all__ = [
    "ConstraintError",
    "ConvexPolygon",
    "DomainError",
    "Point",
    "RegularPolygonSpec",
    "make_regular",
    "regular",
]

__version__ = "0.1.0"
