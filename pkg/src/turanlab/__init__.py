"""Numerical laboratory for Turan-type L^q oscillation inequalities on convex polygons."""
from .geom import Polygon, geometry_summary, load_polygon, regular_polygon, validate
from .poly import PolyByZeros, load_poly
from .quad import QuadratureSpec, lq_norm, oscillation
from .report import VerifierReport

__version__ = "0.1.0"

__all__ = [
    "Polygon",
    "PolyByZeros",
    "QuadratureSpec",
    "VerifierReport",
    "geometry_summary",
    "load_poly",
    "load_polygon",
    "lq_norm",
    "oscillation",
    "regular_polygon",
    "validate",
]
