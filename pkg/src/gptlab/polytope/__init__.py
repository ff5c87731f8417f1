"""Exact rational polyhedral kernel."""

from __future__ import annotations

from .cone import extreme_rays
from .hull import (
    Chart,
    Membership,
    affine_hull,
    chart,
    convex_coefficients,
    extreme_indices,
    facet_enumeration,
    membership,
    vertex_enumeration,
)
from .linalg import Rational, to_fraction, vec
from .lp import LPResult, feasible_point, lp_solve, minimize, simplex
from .types import AffineMap, HSystem, Point, VPolytope, point

__all__ = [
    "AffineMap",
    "Chart",
    "HSystem",
    "LPResult",
    "Membership",
    "Point",
    "Rational",
    "VPolytope",
    "affine_hull",
    "chart",
    "convex_coefficients",
    "extreme_indices",
    "extreme_rays",
    "facet_enumeration",
    "feasible_point",
    "lp_solve",
    "membership",
    "minimize",
    "point",
    "simplex",
    "to_fraction",
    "vec",
    "vertex_enumeration",
]
