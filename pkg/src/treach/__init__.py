"""Backward reachability for max-plus linear systems over tropical polyhedra."""

from .errors import (
    DimensionMismatch,
    EmptyDisturbance,
    IndexOutOfRange,
    ParseError,
    PreconditionViolated,
    TropicalError,
    UnnormalizedGenerators,
    UnnormalizedInput,
)
from .halfspace import PseudoHalfSpace, build_Mu, intersect_all, intersect_pseudo, member, rho
from .maxplus import EPS, mp, vec, mat
from .reach import SystemModel, TargetSetM, a_inverse, check_recession, gamma, linear_image, phi, upsilon
from .sets import (
    TropicalConeM,
    TropicalConeV,
    TropicalPolyhedron,
    cone_contains_point,
    intersect_halfspace,
    lift_to_cone,
    project,
    remove_redundant,
    restrict_to_plane,
    same_cone,
    same_polyhedron,
)

__all__ = [
    "DimensionMismatch",
    "EmptyDisturbance",
    "IndexOutOfRange",
    "ParseError",
    "PreconditionViolated",
    "TropicalError",
    "UnnormalizedGenerators",
    "UnnormalizedInput",
    "PseudoHalfSpace",
    "build_Mu",
    "intersect_all",
    "intersect_pseudo",
    "member",
    "rho",
    "EPS",
    "mp",
    "vec",
    "mat",
    "SystemModel",
    "TargetSetM",
    "a_inverse",
    "check_recession",
    "gamma",
    "linear_image",
    "phi",
    "upsilon",
    "TropicalConeM",
    "TropicalConeV",
    "TropicalPolyhedron",
    "cone_contains_point",
    "intersect_halfspace",
    "lift_to_cone",
    "project",
    "remove_redundant",
    "restrict_to_plane",
    "same_cone",
    "same_polyhedron",
]

__version__ = "0.1.0"
