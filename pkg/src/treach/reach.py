"""Backward operators for max-plus linear systems with additive disturbances.

The system is ``x_k = A (x) x_{k-1} (+) B (x) u_k (+) C (x) w_k`` with
``u_k`` in a control polyhedron and ``w_k`` in a disturbance polyhedron. The
one-step backward reachable set factors as::

    upsilon = a_inverse o gamma o phi

where ``phi`` handles the universal quantifier over disturbances, ``gamma``
the existential one over controls, and ``a_inverse`` the dynamics.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, EmptyDisturbance, TropicalError, UnnormalizedGenerators
from .halfspace import PseudoHalfSpace, intersect_all
from .maxplus import (
    EPS,
    Matrix,
    dot,
    identity,
    mat,
    mat_mul,
    mat_vec_mul,
    transpose,
    vec_add,
)
from .sets import (
    TropicalConeM,
    TropicalConeV,
    TropicalPolyhedron,
    intersect_halfspaces,
    lift_to_cone,
    project,
    remove_redundant,
    restrict_to_plane,
)

__all__ = [
    "SystemModel",
    "TargetSetM",
    "linear_image",
    "check_recession",
    "phi",
    "ainv_matrices",
    "gamma_matrices",
    "a_inverse",
    "gamma",
    "upsilon",
]

logger = logging.getLogger(__name__)


def _shape(M: Matrix) -> Tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


@dataclass(frozen=True)
class SystemModel:
    A: Matrix
    B: Matrix
    C_dist: Matrix
    U_set: TropicalPolyhedron
    W_set: TropicalPolyhedron

    def __post_init__(self):
        A, B, C = mat(self.A), mat(self.B), mat(self.C_dist)
        n, n2 = _shape(A)
        if n == 0 or n != n2:
            raise DimensionMismatch(f"A must be square and non-empty, got {n}x{n2}")
        bn, m = _shape(B)
        cn, q = _shape(C)
        if bn != n:
            raise DimensionMismatch(f"B has {bn} rows, expected {n}")
        if cn != n:
            raise DimensionMismatch(f"C has {cn} rows, expected {n}")
        if self.U_set.dim != m:
            raise DimensionMismatch(f"control set has dimension {self.U_set.dim}, B has {m} columns")
        if self.W_set.dim != q:
            raise DimensionMismatch(f"disturbance set has dimension {self.W_set.dim}, C has {q} columns")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C_dist", C)

    @property
    def n(self) -> int:
        return len(self.A)

    def step(self, x, u, w):
        """Successor state ``A x (+) B u (+) C w``."""
        return vec_add(vec_add(mat_vec_mul(self.A, x), mat_vec_mul(self.B, u)), mat_vec_mul(self.C_dist, w))


@dataclass(frozen=True)
class TargetSetM:
    """Target ``{x : lhs (x) (0, x) <= rhs (x) (0, x)}`` in lifted coordinates."""

    dim: int
    lhs: Matrix = ()
    rhs: Matrix = ()

    def __post_init__(self):
        cone = TropicalConeM(self.dim + 1, self.lhs, self.rhs)
        object.__setattr__(self, "lhs", cone.lhs)
        object.__setattr__(self, "rhs", cone.rhs)

    @property
    def lifted(self) -> TropicalConeM:
        return TropicalConeM(self.dim + 1, self.lhs, self.rhs)

    def contains(self, x: Sequence) -> bool:
        return self.lifted.contains((0,) + tuple(x))

    __contains__ = contains

    def to_polyhedron(self) -> TropicalPolyhedron:
        return restrict_to_plane(self.lifted.to_vform())


def linear_image(M: Matrix, P: TropicalPolyhedron) -> TropicalPolyhedron:
    """Image of ``P`` under ``x -> M (x) x``."""
    M = mat(M)
    k, m = _shape(M)
    if m != P.dim:
        raise DimensionMismatch(f"matrix with {m} columns applied to a polyhedron of dimension {P.dim}")
    return TropicalPolyhedron(
        k,
        [mat_vec_mul(M, v) for v in P.span_gens],
        [mat_vec_mul(M, e) for e in P.conv_gens],
    )


def check_recession(W: TropicalPolyhedron, Z: TargetSetM) -> bool:
    """Whether every recession direction of ``W`` satisfies the homogeneous part of ``Z``."""
    if W.dim != Z.dim:
        raise DimensionMismatch(f"disturbance of dimension {W.dim} against target of dimension {Z.dim}")
    for r in W.span_gens:
        for a, b in zip(Z.lhs, Z.rhs):
            if dot(a[1:], r) > dot(b[1:], r):
                return False
    return True


def phi(W: TropicalPolyhedron, Z: TargetSetM) -> TropicalPolyhedron:
    """States ``x`` with ``x (+) w`` in ``Z`` for every ``w`` in ``W``."""
    if W.dim != Z.dim:
        raise DimensionMismatch(f"disturbance of dimension {W.dim} against target of dimension {Z.dim}")
    if W.is_empty:
        raise EmptyDisturbance("the disturbance set has no bounded part")
    if not check_recession(W, Z):
        logger.info("phi: recession cone of the disturbance leaves the target cone; result is empty")
        return TropicalPolyhedron.empty(Z.dim)
    logger.info("phi: recession check passed (%d directions)", len(W.span_gens))
    u_gens = [(0,) + e for e in W.conv_gens]
    halfspaces = [PseudoHalfSpace(c, d, u_gens) for c, d in zip(Z.lhs, Z.rhs)]
    E = intersect_all(halfspaces, Z.dim)
    return restrict_to_plane(E)


def _generator_matrix(C: TropicalConeV) -> Matrix:
    return transpose(C.generators, C.dim) if C.generators else tuple(() for _ in range(C.dim))


def _check_first_row(M: Matrix, what: str) -> None:
    if M and any(a is not EPS and a != 0 for a in M[0]):
        raise UnnormalizedGenerators(f"first row of {what} must contain only 0 and -inf")


def ainv_matrices(A: Matrix, M: Matrix) -> Tuple[Matrix, Matrix]:
    """Block matrices whose symmetric cone, sliced at ``t = 0``, describes ``(0, x, u)``.

    Columns are ordered ``(t, x, u)``; ``M`` is the ``(n+1) x q`` generating
    matrix of the lifted target cone.
    """
    A, M = mat(A), mat(M)
    n, n2 = _shape(A)
    if n != n2:
        raise DimensionMismatch(f"A must be square, got {n}x{n2}")
    if len(M) != n + 1:
        raise DimensionMismatch(f"generating matrix has {len(M)} rows, expected {n + 1}")
    _check_first_row(M, "the target generating matrix")
    q = len(M[0])
    e = EPS
    m1 = [(0,) + (e,) * n + (e,) * q]
    m2 = [(e,) + (e,) * n + M[0]]
    for i in range(n):
        m1.append((e,) + A[i] + (e,) * q)
        m2.append((e,) + (e,) * n + M[i + 1])
    return tuple(m1), tuple(m2)


def gamma_matrices(B: Matrix, R: Matrix, M: Matrix) -> Tuple[Matrix, Matrix]:
    """Block matrices for the control operator, columns ordered ``(t, x, y, z)``.

    ``R`` ((m+1) x r) generates the lifted control set and ``M`` ((n+1) x q)
    the lifted target; rows encode ``x (+) B R_tail y = M_tail z``,
    ``R_1 y = t`` and ``M_1 z = t``.
    """
    B, R, M = mat(B), mat(R), mat(M)
    n, m = _shape(B)
    if len(R) != m + 1:
        raise DimensionMismatch(f"control generating matrix has {len(R)} rows, expected {m + 1}")
    if len(M) != n + 1:
        raise DimensionMismatch(f"target generating matrix has {len(M)} rows, expected {n + 1}")
    _check_first_row(R, "the control generating matrix")
    _check_first_row(M, "the target generating matrix")
    r, q = len(R[0]), len(M[0])
    e = EPS
    BR = mat_mul(B, R[1:]) if m else tuple((e,) * r for _ in range(n))
    eye = identity(n)
    m1, m2 = [], []
    for i in range(n):
        m1.append((e,) + eye[i] + BR[i] + (e,) * q)
        m2.append((e,) + (e,) * n + (e,) * r + M[i + 1])
    m1.append((e,) + (e,) * n + R[0] + (e,) * q)
    m2.append((0,) + (e,) * n + (e,) * r + (e,) * q)
    m1.append((e,) + (e,) * n + (e,) * r + M[0])
    m2.append((0,) + (e,) * n + (e,) * r + (e,) * q)
    return tuple(m1), tuple(m2)


def _solve_symmetric(m1: Matrix, m2: Matrix, dim: int, keep: int) -> TropicalPolyhedron:
    """Slice at ``t = 0`` of the projection of ``<m1, m2>^s`` onto ``keep`` coordinates."""
    rows = []
    for a, b in zip(m1, m2):
        rows.append((a, b))
        rows.append((b, a))
    cone = intersect_halfspaces(TropicalConeV.whole_space(dim), rows)
    logger.debug("symmetric system in dimension %d: %d generators", dim, len(cone.generators))
    return restrict_to_plane(remove_redundant(project(cone, keep)))


def a_inverse(A: Matrix, Z_cone: TropicalConeV) -> TropicalPolyhedron:
    """``{x : A (x) x in Z}`` for ``Z`` the slice ``x_1 = 0`` of ``Z_cone``."""
    A = mat(A)
    n = len(A)
    if Z_cone.dim != n + 1:
        raise DimensionMismatch(f"target cone of dimension {Z_cone.dim}, expected {n + 1}")
    m1, m2 = ainv_matrices(A, _generator_matrix(Z_cone))
    return _solve_symmetric(m1, m2, len(m1[0]), n + 1)


def gamma(B: Matrix, U_set: TropicalPolyhedron, Z_cone: TropicalConeV) -> TropicalPolyhedron:
    """``{x : x (+) B (x) u in Z for some u in U_set}``."""
    B = mat(B)
    n, m = _shape(B)
    if Z_cone.dim != n + 1:
        raise DimensionMismatch(f"target cone of dimension {Z_cone.dim}, expected {n + 1}")
    if U_set.dim != m:
        raise DimensionMismatch(f"control set of dimension {U_set.dim}, B has {m} columns")
    R = _generator_matrix(lift_to_cone(U_set))
    m1, m2 = gamma_matrices(B, R, _generator_matrix(Z_cone))
    return _solve_symmetric(m1, m2, len(m1[0]), n + 1)


@dataclass
class TraceEntry:
    stage: str
    span: int
    conv: int

    def as_dict(self):
        return {"stage": self.stage, "span_gens": self.span, "conv_gens": self.conv}


def record_stage(trace: Optional[List[TraceEntry]], stage: str, P: TropicalPolyhedron) -> None:
    entry = TraceEntry(stage, len(P.span_gens), len(P.conv_gens))
    logger.info("%s: %d span generators, %d conv generators", stage, entry.span, entry.conv)
    if trace is not None:
        trace.append(entry)


@contextmanager
def _stage(name: str):
    try:
        yield
    except TropicalError as err:
        if getattr(err, "stage", None) is None:
            err.stage = name
        raise


def upsilon(model: SystemModel, target: TargetSetM, trace: Optional[List[TraceEntry]] = None) -> TropicalPolyhedron:
    """One-step backward reachable set of ``target``.

    Errors raised by a stage carry its name in a ``stage`` attribute.
    """
    if target.dim != model.n:
        raise DimensionMismatch(f"target of dimension {target.dim} for a system with {model.n} states")
    with _stage("disturbance image"):
        W = linear_image(model.C_dist, model.W_set)
    record_stage(trace, "disturbance image", W)
    with _stage("phi"):
        P = phi(W, target)
    record_stage(trace, "phi", P)
    if P.is_empty:
        return P
    with _stage("gamma"):
        P = gamma(model.B, model.U_set, lift_to_cone(P))
    record_stage(trace, "gamma", P)
    if P.is_empty:
        return P
    with _stage("ainv"):
        P = a_inverse(model.A, lift_to_cone(P))
    record_stage(trace, "ainv", P)
    return P
