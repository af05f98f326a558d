"""Pseudo half-spaces and the incremental generating-set computation.

A pseudo half-space with data ``(c, d, U)`` is the set of lifted vectors ``x``
such that ``(c | x (+) y) <= (d | x (+) y)`` for every ``y`` in ``Span(U)``
with ``y_1 = x_1``. Every generator in ``U`` has first coordinate 0, so the
quantifier ranges over ``U`` only and each pseudo half-space is the finite
intersection, over ``u`` in ``U``, of the ordinary half-spaces

    (c | x (+) x_1 . u) <= (d | x (+) x_1 . u).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, PreconditionViolated, UnnormalizedInput
from .maxplus import (
    EPS,
    Matrix,
    Scalar,
    Vector,
    dot,
    scalar_add,
    scalar_sub,
    scalar_vec_mul,
    vec,
    vec_add,
)
from .sets import TropicalConeV, remove_redundant

__all__ = [
    "PseudoHalfSpace",
    "member",
    "member_u",
    "build_Mu",
    "rho",
    "intersect_pseudo",
    "intersect_all",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PseudoHalfSpace:
    c: Vector
    d: Vector
    u_gens: Tuple[Vector, ...] = ()

    def __post_init__(self):
        c, d = vec(self.c), vec(self.d)
        if len(c) != len(d):
            raise DimensionMismatch(f"c has length {len(c)}, d has length {len(d)}")
        if not self.u_gens:
            raise PreconditionViolated("a pseudo half-space needs at least one generator")
        us = []
        for u in self.u_gens:
            u = vec(u)
            if len(u) != len(c):
                raise DimensionMismatch(f"generator {u} does not have dimension {len(c)}")
            if u[0] != 0:
                raise UnnormalizedInput(f"generator {u} must have first coordinate 0")
            us.append(u)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "u_gens", tuple(sorted(set(us))))

    @property
    def dim(self) -> int:
        return len(self.c)

    def __contains__(self, v) -> bool:
        return member(self, v)


def _check_lifted(H: PseudoHalfSpace, v: Vector) -> Vector:
    v = vec(v)
    if len(v) != H.dim:
        raise DimensionMismatch(f"vector of dimension {len(v)} against pseudo half-space of dimension {H.dim}")
    if v[0] is not EPS and v[0] != 0:
        raise UnnormalizedInput(f"first coordinate of {v} must be 0 or -inf")
    return v


def _raise_by_first(x: Vector, u: Vector) -> Vector:
    """``x (+) x_1 . u``, i.e. ``M_u (x) x``."""
    return vec_add(x, scalar_vec_mul(x[0], u))


def member_u(H: PseudoHalfSpace, u: Vector, x: Sequence) -> bool:
    """Membership in the ordinary half-space attached to the single generator ``u``."""
    x = vec(x)
    y = _raise_by_first(x, u)
    return dot(H.c, y) <= dot(H.d, y)


def member(H: PseudoHalfSpace, v: Sequence) -> bool:
    """Decide ``v`` in ``H`` for ``v`` with first coordinate 0 or EPS."""
    v = _check_lifted(H, v)
    if v[0] is EPS:
        # y_1 = EPS forces y = EPS inside Span(U)
        return dot(H.c, v) <= dot(H.d, v)
    for u in H.u_gens:
        y = vec_add(v, u)
        if dot(H.c, y) > dot(H.d, y):
            return False
    return True


def build_Mu(u: Sequence) -> Matrix:
    """Square matrix with ``M_u (x) x = x (+) x_1 . u``."""
    u = vec(u)
    n1 = len(u)
    if n1 < 1:
        raise DimensionMismatch("u must be non-empty")
    rows = []
    for i in range(n1):
        row = [EPS] * n1
        row[0] = scalar_add(u[0], 0) if i == 0 else u[i]
        if i > 0:
            row[i] = 0
        rows.append(tuple(row))
    return tuple(rows)


def rho(H: PseudoHalfSpace, v: Sequence, w: Sequence) -> Scalar:
    """Largest ``l`` such that ``v (+) l . w`` stays in ``H``.

    ``v`` must lie in ``H`` and ``w`` outside it. The value is the minimum,
    over generators ``u`` whose half-space rejects ``w``, of
    ``(d | v (+) v_1 . u) - (c | w (+) w_1 . u)``.
    """
    v = _check_lifted(H, v)
    w = _check_lifted(H, w)
    best = None
    for u in H.u_gens:
        wu, vu = _raise_by_first(w, u), _raise_by_first(v, u)
        cw, dw = dot(H.c, wu), dot(H.d, wu)
        if cw <= dw:
            continue
        lam = scalar_sub(dot(H.d, vu), cw)
        if best is None or lam < best:
            best = lam
    if best is None:
        raise PreconditionViolated(f"{w} lies in the pseudo half-space; rho is unbounded")
    return best


def intersect_pseudo(C: TropicalConeV, H: PseudoHalfSpace) -> TropicalConeV:
    """Generators of ``Span(C)`` intersected with ``H``."""
    if C.dim != H.dim:
        raise DimensionMismatch(f"cone of dimension {C.dim} against pseudo half-space of dimension {H.dim}")
    inside: List[Vector] = []
    outside: List[Vector] = []
    for g in C.generators:
        (inside if member(H, g) else outside).append(g)
    if not outside:
        return C
    new = list(inside)
    for v in inside:
        for w in outside:
            r = rho(H, v, w)
            if r is EPS:
                continue
            new.append(vec_add(v, scalar_vec_mul(r, w)))
    return TropicalConeV(C.dim, new)


def intersect_all(halfspaces: Iterable[PseudoHalfSpace], n: int) -> TropicalConeV:
    """Generators of the intersection of ``halfspaces`` in dimension ``n + 1``.

    Starts from the canonical basis and folds :func:`intersect_pseudo` in
    input order, filtering redundant generators after every step.
    """
    C = TropicalConeV.whole_space(n + 1)
    for k, H in enumerate(halfspaces):
        if H.dim != n + 1:
            raise DimensionMismatch(f"pseudo half-space {k} has dimension {H.dim}, expected {n + 1}")
        C = remove_redundant(intersect_pseudo(C, H))
        logger.debug("constraint %d: %d generators", k, len(C.generators))
    return C
