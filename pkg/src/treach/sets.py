"""Tropical cones and polyhedra.

A cone is stored in V-form (:class:`TropicalConeV`, a finite generating set)
or M-form (:class:`TropicalConeM`, ``{x : lhs (x) x <= rhs (x) x}``). A
polyhedron ``Span(span_gens) (+) Conv(conv_gens)`` is stored by its two
generator lists and is moved to and from cones one dimension up by
:func:`lift_to_cone` and :func:`restrict_to_plane`.

Generators are kept canonical: rescaled so the first coordinate is 0 when it
is finite and otherwise so the largest finite coordinate is 0, deduplicated,
and sorted lexicographically (EPS first). The all-EPS generator is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, IndexOutOfRange
from .maxplus import (
    EPS,
    Matrix,
    Scalar,
    Vector,
    dot,
    eps_vector,
    mat,
    scalar_sub,
    scalar_vec_mul,
    unit_vector,
    vec,
    vec_add,
)

__all__ = [
    "normalize_generator",
    "canonical_generators",
    "TropicalConeV",
    "TropicalConeM",
    "TropicalPolyhedron",
    "lift_to_cone",
    "restrict_to_plane",
    "project",
    "residuate",
    "cone_contains_point",
    "mform_satisfied",
    "intersect_halfspace",
    "intersect_halfspaces",
    "remove_redundant",
    "cone_subset",
    "same_cone",
    "same_polyhedron",
]


def normalize_generator(v: Sequence) -> Optional[Vector]:
    """Canonical representative of the ray through ``v``; ``None`` for EPS."""
    v = tuple(v)
    if not v:
        return v
    if v[0] is not EPS:
        shift = v[0]
    else:
        finite = [a for a in v if a is not EPS]
        if not finite:
            return None
        shift = max(finite)
    if shift == 0:
        return v
    return tuple(EPS if a is EPS else a - shift for a in v)


def canonical_generators(gens: Iterable[Sequence], dim: int) -> Tuple[Vector, ...]:
    out = set()
    for g in gens:
        g = vec(g)
        if len(g) != dim:
            raise DimensionMismatch(f"generator {g} does not have dimension {dim}")
        g = normalize_generator(g)
        if g is not None:
            out.add(g)
    return tuple(sorted(out))


def _canonical_points(points: Iterable[Sequence], dim: int) -> Tuple[Vector, ...]:
    out = set()
    for p in points:
        p = vec(p)
        if len(p) != dim:
            raise DimensionMismatch(f"point {p} does not have dimension {dim}")
        out.add(p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class TropicalConeV:
    """Finitely generated tropical cone ``{(+)_i l_i . v_i}``.

    An empty generator list represents ``{EPS_n}``.
    """

    dim: int
    generators: Tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("cone dimension must be positive")
        object.__setattr__(self, "generators", canonical_generators(self.generators, self.dim))

    @classmethod
    def whole_space(cls, dim: int) -> "TropicalConeV":
        return cls(dim, [unit_vector(dim, i) for i in range(dim)])

    def __contains__(self, x) -> bool:
        return cone_contains_point(self, x)[0]

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class TropicalConeM:
    """Cone ``{x : lhs (x) x <= rhs (x) x}`` given by constraint rows."""

    dim: int
    lhs: Matrix = ()
    rhs: Matrix = ()

    def __post_init__(self):
        lhs, rhs = mat(self.lhs), mat(self.rhs)
        if len(lhs) != len(rhs):
            raise DimensionMismatch(f"lhs has {len(lhs)} rows, rhs has {len(rhs)}")
        for row in lhs + rhs:
            if len(row) != self.dim:
                raise DimensionMismatch(f"constraint row {row} does not have dimension {self.dim}")
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @classmethod
    def symmetric(cls, dim: int, lhs: Matrix, rhs: Matrix) -> "TropicalConeM":
        """``<lhs, rhs>^s``: the equality system ``lhs (x) x = rhs (x) x``."""
        lhs, rhs = mat(lhs), mat(rhs)
        return cls(dim, lhs + rhs, rhs + lhs)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(mform_satisfied(a, b, x) for a, b in zip(self.lhs, self.rhs))

    __contains__ = contains

    def to_vform(self) -> TropicalConeV:
        return intersect_halfspaces(TropicalConeV.whole_space(self.dim), zip(self.lhs, self.rhs))


@dataclass(frozen=True)
class TropicalPolyhedron:
    """``Span(span_gens) (+) Conv(conv_gens)``.

    ``Conv`` of an empty list is empty, so a polyhedron without conv
    generators is the empty set whatever its span generators are. A cone seen
    as a polyhedron carries the single conv generator ``EPS_n``; build it with
    :meth:`from_cone`.
    """

    dim: int
    span_gens: Tuple[Vector, ...] = ()
    conv_gens: Tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("polyhedron dimension must be positive")
        object.__setattr__(self, "span_gens", canonical_generators(self.span_gens, self.dim))
        object.__setattr__(self, "conv_gens", _canonical_points(self.conv_gens, self.dim))

    @classmethod
    def empty(cls, dim: int) -> "TropicalPolyhedron":
        return cls(dim)

    @classmethod
    def from_cone(cls, dim: int, span_gens: Iterable[Sequence]) -> "TropicalPolyhedron":
        return cls(dim, tuple(span_gens), (eps_vector(dim),))

    @classmethod
    def whole_space(cls, dim: int) -> "TropicalPolyhedron":
        return cls.from_cone(dim, [unit_vector(dim, i) for i in range(dim)])

    @property
    def is_empty(self) -> bool:
        return not self.conv_gens

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(x)} in polyhedron of dimension {self.dim}")
        if self.is_empty:
            return False
        return cone_contains_point(lift_to_cone(self), (0,) + x)[0]

    __contains__ = contains

    def reduced(self) -> "TropicalPolyhedron":
        """Same set with redundant generators removed."""
        if self.is_empty:
            return TropicalPolyhedron.empty(self.dim)
        return restrict_to_plane(remove_redundant(lift_to_cone(self)))


# -- Lemma-1 lifting ---------------------------------------------------------

def lift_to_cone(P: TropicalPolyhedron) -> TropicalConeV:
    """Cone in dimension ``n+1`` whose slice ``x_1 = 0`` is ``P``."""
    gens = [(EPS,) + v for v in P.span_gens] + [(0,) + e for e in P.conv_gens]
    return TropicalConeV(P.dim + 1, gens)


def restrict_to_plane(C: TropicalConeV) -> TropicalPolyhedron:
    """``C`` intersected with ``{x_1 = 0}``, as a polyhedron in dimension ``n``."""
    if C.dim < 2:
        raise DimensionMismatch("restricting requires a cone of dimension at least 2")
    span, conv = [], []
    for g in C.generators:
        if g[0] is EPS:
            span.append(g[1:])
        else:
            # normalized generators already have g[0] == 0
            conv.append(scalar_vec_mul(-g[0], g)[1:])
    return TropicalPolyhedron(C.dim - 1, span, conv)


def project(C: TropicalConeV, r: int) -> TropicalConeV:
    """Projection onto the first ``r`` coordinates."""
    if not 1 <= r <= C.dim:
        raise IndexOutOfRange(f"cannot project a cone of dimension {C.dim} onto {r} coordinates")
    return TropicalConeV(r, [g[:r] for g in C.generators])


# -- membership --------------------------------------------------------------

def residuate(v: Vector, x: Vector) -> Optional[Scalar]:
    """Largest ``l`` with ``l . v <= x``; ``None`` stands for +inf (``v`` all EPS)."""
    best = None
    for vi, xi in zip(v, x):
        if vi is EPS:
            continue
        if xi is EPS:
            return EPS
        t = xi - vi
        if best is None or t < best:
            best = t
    return best


def cone_contains_point(C: TropicalConeV, x: Sequence) -> Tuple[bool, Optional[Tuple[Scalar, ...]]]:
    """Decide ``x in Span(C)`` by residuation.

    Returns ``(True, coefficients)`` with ``(+)_j coefficients[j] . g_j == x``
    on success and ``(False, None)`` otherwise.
    """
    x = vec(x)
    if len(x) != C.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} in cone of dimension {C.dim}")
    lams = []
    acc = eps_vector(C.dim)
    for g in C.generators:
        lam = residuate(g, x)
        if lam is None:
            lam = EPS
        lams.append(lam)
        acc = vec_add(acc, scalar_vec_mul(lam, g))
    if acc == x:
        return True, tuple(lams)
    return False, None


def mform_satisfied(lhs_row: Sequence, rhs_row: Sequence, x: Sequence) -> bool:
    """``(lhs_row | x) <= (rhs_row | x)``."""
    return dot(tuple(lhs_row), tuple(x)) <= dot(tuple(rhs_row), tuple(x))


def cone_subset(C: TropicalConeV, D: TropicalConeV) -> bool:
    """``Span(C) <= Span(D)``, checked on the generators of ``C``."""
    if C.dim != D.dim:
        raise DimensionMismatch(f"cones of dimension {C.dim} and {D.dim}")
    return all(cone_contains_point(D, g)[0] for g in C.generators)


def same_cone(C: TropicalConeV, D: TropicalConeV) -> bool:
    return cone_subset(C, D) and cone_subset(D, C)


def same_polyhedron(P: TropicalPolyhedron, Q: TropicalPolyhedron) -> bool:
    if P.dim != Q.dim:
        return False
    if P.is_empty or Q.is_empty:
        return P.is_empty and Q.is_empty
    return same_cone(lift_to_cone(P), lift_to_cone(Q))


# -- double description step -------------------------------------------------

def remove_redundant(C: TropicalConeV) -> TropicalConeV:
    """Drop, one at a time, generators lying in the span of the others."""
    gens: List[Vector] = list(C.generators)
    i = 0
    while i < len(gens):
        others = TropicalConeV(C.dim, gens[:i] + gens[i + 1:])
        if cone_contains_point(others, gens[i])[0]:
            del gens[i]
        else:
            i += 1
    return TropicalConeV(C.dim, gens)


def intersect_halfspace(C: TropicalConeV, a: Sequence, b: Sequence) -> TropicalConeV:
    """Generators of ``Span(C)`` intersected with ``{x : (a|x) <= (b|x)}``."""
    a, b = vec(a), vec(b)
    if len(a) != C.dim or len(b) != C.dim:
        raise DimensionMismatch(f"half-space of dimension {len(a)}/{len(b)} against cone of dimension {C.dim}")
    inside, outside = [], []
    for g in C.generators:
        ag, bg = dot(a, g), dot(b, g)
        if ag <= bg:
            inside.append((g, bg))
        else:
            outside.append((g, ag))
    if not outside:
        return C
    new = [g for g, _ in inside]
    for v, bv in inside:
        if bv is EPS:
            continue
        for w, aw in outside:
            new.append(vec_add(v, scalar_vec_mul(scalar_sub(bv, aw), w)))
    return remove_redundant(TropicalConeV(C.dim, new))


def intersect_halfspaces(C: TropicalConeV, rows: Iterable[Tuple[Sequence, Sequence]]) -> TropicalConeV:
    """Fold :func:`intersect_halfspace` over ``(a, b)`` constraint pairs in order."""
    for a, b in rows:
        C = intersect_halfspace(C, a, b)
    return C
