"""Exact max-plus scalar, vector and matrix arithmetic.

Finite scalars are Python ``int`` or :class:`fractions.Fraction`; the bottom
element (``-inf``) is the singleton :data:`EPS`. ``EPS`` is not a number: it
supports ordering against rationals (it is smaller than all of them) but no
arithmetic, so ``EPS + 1`` raises ``TypeError`` instead of silently producing
a wrong value. Use :func:`scalar_mul` and friends.

Vectors are tuples of scalars, matrices are tuples of row tuples.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionMismatch, ParseError

__all__ = [
    "EPS",
    "Scalar",
    "Vector",
    "Matrix",
    "is_eps",
    "mp",
    "vec",
    "mat",
    "scalar_add",
    "scalar_mul",
    "scalar_sub",
    "vec_add",
    "vec_sum",
    "scalar_vec_mul",
    "vec_leq",
    "mat_vec_mul",
    "mat_mul",
    "transpose",
    "submatrix",
    "dot",
    "metric",
    "eps_vector",
    "unit_vector",
    "identity",
    "eps_matrix",
    "format_scalar",
]


class _Bottom:
    """The max-plus zero, usually written epsilon or -inf."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EPS"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (_Bottom, ())

    def __hash__(self):
        return hash("max-plus bottom")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


EPS = _Bottom()

Scalar = Union[int, Fraction, _Bottom]
Vector = Tuple[Scalar, ...]
Matrix = Tuple[Vector, ...]


def is_eps(a) -> bool:
    return a is EPS


def _canon_rational(q: Fraction) -> Scalar:
    return int(q) if q.denominator == 1 else q


def mp(x) -> Scalar:
    """Coerce ``x`` to a max-plus scalar.

    Accepts ``EPS``, ``-inf`` (float or the string ``"-inf"``), ints,
    fractions, decimals, rational strings such as ``"3/4"`` or ``"1.25"``, and
    finite floats (converted through their shortest decimal repr).
    """
    if x is EPS:
        return x
    if isinstance(x, bool):
        raise ParseError(f"booleans are not max-plus scalars: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _canon_rational(x)
    if isinstance(x, Rational):
        return _canon_rational(Fraction(x.numerator, x.denominator))
    if isinstance(x, float):
        if x == -math.inf:
            return EPS
        if not math.isfinite(x):
            raise ParseError(f"not a max-plus scalar: {x!r}")
        return _canon_rational(Fraction(repr(x)))
    if isinstance(x, Decimal):
        if x.is_infinite() and x < 0:
            return EPS
        if not x.is_finite():
            raise ParseError(f"not a max-plus scalar: {x!r}")
        return _canon_rational(Fraction(x))
    if isinstance(x, str):
        s = x.strip()
        if s == "-inf":
            return EPS
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a max-plus scalar: {x!r}") from None
        return _canon_rational(q)
    raise ParseError(f"not a max-plus scalar: {x!r}")


def vec(values: Iterable) -> Vector:
    return tuple(mp(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix rows")
    return out


def format_scalar(a: Scalar) -> str:
    return "-inf" if a is EPS else str(a)


# -- scalars -----------------------------------------------------------------

def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    """``a (+) b = max(a, b)``."""
    if a is EPS:
        return b
    if b is EPS:
        return a
    return a if a >= b else b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    """``a (x) b = a + b`` with EPS absorbing."""
    if a is EPS or b is EPS:
        return EPS
    return a + b


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    """``a - b`` for finite ``b``; EPS minus a finite value is EPS."""
    if b is EPS:
        raise ValueError("cannot subtract EPS")
    if a is EPS:
        return EPS
    return a - b


# -- vectors -----------------------------------------------------------------

def _check_len(x: Sequence, y: Sequence, what: str = "vectors") -> None:
    if len(x) != len(y):
        raise DimensionMismatch(f"{what} of length {len(x)} and {len(y)}")


def vec_add(x: Vector, y: Vector) -> Vector:
    _check_len(x, y)
    return tuple(scalar_add(a, b) for a, b in zip(x, y))


def vec_sum(vectors: Iterable[Vector], n: int) -> Vector:
    """Max-plus sum of ``vectors``; EPS vector of length ``n`` when empty."""
    acc = eps_vector(n)
    for v in vectors:
        acc = vec_add(acc, v)
    return acc


def scalar_vec_mul(lam: Scalar, x: Vector) -> Vector:
    if lam is EPS:
        return (EPS,) * len(x)
    return tuple(EPS if a is EPS else a + lam for a in x)


def vec_leq(x: Vector, y: Vector) -> bool:
    _check_len(x, y)
    return all(a <= b for a, b in zip(x, y))


def dot(a: Vector, b: Vector) -> Scalar:
    """Max-plus scalar product ``(a|b) = max_i a_i + b_i``."""
    _check_len(a, b)
    best = EPS
    for ai, bi in zip(a, b):
        if ai is EPS or bi is EPS:
            continue
        s = ai + bi
        if best is EPS or s > best:
            best = s
    return best


def eps_vector(n: int) -> Vector:
    return (EPS,) * n


def unit_vector(n: int, i: int) -> Vector:
    """Tropical unit vector: 0 at position ``i``, EPS elsewhere."""
    return tuple(0 if j == i else EPS for j in range(n))


# -- matrices ----------------------------------------------------------------

def _ncols(A: Matrix) -> int:
    return len(A[0]) if A else 0


def mat_vec_mul(A: Matrix, x: Vector) -> Vector:
    """``(A (x) x)_i = max_j A_ij + x_j``."""
    if A and len(A[0]) != len(x):
        raise DimensionMismatch(f"matrix with {len(A[0])} columns times vector of length {len(x)}")
    return tuple(dot(row, x) for row in A)


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if _ncols(A) != len(B):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{_ncols(A)} by {len(B)}x{_ncols(B)}")
    cols = transpose(B)
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def submatrix(A: Matrix, rows: range | slice, cols: range | slice) -> Matrix:
    """Rows and columns selected by 0-based ``range``/``slice`` objects."""
    if isinstance(rows, range):
        rows = slice(rows.start, rows.stop)
    if isinstance(cols, range):
        cols = slice(cols.start, cols.stop)
    return tuple(tuple(r[cols]) for r in A[rows])


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def eps_matrix(k: int, m: int) -> Matrix:
    return tuple((EPS,) * m for _ in range(k))


def metric(a: Scalar, b: Scalar) -> float:
    """``|exp(a) - exp(b)|`` with ``exp(EPS) = 0``; floating point, diagnostics only."""
    ea = 0.0 if a is EPS else math.exp(a)
    eb = 0.0 if b is EPS else math.exp(b)
    return abs(ea - eb)
