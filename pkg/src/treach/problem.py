"""Problem and result files.

Both are JSON documents. Scalars are JSON integers, decimal literals, or
strings holding an integer, a decimal or a ``p/q`` rational; ``"-inf"`` is
the only spelling of the bottom element. A problem file looks like::

    {
      "dims": {"n": 2, "m": 1, "q": 2},
      "A": [[2, 3], [5, 1]],
      "B": [["-inf"], [0]],
      "C": [[0, "-inf"], ["-inf", 0]],
      "U": {"span": [[0]], "conv": [["-inf"]]},
      "W": {"span": [], "conv": [[1, 1], [3, 1], [1, 3]]},
      "target": {"lhs": [["-inf", "-inf", 0], ["-inf", -1, "-inf"]],
                 "rhs": [["-inf", 1, "-inf"], ["-inf", "-inf", 0]]}
    }

Every field is optional at parse time; each command checks for the fields
it needs. ``dims`` is optional too and, when given, is checked against the
shapes of everything else. ``target`` is either M-form (``lhs``/``rhs`` in
lifted coordinates) or V-form (``span``/``conv``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .errors import DimensionMismatch, ParseError
from .maxplus import EPS, Matrix, Scalar, Vector, mp
from .sets import TropicalPolyhedron

__all__ = [
    "ProblemFile",
    "parse_problem",
    "load_problem",
    "dump_problem",
    "scalar_to_json",
    "polyhedron_to_json",
    "result_document",
    "dumps",
    "parse_polyhedron_document",
]


@dataclass
class ProblemFile:
    A: Optional[Matrix] = None
    B: Optional[Matrix] = None
    C: Optional[Matrix] = None
    U: Optional[TropicalPolyhedron] = None
    W: Optional[TropicalPolyhedron] = None
    target_lhs: Optional[Matrix] = None
    target_rhs: Optional[Matrix] = None
    target_poly: Optional[TropicalPolyhedron] = None
    dims: Dict[str, int] = field(default_factory=dict)

    @property
    def target_is_mform(self) -> bool:
        return self.target_lhs is not None


# -- scalars -----------------------------------------------------------------

def _parse_scalar(x: Any, where: str) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, str, Decimal)):
        raise ParseError(f"{where}: expected a number or \"-inf\", got {x!r}")
    if isinstance(x, str) and x.strip() in ("inf", "+inf", "nan"):
        raise ParseError(f"{where}: {x!r} is not a max-plus scalar")
    try:
        return mp(x)
    except ParseError:
        raise ParseError(f"{where}: {x!r} is not a max-plus scalar") from None


def scalar_to_json(a: Scalar) -> Union[int, str]:
    if a is EPS:
        return "-inf"
    if isinstance(a, Fraction):
        return f"{a.numerator}/{a.denominator}"
    return int(a)


def _parse_vector(x: Any, where: str, length: Optional[int] = None) -> Vector:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list")
    v = tuple(_parse_scalar(a, f"{where}[{i}]") for i, a in enumerate(x))
    if length is not None and len(v) != length:
        raise DimensionMismatch(f"{where}: expected length {length}, got {len(v)}")
    return v


def _parse_matrix(x: Any, where: str) -> Matrix:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list of rows")
    rows = tuple(_parse_vector(r, f"{where}[{i}]") for i, r in enumerate(x))
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch(f"{where}: ragged rows")
    return rows


def _shape(M: Matrix):
    return len(M), (len(M[0]) if M else 0)


def _parse_gens(x: Any, where: str) -> List[Vector]:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list of generators")
    gens = [_parse_vector(g, f"{where}[{i}]") for i, g in enumerate(x)]
    if gens and any(len(g) != len(gens[0]) for g in gens):
        raise DimensionMismatch(f"{where}: generators of different lengths")
    return gens


def _parse_polyhedron(x: Any, where: str, dim: Optional[int]) -> TropicalPolyhedron:
    if not isinstance(x, dict):
        raise ParseError(f"{where}: expected an object with \"span\" and \"conv\"")
    unknown = set(x) - {"span", "conv", "dim"}
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")
    span = _parse_gens(x.get("span", []), f"{where}.span")
    conv = _parse_gens(x.get("conv", []), f"{where}.conv")
    lengths = {len(g) for g in span + conv}
    if "dim" in x:
        if isinstance(x["dim"], bool) or not isinstance(x["dim"], int):
            raise ParseError(f"{where}.dim: expected an integer")
        lengths.add(x["dim"])
    if dim is not None:
        lengths.add(dim)
    if len(lengths) > 1:
        raise DimensionMismatch(f"{where}: inconsistent dimensions {sorted(lengths)}")
    if not lengths:
        raise ParseError(f"{where}: cannot infer the dimension of an empty set; add \"dim\"")
    return TropicalPolyhedron(lengths.pop(), span, conv)


# -- problem files -----------------------------------------------------------

_KEYS = {"dims", "A", "B", "C", "U", "W", "target"}


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_problem(path: Union[str, Path]) -> ProblemFile:
    """Read and validate a problem file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return load_problem(_load_json(text, str(path)))


def load_problem(doc: Any) -> ProblemFile:
    if not isinstance(doc, dict):
        raise ParseError("problem: expected a JSON object at top level")
    unknown = set(doc) - _KEYS
    if unknown:
        raise ParseError(f"problem: unknown keys {sorted(unknown)}")

    dims: Dict[str, int] = {}
    if "dims" in doc:
        if not isinstance(doc["dims"], dict):
            raise ParseError("dims: expected an object")
        for k, v in doc["dims"].items():
            if k not in ("n", "m", "q"):
                raise ParseError(f"dims: unknown key {k!r}")
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ParseError(f"dims.{k}: expected a non-negative integer")
            dims[k] = v

    def agree(name: str, value: int, where: str) -> None:
        if name in dims and dims[name] != value:
            raise DimensionMismatch(f"{where}: {name} is declared {dims[name]} but the data gives {value}")
        dims[name] = value

    p = ProblemFile()
    if "A" in doc:
        p.A = _parse_matrix(doc["A"], "A")
        k, m = _shape(p.A)
        if k != m or k == 0:
            raise DimensionMismatch(f"A: expected a non-empty square matrix, got {k}x{m}")
        agree("n", k, "A")
    if "B" in doc:
        p.B = _parse_matrix(doc["B"], "B")
        k, m = _shape(p.B)
        agree("n", k, "B rows")
        agree("m", m, "B columns")
    if "C" in doc:
        p.C = _parse_matrix(doc["C"], "C")
        k, q = _shape(p.C)
        agree("n", k, "C rows")
        agree("q", q, "C columns")
    if "U" in doc:
        p.U = _parse_polyhedron(doc["U"], "U", dims.get("m"))
        agree("m", p.U.dim, "U")
    if "W" in doc:
        p.W = _parse_polyhedron(doc["W"], "W", dims.get("q"))
        agree("q", p.W.dim, "W")
        if p.C is None:
            agree("n", p.W.dim, "W (no C given, so disturbances add to the state directly)")
    if "target" in doc:
        t = doc["target"]
        if not isinstance(t, dict):
            raise ParseError("target: expected an object")
        if "lhs" in t or "rhs" in t:
            unknown = set(t) - {"lhs", "rhs"}
            if unknown:
                raise ParseError(f"target: unknown keys {sorted(unknown)}")
            lhs = _parse_matrix(t.get("lhs", []), "target.lhs")
            rhs = _parse_matrix(t.get("rhs", []), "target.rhs")
            if len(lhs) != len(rhs):
                raise DimensionMismatch(f"target: lhs has {len(lhs)} rows, rhs has {len(rhs)}")
            widths = {len(r) for r in lhs + rhs}
            if len(widths) > 1:
                raise DimensionMismatch(f"target: rows of different lengths {sorted(widths)}")
            if widths:
                agree("n", widths.pop() - 1, "target rows (lifted, so n + 1 entries)")
            elif "n" not in dims:
                raise ParseError("target: cannot infer the dimension of an unconstrained target")
            p.target_lhs, p.target_rhs = lhs, rhs
        else:
            p.target_poly = _parse_polyhedron(t, "target", dims.get("n"))
            agree("n", p.target_poly.dim, "target")
    p.dims = dims
    return p


def polyhedron_to_json(P: TropicalPolyhedron) -> Dict[str, Any]:
    return {
        "dim": P.dim,
        "span": [[scalar_to_json(a) for a in g] for g in P.span_gens],
        "conv": [[scalar_to_json(a) for a in g] for g in P.conv_gens],
    }


def _matrix_to_json(M: Matrix) -> List[List[Union[int, str]]]:
    return [[scalar_to_json(a) for a in row] for row in M]


def dump_problem(p: ProblemFile) -> Dict[str, Any]:
    """Canonical JSON document for ``p``."""
    doc: Dict[str, Any] = {}
    if p.dims:
        doc["dims"] = dict(sorted(p.dims.items()))
    for name in ("A", "B", "C"):
        M = getattr(p, name)
        if M is not None:
            doc[name] = _matrix_to_json(M)
    for name in ("U", "W"):
        P = getattr(p, name)
        if P is not None:
            doc[name] = polyhedron_to_json(P)
    if p.target_is_mform:
        doc["target"] = {"lhs": _matrix_to_json(p.target_lhs), "rhs": _matrix_to_json(p.target_rhs)}
    elif p.target_poly is not None:
        doc["target"] = polyhedron_to_json(p.target_poly)
    return doc


# -- results -----------------------------------------------------------------

def result_document(P: TropicalPolyhedron, command: str, trace: List[Dict[str, Any]]) -> Dict[str, Any]:
    empty = P.is_empty
    return {
        "status": "empty" if empty else "nonempty",
        "dim": P.dim,
        "span_gens": [] if empty else [[scalar_to_json(a) for a in g] for g in P.span_gens],
        "conv_gens": [] if empty else [[scalar_to_json(a) for a in g] for g in P.conv_gens],
        "provenance": {"command": command, "trace": trace},
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_polyhedron_document(path: Union[str, Path]) -> TropicalPolyhedron:
    """Polyhedron from a result file, or from a bare ``{"span", "conv"}`` object."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    doc = _load_json(text, str(path))
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    if "span_gens" in doc or "conv_gens" in doc or "status" in doc:
        if doc.get("status") == "empty":
            dim = doc.get("dim")
            if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
                raise ParseError(f"{path}: empty result without a valid \"dim\"")
            return TropicalPolyhedron.empty(dim)
        body = {"span": doc.get("span_gens", []), "conv": doc.get("conv_gens", [])}
        if "dim" in doc:
            body["dim"] = doc["dim"]
        return _parse_polyhedron(body, str(path), None)
    return _parse_polyhedron(doc, str(path), None)
