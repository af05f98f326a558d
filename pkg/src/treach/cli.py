"""Command line entry point.

    treach <ainv|gamma|phi|upsilon|sample> FILE [--out OUT] [--trace]
           [--box X1MIN X1MAX X2MIN X2MAX --res N]

Exit status: 0 on success (an empty result is a success), 1 for parse and
dimension errors, 2 when an operator precondition is violated.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, ParseError, PreconditionViolated, TropicalError
from .maxplus import EPS, format_scalar, identity, mp
from .problem import ProblemFile, dumps, parse_polyhedron_document, parse_problem, result_document
from .reach import SystemModel, TargetSetM, TraceEntry, record_stage, a_inverse, gamma, linear_image, phi, upsilon
from .sets import TropicalPolyhedron, lift_to_cone

__all__ = ["main", "run_command", "sample_csv", "COMMANDS"]

COMMANDS = ("ainv", "gamma", "phi", "upsilon", "sample")


def _require(p: ProblemFile, cmd: str, *names: str) -> None:
    missing = [n for n in names if getattr(p, n) is None]
    if missing:
        raise ParseError(f"{cmd}: problem file lacks {', '.join(missing)}")


def _target_mform(p: ProblemFile, cmd: str) -> TargetSetM:
    if not p.target_is_mform:
        if p.target_poly is not None:
            raise ParseError(f"{cmd}: the target must be given in M-form (lhs/rhs)")
        raise ParseError(f"{cmd}: problem file lacks target")
    return TargetSetM(p.dims["n"], p.target_lhs, p.target_rhs)


def _target_polyhedron(p: ProblemFile, cmd: str) -> TropicalPolyhedron:
    if p.target_poly is not None:
        return p.target_poly
    return _target_mform(p, cmd).to_polyhedron()


def _disturbance(p: ProblemFile) -> TropicalPolyhedron:
    return p.W if p.C is None else linear_image(p.C, p.W)


def run_command(cmd: str, p: ProblemFile) -> Tuple[TropicalPolyhedron, List[TraceEntry]]:
    """Run one operator on a parsed problem; returns the set and its trace."""
    trace: List[TraceEntry] = []
    if cmd == "upsilon":
        _require(p, cmd, "A", "B", "U", "W")
        target = _target_mform(p, cmd)
        C = p.C if p.C is not None else identity(p.dims["n"])
        model = SystemModel(p.A, p.B, C, p.U, p.W)
        return upsilon(model, target, trace), trace
    if cmd == "phi":
        _require(p, cmd, "W")
        target = _target_mform(p, cmd)
        W = _disturbance(p)
        record_stage(trace, "disturbance image", W)
        out = _tag("phi", phi, W, target)
    elif cmd == "gamma":
        _require(p, cmd, "B", "U")
        Z = _target_polyhedron(p, cmd)
        record_stage(trace, "target", Z)
        out = _tag("gamma", gamma, p.B, p.U, lift_to_cone(Z))
    elif cmd == "ainv":
        _require(p, cmd, "A")
        Z = _target_polyhedron(p, cmd)
        record_stage(trace, "target", Z)
        out = _tag("ainv", a_inverse, p.A, lift_to_cone(Z))
    else:
        raise ParseError(f"unknown command {cmd!r}")
    record_stage(trace, cmd, out)
    return out, trace


def _tag(stage, fn, *args):
    try:
        return fn(*args)
    except TropicalError as err:
        if getattr(err, "stage", None) is None:
            err.stage = stage
        raise


def _axis(lo: Fraction, hi: Fraction, res: int) -> List[Fraction]:
    if res == 1:
        return [lo]
    step = (hi - lo) / (res - 1)
    return [lo + k * step for k in range(res)]


def sample_csv(P: TropicalPolyhedron, box: Sequence, res: int) -> str:
    """CSV rows ``x1,x2,member`` over a ``res`` x ``res`` grid of ``box``."""
    if P.dim != 2:
        raise DimensionMismatch(f"sampling needs a polyhedron of dimension 2, got {P.dim}")
    if res < 1:
        raise ParseError("--res must be at least 1")
    x1lo, x1hi, x2lo, x2hi = (mp(b) for b in box)
    if EPS in (x1lo, x1hi, x2lo, x2hi):
        raise ParseError("--box bounds must be finite")
    lines = ["x1,x2,member"]
    for a in _axis(Fraction(x1lo), Fraction(x1hi), res):
        for b in _axis(Fraction(x2lo), Fraction(x2hi), res):
            x = (mp(a), mp(b))
            lines.append(f"{format_scalar(x[0])},{format_scalar(x[1])},{int(P.contains(x))}")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treach",
        description="One-step backward reachability for max-plus linear systems over tropical polyhedra.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", help="problem file (result file for 'sample')")
    parser.add_argument("--out", help="write the result here instead of stdout")
    parser.add_argument("--trace", action="store_true", help="log generator counts per stage to stderr")
    parser.add_argument("--box", nargs=4, metavar=("X1MIN", "X1MAX", "X2MIN", "X2MAX"))
    parser.add_argument("--res", type=int, default=11, help="grid points per axis for 'sample'")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(format="%(name)s: %(message)s", level=logging.INFO if args.trace else logging.WARNING)
    try:
        if args.command == "sample":
            if args.box is None:
                raise ParseError("sample: --box is required")
            text = sample_csv(parse_polyhedron_document(args.file), args.box, args.res)
        else:
            out, trace = run_command(args.command, parse_problem(args.file))
            text = dumps(result_document(out, args.command, [t.as_dict() for t in trace]))
    except (ParseError, DimensionMismatch) as err:
        stage = getattr(err, "stage", None)
        print(f"treach: {stage + ': ' if stage else ''}{err}", file=sys.stderr)
        return 1
    except PreconditionViolated as err:
        stage = getattr(err, "stage", None) or args.command
        print(f"treach: {stage}: {err}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
