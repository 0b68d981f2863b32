"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import List, Optional

import numpy as np

from .model import (
    DEFAULT_TOLERANCE,
    ClassSpec,
    DomainError,
    Family,
    Kind,
    PoleError,
    RadiiError,
    RadiusKind,
    RadiusQuery,
    validate,
)
from .solver import solve_radius
from .extremal import ExtremalFunction
from . import verification as ver

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

TABLE_HEADER = ["class", "kind", "alpha", "b", "m", "radius", "residual", "iterations"]
TRACE_HEADER = ["theta", "re_star", "im_star", "re_convex", "im_convex", "parabolic_margin"]
TOL_ENV = "RADII_DEFAULT_TOL"


_FLAG_OF = {"tolerance": "tol"}


class UsageError(Exception):
    pass


def fmt(x: Optional[float]) -> str:
    """17 significant digits, so every value round-trips through text."""
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.17g}"


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None


def _float_flag(name: str, raw: Optional[str]) -> Optional[float]:
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"--{name}: expected a number, got {raw!r}") from None


def _add_query_flags(p: argparse.ArgumentParser, kind_required: bool = True) -> None:
    p.add_argument("--class", dest="family", required=True, choices=[f.value for f in Family])
    p.add_argument("--kind", required=kind_required, choices=[k.value for k in Kind])
    p.add_argument("--alpha", help="order alpha in [0, 1); ignored for parabolic and ucv")
    p.add_argument("--b", help="second coefficient parameter, |a_2| = 2b")
    p.add_argument("--m", help="coefficient bound M (not used by class n)")
    p.add_argument("--tol", help="root tolerance (default 1e-12 or $RADII_DEFAULT_TOL)")


def build_query(family: str, kind: str, alpha, b, m, tol) -> RadiusQuery:
    variant = Kind(kind)
    if variant in (Kind.PARABOLIC, Kind.UCV):
        if alpha is not None:
            print(f"warning: --alpha ignored for kind {kind} (order fixed at 1/2)", file=sys.stderr)
        a = 0.5
    else:
        if alpha is None:
            raise UsageError(f"--alpha: required for kind {kind}")
        a = _float_flag("alpha", alpha)
    if b is None:
        raise UsageError("--b: required")
    bv = _float_flag("b", b)
    mv = _float_flag("m", m)
    tv = default_tolerance() if tol is None else _float_flag("tol", tol)
    query = RadiusQuery(ClassSpec(Family(family), bv, mv), RadiusKind(variant, a), tv)
    validate(query)
    return query


def _query_from_args(args) -> RadiusQuery:
    return build_query(args.family, args.kind, args.alpha, args.b, args.m, args.tol)


def cmd_solve(args, out) -> int:
    query = _query_from_args(args)
    res = solve_radius(query)
    if args.format == "json":
        payload = {
            "equation_id": res.equation_id,
            "radius": res.radius,
            "residual": res.residual,
            "iterations": res.iterations,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(
            f"equation_id={res.equation_id} radius={fmt(res.radius)} "
            f"residual={fmt(res.residual)} iterations={res.iterations}\n"
        )
    return EXIT_OK


def parse_range(name: str, text: str) -> List[float]:
    """``LO:HI:STEP`` inclusive of HI; empty when LO > HI."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--sweep {name}: expected LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--sweep {name}: non-numeric range {text!r}") from None
    if not step > 0 or not all(map(math.isfinite, (lo, hi, step))):
        raise UsageError(f"--sweep {name}: STEP must be positive and finite")
    if lo > hi:
        return []
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def parse_sweeps(specs: List[str]) -> dict:
    sweeps = {}
    for spec in specs or []:
        name, sep, body = spec.partition("=")
        if not sep or name not in ("alpha", "b", "m"):
            raise UsageError(f"--sweep: expected alpha=..., b=... or m=..., got {spec!r}")
        if name in sweeps:
            raise UsageError(f"--sweep {name}: given twice")
        if name == "m":
            try:
                sweeps[name] = sorted(float(v) for v in body.split(",") if v)
            except ValueError:
                raise UsageError(f"--sweep m: expected V1,V2,..., got {body!r}") from None
        else:
            sweeps[name] = parse_range(name, body)
    return sweeps


def table_rows(args) -> List[dict]:
    sweeps = parse_sweeps(args.sweep)
    alphas = sweeps.get("alpha", [args.alpha])
    bs = sweeps.get("b", [args.b])
    ms = sweeps.get("m", [args.m])
    if any(v is None for v in bs):
        raise UsageError("--b: required (fixed or swept)")
    rows = []
    # swept lists are ascending, so nesting yields (alpha, b, m) order
    for a in alphas:
        for b in bs:
            for m in ms:
                row = {"class": args.family, "kind": args.kind, "alpha": None, "b": None, "m": None}
                try:
                    query = build_query(
                        args.family,
                        args.kind,
                        None if a is None else str(a),
                        str(b),
                        None if m is None else str(m),
                        args.tol,
                    )
                    row["alpha"], row["b"], row["m"] = query.kind.order, query.cls.b, query.cls.m
                    res = solve_radius(query)
                    row.update(radius=res.radius, residual=res.residual, iterations=res.iterations)
                except DomainError as exc:
                    row.update(radius="DOMAIN_ERROR", residual=None, iterations=None, error=str(exc))
                    row.update(alpha=_float_or_none(a), b=_float_or_none(b), m=_float_or_none(m))
                except RadiiError as exc:
                    row.update(radius="NUMERIC_ERROR", residual=None, iterations=None, error=str(exc))
                    row.update(alpha=_float_or_none(a), b=_float_or_none(b), m=_float_or_none(m))
                rows.append(row)
    return rows


def _float_or_none(v):
    try:
        return None if v is None else float(v)
    except ValueError:
        return None


def cmd_table(args, out) -> int:
    if args.kind in (Kind.PARABOLIC.value, Kind.UCV.value) and args.sweep and any(
        s.startswith("alpha=") for s in args.sweep
    ):
        raise UsageError(f"--sweep alpha: kind {args.kind} has a fixed order")
    rows = table_rows(args)
    buf = io.StringIO()
    if args.format == "json":
        buf.write(json.dumps(rows, indent=2) + "\n")
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_HEADER)
        for row in rows:
            w.writerow(
                [row["class"], row["kind"]]
                + [row[k] if isinstance(row[k], str) else fmt(row[k]) for k in TABLE_HEADER[2:]]
            )
    _emit(buf.getvalue(), args.out, out)
    return EXIT_OK


def _emit(text: str, path: Optional[str], out) -> None:
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_verify(args, out) -> int:
    grid = ver.FULL_GRID if args.grid == "full" else ver.ACCEPTANCE_GRID
    reports = ver.run_named_suite(args.suite, grid=grid, samples=args.samples)
    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            out.write(
                f"{status} {r.check_name} measured={fmt(r.measured)} expected={fmt(r.expected)} "
                f"tol={r.tolerance:g} {r.detail}\n".rstrip() + "\n"
            )
        n_fail = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - n_fail}/{len(reports)} checks passed\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def cmd_trace(args, out) -> int:
    query = _query_from_args(args)
    samples = args.samples
    if samples < 64 or samples & (samples - 1):
        raise UsageError(f"--samples: must be a power of two >= 64, got {samples}")
    if args.r == "auto":
        r = solve_radius(query).radius
    else:
        r = _float_flag("r", args.r)
        if not 0.0 < r < 1.0:
            raise UsageError(f"--r: must lie in (0, 1), got {r}")
    ef = ExtremalFunction(query.cls)
    theta, z = ver.circle_points(r, samples)
    w, v = _trace_quotients(ef, z, query.kind)
    blank = np.full(samples, np.nan)
    cols = [theta]
    cols += [w.real, w.imag] if w is not None else [blank, blank]
    cols += [v.real, v.imag] if v is not None else [blank, blank]
    cols.append(w.real - abs(w - 1) if w is not None else blank)
    present = [c for c in cols if c is not blank]
    if not all(np.all(np.isfinite(c)) for c in present):
        raise _NumericFailure(f"non-finite quotient on |z|={fmt(r)}")
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(TRACE_HEADER)
    for i in range(samples):
        wr.writerow(["" if c is blank else fmt(float(c[i])) for c in cols])
    _emit(buf.getvalue(), args.out, out)
    return EXIT_OK


def _trace_quotients(ef: ExtremalFunction, z, kind: RadiusKind):
    # the quotient the kind is about must exist; the other one is dropped
    # (left blank) when it has a pole on the circle, e.g. f' = 0 at r = r0
    need_star = not kind.is_convex
    w, v = ef.quotients(z, star=need_star, convex=not need_star)
    try:
        if need_star:
            v = ef.quotients(z, star=False, convex=True)[1]
        else:
            w = ef.quotients(z, star=True, convex=False)[0]
    except PoleError:
        print("warning: secondary quotient has a pole on this circle; columns left blank",
              file=sys.stderr)
    return w, v


class _NumericFailure(RadiiError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radii",
        description="Sharp radii of starlikeness and convexity under coefficient bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute one radius")
    _add_query_flags(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="sweep parameters and tabulate radii")
    _add_query_flags(p)
    p.add_argument("--sweep", action="append", metavar="NAME=SPEC",
                   help="alpha=LO:HI:STEP, b=LO:HI:STEP or m=V1,V2,...; repeatable")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path (default standard output)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=list(ver.SUITES), default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--grid", choices=["acceptance", "full"], default="acceptance")
    p.add_argument("--samples", type=int, default=ver.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="emit quotients around a circle as CSV")
    _add_query_flags(p)
    p.add_argument("--r", default="auto", help="circle radius, or 'auto' for the computed radius")
    p.add_argument("--samples", type=int, default=ver.DEFAULT_SAMPLES)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--out", help="output path (default standard output)")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        flag = _FLAG_OF.get(exc.field, exc.field)
        print(f"error: --{flag}: {str(exc).partition(': ')[2]}", file=sys.stderr)
        return EXIT_USAGE
    except RadiiError as exc:
        print(f"error: numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
