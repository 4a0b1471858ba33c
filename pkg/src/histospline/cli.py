"""Command-line front end.

Subcommands: fit, sample, report, convergence, fixture.  Exit codes: 0 on
success, 2 for input/validation problems, 3 when a mathematical
precondition fails (e.g. too few cells for the requested boundary rule).

Histogram files are JSON {"knots": [...], "averages": [...]} or CSV with
header ``knot,average``, one row per knot and the final row's average field
empty (averages belong to the cell starting at their row's knot).  Fitted
splines are JSON {"knots", "values", "slopes", "alpha", "boundary_mode"}
plus a "discrepancy" object for fallback fits.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fixtures as fixtures_mod
from .build import check_alpha, fit, fit_fallback
from .errors import (HistosplineError, NeedsMoreCellsError, NotDominantError,
                     SingularSystemError, ZeroPivotError)
from .evaluate import deriv1, deriv2, value
from .mesh import Histogram, classify_data, make_histogram
from .shape import certify
from .verify import EXP, SINLIN, affine_function, convergence_study

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3

_PRECONDITION_ERRORS = (NeedsMoreCellsError, NotDominantError,
                        ZeroPivotError, SingularSystemError)


class InputFileError(ValueError):
    """Malformed histogram/spline file; message carries a line/field hint."""


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ------------------------------------------------------------------ file IO

def load_histogram(path: str) -> Histogram:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return _histogram_from_json(text, path)
    return _histogram_from_csv(text, path)


def _histogram_from_json(text: str, path: str) -> Histogram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(obj, dict) or "knots" not in obj or "averages" not in obj:
        raise InputFileError(f"{path}: expected object with 'knots' and 'averages'")
    knots, averages = obj["knots"], obj["averages"]
    if len(averages) != len(knots) - 1:
        raise InputFileError(
            f"{path}: {len(knots)} knots require {len(knots) - 1} averages, "
            f"got {len(averages)}")
    return make_histogram(knots, averages)


def _histogram_from_csv(text: str, path: str) -> Histogram:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "knot,average":
        raise InputFileError(f"{path}: line 1: expected header 'knot,average'")
    knots: list[float] = []
    averages: list[float] = []
    for no, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 2:
            raise InputFileError(f"{path}: line {no}: expected 2 fields, got {len(parts)}")
        try:
            knots.append(float(parts[0]))
        except ValueError as exc:
            raise InputFileError(f"{path}: line {no}: bad knot {parts[0]!r}") from exc
        if no == len(lines):  # final knot row carries no average
            if parts[1].strip():
                raise InputFileError(
                    f"{path}: line {no}: final row must leave the average empty")
        else:
            try:
                averages.append(float(parts[1]))
            except ValueError as exc:
                raise InputFileError(f"{path}: line {no}: bad average {parts[1]!r}") from exc
    if len(knots) < 2:
        raise InputFileError(f"{path}: need at least 2 knot rows")
    return make_histogram(knots, averages)


def histogram_to_json(hist: Histogram) -> str:
    return json.dumps({"knots": hist.partition.knots.tolist(),
                       "averages": hist.averages.tolist()}, indent=2) + "\n"


def histogram_to_csv(hist: Histogram) -> str:
    rows = ["knot,average"]
    rows += [f"{_fmt(x)},{_fmt(a)}"
             for x, a in zip(hist.partition.knots[:-1], hist.averages)]
    rows.append(f"{_fmt(hist.partition.knots[-1])},")
    return "\n".join(rows) + "\n"


def load_spline(path: str):
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: invalid JSON ({exc})") from exc
    for key in ("knots", "values", "slopes", "alpha"):
        if not isinstance(obj, dict) or key not in obj:
            raise InputFileError(f"{path}: spline file missing field {key!r}")
    from .build import SplineC1
    from .mesh import Partition
    try:
        return SplineC1(Partition(np.asarray(obj["knots"], dtype=float)),
                        np.asarray(obj["values"], dtype=float),
                        np.asarray(obj["slopes"], dtype=float),
                        check_alpha(obj["alpha"]))
    except (ValueError, HistosplineError) as exc:
        raise InputFileError(f"{path}: inconsistent spline file ({exc})") from exc


# ---------------------------------------------------------------- commands

def _parse_boundary(text: str):
    if text == "paper":
        return None
    if text.startswith("clamped:"):
        parts = text[len("clamped:"):].split(",")
        if len(parts) != 2:
            raise InputFileError("--boundary clamped takes two values: clamped:S0,Sk")
        try:
            return float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise InputFileError(f"--boundary: bad clamped values {text!r}") from exc
    raise InputFileError(f"--boundary must be 'paper' or 'clamped:S0,Sk', got {text!r}")


def cmd_fit(args) -> int:
    hist = load_histogram(args.input)
    alpha = check_alpha(args.alpha)
    ends = _parse_boundary(args.boundary)
    payload: dict = {"alpha": alpha}
    if args.fallback:
        spline, rep = fit_fallback(hist, alpha)
        payload["boundary_mode"] = "fallback"
        payload["discrepancy"] = {
            "value_mismatch": rep.value_mismatch.tolist(),
            "integral_residuals": rep.integral_residuals.tolist(),
        }
    else:
        spline = fit(hist, alpha, ends=ends)
        payload["boundary_mode"] = "paper" if ends is None else "clamped"
        shape = classify_data(hist)
        if shape.convex and not np.all(np.diff(spline.slopes) >= 0.0):
            print("warning: data is convex but solved slopes are not "
                  "nondecreasing; consider --fallback", file=sys.stderr)
        if shape.monotone_increasing and not np.all(spline.slopes >= 0.0):
            print("warning: data is increasing but solved slopes are not "
                  "all nonnegative", file=sys.stderr)
    payload = {"knots": spline.knots.tolist(),
               "values": spline.values.tolist(),
               "slopes": spline.slopes.tolist(), **payload}
    _write(args.output, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 2:
        raise InputFileError("--n must be at least 2")
    spline = load_spline(args.spline)
    lo, hi = spline.partition.span
    xs = np.linspace(lo, hi, args.n)
    rows = ["x,S,S1,S2"]
    v, d1, d2 = value(spline, xs), deriv1(spline, xs), deriv2(spline, xs)
    rows += [f"{_fmt(x)},{_fmt(a)},{_fmt(b)},{_fmt(c)}"
             for x, a, b, c in zip(xs, v, d1, d2)]
    _write(args.output, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_report(args) -> int:
    hist = load_histogram(args.input)
    alpha = check_alpha(args.alpha)
    spline = fit(hist, alpha)
    report = certify(spline, hist)
    payload = {"alpha": alpha, **report.to_dict()}
    _write(args.output, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


_FUNCTIONS = {"exp": EXP, "sinlin": SINLIN, "affine": affine_function()}


def cmd_convergence(args) -> int:
    try:
        ks = [int(p) for p in args.ks.split(",") if p.strip()]
    except ValueError as exc:
        raise InputFileError(f"--ks: expected comma-separated integers, got {args.ks!r}") from exc
    if len(ks) < 3:
        raise InputFileError("--ks needs at least 3 mesh sizes")
    if sorted(ks) != ks:
        raise InputFileError("--ks must be increasing")
    alpha = check_alpha(args.alpha)
    mesh_kind = "uniform" if args.mesh == "uniform" else "smooth_graded"
    records = convergence_study(_FUNCTIONS[args.function], alpha, mesh_kind, ks)

    def order(rec, name):
        if rec.exact:
            return "exact"
        val = getattr(rec, name)
        return "" if val is None else _fmt(val)

    rows = ["k,hbar,err0,err1,jump,order0,order1,orderJump"]
    rows += [",".join([str(r.k), _fmt(r.hbar), _fmt(r.err_value),
                       _fmt(r.err_slope), _fmt(r.jump),
                       order(r, "order_value"), order(r, "order_slope"),
                       order(r, "order_jump")])
             for r in records]
    _write(args.output, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_fixture(args) -> int:
    fixture = fixtures_mod.get_fixture(args.name)
    if args.format == "json":
        _write(args.output, histogram_to_json(fixture.histogram))
    else:
        _write(args.output, histogram_to_csv(fixture.histogram))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="histospline",
        description="Shape-preserving C1 cubic splines from cell-average data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a spline to a histogram file")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--boundary", default="paper",
                   help="'paper' (endpoint values estimated from the data, "
                        "default) or 'clamped:S0,Sk'")
    p.add_argument("--fallback", action="store_true",
                   help="shape-first fit: interior slopes follow the data")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sample", help="sample a fitted spline to CSV")
    p.add_argument("--spline", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("report", help="fit and print a shape report as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("convergence", help="run a refinement study, print CSV")
    p.add_argument("--function", choices=sorted(_FUNCTIONS), default="exp")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--mesh", choices=("uniform", "graded"), default="uniform")
    p.add_argument("--ks", default="10,20,40,80,160")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("fixture", help="write a built-in dataset")
    p.add_argument("--name", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (HistosplineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
