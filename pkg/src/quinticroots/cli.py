"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 series not usable
(outside its domain or diverged) with the oracle result emitted instead.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import time

import numpy as np

from . import __version__
from .core import DepressedQuintic, PrincipalQuintic, as_complex, monic
from .eos import LandauParams, equilibrium, linear_temperature_coefficient, sweep
from .exceptions import OutsideConvergenceDomain, QuinticError, SeriesDiverged, SeriesError
from .oracle import find_all_roots
from .series import (
    DEFAULT_MAX_SHELLS,
    DEFAULT_MAX_TERMS,
    DEFAULT_REL_TOL,
    Trinomial,
    convergence_margin,
    in_convergence_domain,
    passare_tsikh_root,
    trinomial_root,
)
from .tschirnhaus import PipelineOptions, solve_pipeline

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_SERIES = 0, 1, 2
SWEEP_COLUMNS = ("a", "f", "u_eq", "method", "margin", "terms_used", "residual", "degenerate")


_NUM = r"\d*\.?\d+(?:[eE][-+]?\d+)?"
_NEGATIVE_VALUE = re.compile(rf"^-{_NUM}(?:,[-+]?{_NUM})?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-0.5,1" through as a value rather than an unknown flag
        self._negative_number_matcher = _NEGATIVE_VALUE

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- serialisation ---------------------------------------------------------


def _plain(value):
    """Turn results into JSON-ready builtins; complex becomes [re, im]."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, type(None), str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, complex):
        return [_plain(value.real), _plain(value.imag)]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("refusing to serialise a non-finite number")
        return value + 0.0  # folds -0.0 into 0.0
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps_canonical(obj, indent: int = 2) -> str:
    """JSON with sorted keys and floats at 17 significant digits.

    Re-serialising the parsed output reproduces it byte for byte.
    """

    def enc(v, depth):
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(v[k], depth + 1)}" for k in sorted(v)]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(v, list):
            if not v:
                return "[]"
            if all(not isinstance(x, (dict, list)) for x in v):
                return "[" + ", ".join(enc(x, depth + 1) for x in v) + "]"
            return "[\n" + ",\n".join(pad + enc(x, depth + 1) for x in v) + "\n" + end + "]"
        if isinstance(v, bool) or v is None:
            return json.dumps(v)
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return format(v, ".17g")
        return json.dumps(v)

    return enc(_plain(obj), 0) + "\n"


def _fmt_csv(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v + 0.0)
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_csv(v) for v in row])
    return buf.getvalue()


def _record(command, inputs, results, started):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "timing_ms": (time.perf_counter() - started) * 1e3,
    }


# -- argument helpers ------------------------------------------------------


def parse_complex(text: str) -> complex:
    """``"re"`` or ``"re,im"``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return as_complex(float(parts[0]))
        if len(parts) == 2:
            return as_complex(complex(float(parts[0]), float(parts[1])))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def default_max_shells(fallback: int = DEFAULT_MAX_SHELLS) -> int:
    env = os.environ.get("QUINTIC_MAX_SHELLS")
    if env is None:
        return fallback
    try:
        v = int(env)
    except ValueError:
        raise UsageError(f"QUINTIC_MAX_SHELLS must be an integer, got {env!r}") from None
    if v < 1:
        raise UsageError("QUINTIC_MAX_SHELLS must be >= 1")
    return v


def _roots_payload(rootset):
    return {"roots": list(rootset.roots), "residuals": list(rootset.residuals)}


# -- commands --------------------------------------------------------------


def cmd_solve_principal(args):
    started = time.perf_counter()
    max_shells = args.max_shells or default_max_shells()
    q = PrincipalQuintic(args.A, args.B)
    margin = convergence_margin(q)
    oracle = find_all_roots(q.monic_coeffs())
    results = {
        "convergence_margin": margin,
        "in_domain": in_convergence_domain(q),
        "oracle_roots": list(oracle.roots),
        "oracle_residuals": list(oracle.residuals),
        "series_root": None,
        "converged": False,
        "terms_used": None,
        "matched_oracle_index": None,
        "match_distance": None,
    }
    code = EXIT_OK
    try:
        r = passare_tsikh_root(q, args.rel_tol, max_shells)
    except OutsideConvergenceDomain as exc:
        results["status"] = "outside_domain"
        results["message"] = str(exc)
        code = EXIT_SERIES
    except SeriesError as exc:
        results["status"] = "diverged" if isinstance(exc, SeriesDiverged) else "budget_exhausted"
        results["message"] = str(exc)
        results["terms_used"] = exc.terms_used
        code = EXIT_SERIES
    else:
        dists = [abs(r.value - o) for o in oracle.roots]
        idx = min(range(len(dists)), key=dists.__getitem__)
        results.update(
            status="converged",
            series_root=r.value,
            converged=r.converged,
            terms_used=r.terms_used,
            last_term_magnitude=r.last_term_magnitude,
            series_residual=abs(
                q.B * r.value**5 + q.A * r.value**2 + r.value + 1
            ),
            matched_oracle_index=idx,
            match_distance=dists[idx],
        )
    inputs = {"A": q.A, "B": q.B, "rel_tol": args.rel_tol, "max_shells": max_shells}
    if args.format == "csv":
        rows = []
        if results["series_root"] is not None:
            z = results["series_root"]
            rows.append(("series", 0, z.real, z.imag, results["series_residual"]))
        for i, (z, res) in enumerate(zip(oracle.roots, oracle.residuals)):
            rows.append(("oracle", i, z.real, z.imag, res))
        return _csv(("source", "index", "re", "im", "residual"), rows), code
    return dumps_canonical(_record("solve-principal", inputs, results, started)), code


def _report_payload(report):
    m = report.map
    return {
        "roots": list(report.recovered_roots.roots),
        "residuals": list(report.recovered_roots.residuals),
        "method": report.recovered_roots.method,
        "fallback_used": report.fallback_used,
        "map": None
        if m is None
        else {
            "alpha": m.alpha,
            "beta": m.beta,
            "b2": m.b2,
            "b1": m.b1,
            "b0": m.b0,
            "identity": m.identity,
        },
        "scaled": None if report.scaled is None else {"A": report.scaled.A, "B": report.scaled.B},
        "scale": report.scale,
        "convergence_margin": report.margin,
        "series": None
        if report.series_root is None
        else {
            "root": report.series_root.value,
            "terms_used": report.series_root.terms_used,
            "converged": report.series_root.converged,
        },
        "diagnostics": dict(report.diagnostics),
    }


def cmd_solve_depressed(args):
    started = time.perf_counter()
    q = DepressedQuintic(args.a3, args.a1, args.a0)
    opts = PipelineOptions(max_shells=args.max_shells or default_max_shells(PipelineOptions.max_shells))
    report = solve_pipeline(q, opts)
    if args.format == "csv":
        rows = [
            (i, z.real, z.imag, res)
            for i, (z, res) in enumerate(zip(report.recovered_roots.roots, report.recovered_roots.residuals))
        ]
        return _csv(("index", "re", "im", "residual"), rows), EXIT_OK
    inputs = {"a3": q.a3, "a1": q.a1, "a0": q.a0}
    return dumps_canonical(_record("solve-depressed", inputs, _report_payload(report), started)), EXIT_OK


def cmd_solve_trinomial(args):
    started = time.perf_counter()
    if not args.n > args.m > 0:
        raise UsageError("need n > m > 0")
    if not 0 <= args.branch < args.m:
        raise UsageError(f"branch must lie in [0, {args.m - 1}]")
    t = Trinomial(args.m, args.n, args.a, args.branch)
    oracle = find_all_roots(monic(t.coeffs))
    results = {
        "epsilon": t.epsilon,
        "verbatim": args.verbatim,
        "oracle_roots": list(oracle.roots),
        "oracle_residuals": list(oracle.residuals),
        "series_root": None,
    }
    code = EXIT_OK
    try:
        r = trinomial_root(t, args.rel_tol, args.max_terms, verbatim=args.verbatim)
    except SeriesError as exc:
        results.update(status="diverged", message=str(exc), terms_used=exc.terms_used)
        code = EXIT_SERIES
    else:
        x = r.value
        dists = [abs(x - o) for o in oracle.roots]
        idx = min(range(len(dists)), key=dists.__getitem__)
        results.update(
            status="converged",
            series_root=x,
            terms_used=r.terms_used,
            converged=r.converged,
            residual=abs(1 + x**args.m + t.a * x**args.n),
            matched_oracle_index=idx,
            match_distance=dists[idx],
        )
    inputs = {"m": args.m, "n": args.n, "a": t.a, "branch": args.branch}
    if args.format == "csv":
        rows = []
        if results["series_root"] is not None:
            rows.append(("series", x.real, x.imag, results["residual"]))
        rows.extend(("oracle", z.real, z.imag, res) for z, res in zip(oracle.roots, oracle.residuals))
        return _csv(("source", "re", "im", "residual"), rows), code
    return dumps_canonical(_record("solve-trinomial", inputs, results, started)), code


def _equilibrium_payload(res):
    return {
        "u_eq": res.u_eq,
        "method": res.method,
        "degenerate": res.degenerate,
        "tied": list(res.tied),
        "residual": res.residual,
        "convergence_margin": res.margin,
        "terms_used": res.terms_used,
        "stationary": [{"u": s.u, "F": s.F, "stable": s.stable} for s in res.all_stationary],
    }


def _resolve_a(args) -> float:
    if args.a is not None:
        if args.temperature is not None:
            raise UsageError("give either --a or --temperature/--tc/--a-slope, not both")
        return args.a
    if None in (args.temperature, args.tc, args.a_slope):
        raise UsageError("need --a, or all of --temperature, --tc and --a-slope")
    return linear_temperature_coefficient(args.a_slope, args.temperature, args.tc)


def cmd_eos_solve(args):
    started = time.perf_counter()
    if not args.c > 0:
        raise UsageError("c must be positive")
    p = LandauParams(_resolve_a(args), args.b, args.c, args.f)
    res = equilibrium(p)
    if args.format == "csv":
        rows = [(s.u, s.F, s.stable, s.u == res.u_eq) for s in res.all_stationary]
        return _csv(("u", "F", "stable", "equilibrium"), rows), EXIT_OK
    inputs = {"a": p.a, "b": p.b, "c": p.c, "f": p.f}
    return dumps_canonical(_record("eos solve", inputs, _equilibrium_payload(res), started)), EXIT_OK


def _sweep_rows(cells):
    for cell in cells:
        r = cell.result
        if r is None:
            yield (cell.a, cell.f, None, "error", None, None, None, None)
        else:
            yield (cell.a, cell.f, r.u_eq, r.method, r.margin, r.terms_used, r.residual, r.degenerate)


def cmd_eos_sweep(args):
    started = time.perf_counter()
    if not args.c > 0:
        raise UsageError("c must be positive")
    if args.a_min > args.a_max or args.f_min > args.f_max:
        raise UsageError("range minimum exceeds maximum")
    a_vals = np.linspace(args.a_min, args.a_max, args.a_steps)
    f_vals = np.linspace(args.f_min, args.f_max, args.f_steps)
    cells = sweep(a_vals, f_vals, args.b, args.c, workers=args.workers)
    if args.format == "csv":
        text = _csv(SWEEP_COLUMNS, _sweep_rows(cells))
    else:
        inputs = {
            "a_min": args.a_min, "a_max": args.a_max, "a_steps": args.a_steps,
            "f_min": args.f_min, "f_max": args.f_max, "f_steps": args.f_steps,
            "b": args.b, "c": args.c,
        }
        table = [dict(zip(SWEEP_COLUMNS, row)) for row in _sweep_rows(cells)]
        for row, cell in zip(table, cells):
            if cell.error:
                row["error"] = cell.error
        text = dumps_canonical(_record("eos sweep", inputs, {"cells": table}, started))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return "", EXIT_OK
    return text, EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quintic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve-principal", help="series root of B x^5 + A x^2 + x + 1 = 0")
    p.add_argument("--A", type=parse_complex, required=True)
    p.add_argument("--B", type=parse_complex, required=True)
    p.add_argument("--rel-tol", type=_finite, default=DEFAULT_REL_TOL)
    p.add_argument("--max-shells", type=_positive_int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve_principal)

    p = sub.add_parser("solve-depressed", help="all roots of x^5 + a3 x^3 + a1 x + a0 = 0")
    p.add_argument("--a3", type=parse_complex, required=True)
    p.add_argument("--a1", type=parse_complex, required=True)
    p.add_argument("--a0", type=parse_complex, required=True)
    p.add_argument("--max-shells", type=_positive_int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve_depressed)

    p = sub.add_parser("solve-trinomial", help="series root of 1 + x^m + a x^n = 0")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--a", type=parse_complex, required=True)
    p.add_argument("--branch", type=int, default=0)
    p.add_argument(
        "--verbatim",
        "--verbatim-eq15",
        dest="verbatim",
        action="store_true",
        help="sum the gamma-ratio form (differs from the default for m > 1)",
    )
    p.add_argument("--rel-tol", type=_finite, default=DEFAULT_REL_TOL)
    p.add_argument("--max-terms", type=_positive_int, default=DEFAULT_MAX_TERMS)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve_trinomial)

    eos = sub.add_parser("eos", help="Landau equation of state")
    eos_sub = eos.add_subparsers(dest="eos_command", required=True, parser_class=_Parser)

    p = eos_sub.add_parser("solve", help="equilibrium order parameter for one parameter set")
    p.add_argument("--a", type=_finite, default=None)
    p.add_argument("--temperature", type=_finite, default=None)
    p.add_argument("--tc", type=_finite, default=None)
    p.add_argument("--a-slope", type=_finite, default=None)
    p.add_argument("--b", type=_finite, required=True)
    p.add_argument("--c", type=_finite, required=True)
    p.add_argument("--f", type=_finite, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_eos_solve)

    p = eos_sub.add_parser("sweep", help="equilibria over an (a, f) grid")
    for name in ("a-min", "a-max", "f-min", "f-max", "b", "c"):
        p.add_argument(f"--{name}", type=_finite, required=True)
    p.add_argument("--a-steps", type=_positive_int, required=True)
    p.add_argument("--f-steps", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_eos_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        text, code = args.func(args)
    except (UsageError, QuinticError, ValueError) as exc:
        print(f"quintic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
