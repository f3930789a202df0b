"""fibertool command line.

Exit codes: 0 success, 1 verification mismatch (oracle disagreement, bound
violation, failed fixture), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import count, curve, fixtures, pell, reduce
from .errors import BelowThreshold, FibertoolError, InputError, ParseError
from .poly import BiPoly, UniPoly, as_rat

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _exact_int(text: str) -> int:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {text!r}") from None
    if v.denominator != 1:
        raise ParseError(f"not an integer: {text!r}")
    return int(v)


def parse_grid(text: str) -> list[int]:
    """``10:1e6:x10`` (geometric), ``1:100:+9`` (arithmetic) or ``8,27,64``."""
    if ":" not in text:
        return [_exact_int(part) for part in text.split(",") if part.strip()]
    parts = text.split(":")
    if len(parts) != 3 or not parts[2] or parts[2][0] not in "x+":
        raise ParseError(f"bad grid {text!r}; expected start:stop:xF or start:stop:+S")
    start, stop = _exact_int(parts[0]), _exact_int(parts[1])
    step = _exact_int(parts[2][1:])
    geometric = parts[2][0] == "x"
    if start < 1 or (geometric and step < 2) or (not geometric and step < 1):
        raise ParseError(f"bad grid {text!r}")
    out, B = [], start
    while B <= stop:
        out.append(B)
        B = B * step if geometric else B + step
    return out


def _grid(args) -> list[int]:
    if getattr(args, "B_grid", None):
        grid = parse_grid(args.B_grid)
    elif getattr(args, "B", None) is not None:
        grid = [_exact_int(args.B)]
    else:
        raise InputError("give --B or --B-grid")
    if not grid or min(grid) < 1:
        raise InputError("B must be >= 1")
    return grid


def _epsilon(args) -> Fraction:
    eps = as_rat(args.epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return eps


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- commands ----------------------------------------------------------------

def cmd_reduce(args) -> tuple[dict, int]:
    param = reduce.PolyParam.parse(args.param_p, args.param_q)
    if args.curve:
        res = reduce.normalize_curve(BiPoly.parse(args.curve), as_rat(args.k), param)
    else:
        res = reduce.reduce_param(param)
    return {"command": "reduce", "param": param.to_json(), **res.to_json()}, EXIT_OK


def cmd_count_m(args) -> tuple[dict, int]:
    p = UniPoly.parse(args.poly)
    eps = _epsilon(args)
    grid = _grid(args)
    oracle = count.oracle_M(p, max(grid)) if args.oracle else None
    rows, status = [], EXIT_OK
    for B in grid:
        rep = count.enumerate_M(p, B, eps, args.workers)
        row = rep.to_json(with_parameters=not args.counts_only)
        row["bound_certified"] = B >= row["bound_B0"]
        if oracle is not None:
            ref = {t for t in oracle.parameters if abs(p(t)) <= B}
            row["oracle_count"] = len(ref)
            row["match"] = set(rep.parameters) == ref
            if not row["match"]:
                status = EXIT_MISMATCH
        if row["bound_certified"] and not rep.bound_holds:
            status = EXIT_MISMATCH
        rows.append(row)
    return {"command": "count-m", "poly": p.to_str(), "epsilon": str(eps), "reports": rows}, status


def _load_corpus(args):
    if args.corpus:
        entries = []
        with open(args.corpus) as fh:
            for n, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"{args.corpus}:{n}: {exc}") from None
                entries.append(curve.parse_curve_entry(raw))
    elif args.curve:
        raw = {"name": "cli", "P": args.curve, "k": args.k,
               "param_p": args.param_p, "param_q": args.param_q}
        entries = [curve.parse_curve_entry(raw)]
    else:
        raise InputError("give --corpus or --curve")
    skip = set(args.skip_tag or ())
    return [e for e in entries if not skip & set(e[2])]


def cmd_count_n(args) -> tuple[dict, int]:
    eps = _epsilon(args)
    grid = _grid(args)
    rows, status = [], EXIT_OK
    for spec, param, tags in _load_corpus(args):
        entry = {"name": spec.name, "P": spec.P.to_str(), "k": str(spec.k), "tags": list(tags),
                 "reports": []}
        if param is not None and not curve.implicitize_check(spec, param):
            raise InputError(f"{spec.name}: parametrisation does not lie on the curve")
        for B in grid:
            if param is None:
                rep = curve.bruteforce_points(spec, B)
                row = rep.to_json(with_points=not args.counts_only)
            else:
                rep = curve.count_with_bounds(param, B, eps, args.with_singular, args.workers)
                row = rep.to_json(with_points=not args.counts_only)
                if rep.extra["bound_certified"] and not rep.bound_holds:
                    status = EXIT_MISMATCH
                if args.oracle:
                    ref = curve.bruteforce_points(spec, B)
                    row["oracle_count"] = ref.count
                    row["match"] = ref.points == rep.points
                    if not row["match"]:
                        row["missing"] = sorted(set(ref.points) - set(rep.points))
                        row["extra_points"] = sorted(set(rep.points) - set(ref.points))
                        status = EXIT_MISMATCH
            entry["reports"].append(row)
        rows.append(entry)
    return {"command": "count-n", "epsilon": str(eps), "curves": rows}, status


def cmd_pell(args) -> tuple[dict, int]:
    d = _exact_int(args.d)
    cf = pell.cf_sqrt(d)
    fund = pell.fundamental_solution(d)
    grid = _grid(args)
    status = EXIT_OK
    out = {"command": "pell", "d": d,
           "continued_fraction": {"a0": cf.a0, "period": list(cf.period)},
           "fundamental_solution": [fund.x, fund.y], "counts": []}
    for B in grid:
        row = {"B": B, "count": len(pell.solutions_up_to(d, B))}
        if B <= args.oracle_limit:
            grid_pts = pell.pell_grid_scan(d, 1, B)
            row["oracle_count"] = len(grid_pts)
            row["match"] = grid_pts == [(s.x, s.y) for s in pell.solutions_up_to(d, B)]
            if not row["match"]:
                status = EXIT_MISMATCH
        out["counts"].append(row)
    if len(grid) > 1:
        out["growth"] = pell.count_growth_check(d, grid).to_json()
    return out, status


def cmd_classify(args) -> tuple[dict, int]:
    if args.r:
        pp = curve.ProjectiveParam.parse(args.p, args.q, args.r)
    elif args.param_p and args.param_q:
        pp = curve.homogenize_param(reduce.PolyParam.parse(args.param_p, args.param_q))
    else:
        raise InputError("give --p/--q/--r or --param-p/--param-q")
    cls = curve.classify_maillet_form(pp)
    vs = ("t", "s")
    return {"command": "classify",
            "p_bar": pp.p_bar.to_str(vs), "q_bar": pp.q_bar.to_str(vs), "r_bar": pp.r_bar.to_str(vs),
            "class": cls.value,
            "projective_roots": curve.projective_root_count(pp.r_bar),
            "real_projective_roots": curve.projective_root_count(pp.r_bar, real_only=True)}, EXIT_OK


def cmd_bench(args) -> tuple[dict, int]:
    eps = _epsilon(args)
    grid = _grid(args)
    rows = []
    for spec, param, tags in _load_corpus(args):
        if param is None:
            continue
        for B in grid:
            t0 = time.perf_counter()
            slow = curve.bruteforce_points(spec, B)
            t1 = time.perf_counter()
            fast = curve.param_points(param, B, eps, args.workers)
            t2 = time.perf_counter()
            if slow.points != fast.points:
                _emit({"command": "bench", "error": "point sets differ", "name": spec.name, "B": B,
                       "missing": sorted(set(slow.points) - set(fast.points))}, None)
                return {}, EXIT_MISMATCH
            rows.append({"name": spec.name, "B": B, "count": fast.count,
                         "oracle_seconds": t1 - t0, "param_seconds": t2 - t1,
                         "oracle_candidates": 2 * B + 1,
                         "param_candidates": fast.extra["candidates"],
                         "speedup": (t1 - t0) / max(t2 - t1, 1e-9)})
    return {"command": "bench", "epsilon": str(eps), "rows": rows}, EXIT_OK


def cmd_fixtures(args) -> tuple[dict, int]:
    results = fixtures.run_fixtures()
    failed = [r.name for r in results if not r.passed]
    payload = {"command": "fixtures", "results": [r.to_json() for r in results],
               "passed": len(results) - len(failed), "failed": failed}
    return payload, EXIT_MISMATCH if failed else EXIT_OK


# -- parser --------------------------------------------------------------------

def _add_common(sp, grid=True):
    if grid:
        sp.add_argument("--B", help="bound on |values| (integer, 1e6 accepted)")
        sp.add_argument("--B-grid", dest="B_grid", help="start:stop:xF, start:stop:+S or a,b,c")
    sp.add_argument("--epsilon", default="1/2", help="window slack, rational (default 1/2)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="write JSON here instead of stdout")


def _add_curve_args(sp):
    sp.add_argument("--corpus", help="JSON-lines curve corpus")
    sp.add_argument("--curve", help="P(x, y)")
    sp.add_argument("--k", default="0")
    sp.add_argument("--param-p", dest="param_p")
    sp.add_argument("--param-q", dest="param_q")
    sp.add_argument("--skip-tag", dest="skip_tag", action="append",
                    help="ignore corpus entries carrying this tag (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fibertool", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("reduce", help="straighten a polynomial line parametrisation")
    sp.add_argument("--curve", help="P(x, y); omit to reduce the parametrisation alone")
    sp.add_argument("--k", default="0")
    sp.add_argument("--param-p", dest="param_p", required=True)
    sp.add_argument("--param-q", dest="param_q", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("count-m", help="rational parameters with bounded integral value")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check with the root-theorem oracle")
    sp.add_argument("--counts-only", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_count_m)

    sp = sub.add_parser("count-n", help="integral points on curves")
    _add_curve_args(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check with the brute-force sweep")
    sp.add_argument("--with-singular", action="store_true", help="add the singular budget to the bound")
    sp.add_argument("--counts-only", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_count_n)

    sp = sub.add_parser("pell", help="x^2 - d*y^2 = 1")
    sp.add_argument("--d", required=True)
    sp.add_argument("--B")
    sp.add_argument("--B-grid", dest="B_grid")
    sp.add_argument("--oracle-limit", dest="oracle_limit", type=int, default=10_000,
                    help="grid-scan cross-check for B up to this value")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_pell)

    sp = sub.add_parser("classify", help="Maillet form of a projective parametrisation")
    sp.add_argument("--p")
    sp.add_argument("--q")
    sp.add_argument("--r")
    sp.add_argument("--param-p", dest="param_p")
    sp.add_argument("--param-q", dest="param_q")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bench", help="brute force vs parametrised enumeration timings")
    _add_curve_args(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("fixtures", help="run the frozen regression fixtures")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "pell" and not (args.B or args.B_grid):
        args.B = "1000"
    try:
        payload, status = args.func(args)
    except BelowThreshold as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": "BelowThreshold", "B": exc.B, "B0": exc.B0}, None)
        return EXIT_INPUT
    except (InputError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FibertoolError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if payload:
        _emit(payload, getattr(args, "out", None))
    return status


if __name__ == "__main__":
    sys.exit(main())
