"""Command-line front end.

Subcommands::

    report    blocks, eigenvalues and degeneracy verdict at one (n, m)
    critical  every positive critical central mass for one n
    table     computed vs predicted critical-value counts over a range of n
    scan      CSV sweep of block determinants over an m-interval
    verify    oracle consistency battery for one (n, m)

Exit codes: 0 success, 1 verification/assertion failure, 2 usage error.
All numbers are printed in shortest round-trip form so downstream tools
can reproduce comparisons exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .checks import run_all_checks
from .degeneracy import degeneracy_report, predicted_count
from .geometry import ConfigurationError, build_config, geometry_cache
from .hessian import full_spectrum
from .spectral import (
    build_blocks, eigvals_2x2, eigvals_block3, mode1_reduced_det,
    mode_coefficients,
)

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _fmt(x) -> str:
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit_json(data) -> None:
    print(json.dumps(_jsonable(data), indent=2))


def _report_data(n: int, m: float, tol_analytic: float) -> dict:
    geo = geometry_cache(build_config(n, m))
    blocks = build_blocks(geo, m)
    block_info = {}
    dets = []
    for l in sorted(blocks.A):
        A = blocks.A[l]
        det = float(np.linalg.det(A))
        dets.append(det)
        block_info[str(l)] = {
            "entries": A,
            "eigenvalues": eigvals_2x2(A),
            "det": det,
        }
    det1 = float(np.linalg.det(blocks.A1))
    reduced = mode1_reduced_det(geo, mode_coefficients(geo, 1), m)
    dets.append(reduced)
    min_abs_det = min(abs(d) for d in dets) if dets else abs(reduced)
    return {
        "geometry": {
            "n": n, "m": m, "theta": geo.theta, "I0": geo.I0,
            "d0": geo.d0, "Ue0": geo.Ue0, "U0": geo.U0,
        },
        "scalar_blocks": [[label, val] for label, val in blocks.scalar_eigs],
        "blocks": block_info,
        "mode1_block": {
            "entries": blocks.A1,
            "eigenvalues": eigvals_block3(blocks.A1, n),
            "det": det1,
            "reduced_quadratic_value": reduced,
        },
        "min_abs_det": min_abs_det,
        "degenerate": bool(min_abs_det < tol_analytic),
    }


def cmd_report(args) -> int:
    data = _report_data(args.n, args.m, args.tol_analytic)
    if args.format == "json":
        _emit_json(data)
        return 0
    g = data["geometry"]
    print(f"central + regular {g['n']}-gon, central mass m = {_fmt(g['m'])}")
    for key in ("I0", "d0", "Ue0", "U0"):
        print(f"  {key} = {_fmt(g[key])}")
    print("scalar blocks:")
    for label, val in data["scalar_blocks"]:
        print(f"  {label}: {_fmt(val)}")
    for l, info in data["blocks"].items():
        print(f"block A{l}:")
        for row in info["entries"]:
            print("  [" + ", ".join(_fmt(v) for v in row) + "]")
        print("  eigenvalues: " + ", ".join(_fmt(v) for v in info["eigenvalues"]))
        print(f"  det: {_fmt(info['det'])}")
    info = data["mode1_block"]
    print("block A1 (mode 1, couples to the central mass):")
    for row in info["entries"]:
        print("  [" + ", ".join(_fmt(v) for v in row) + "]")
    print("  eigenvalues: " + ", ".join(_fmt(v) for v in info["eigenvalues"]))
    print(f"  det A1: {_fmt(info['det'])}")
    print(f"degenerate at this m: {data['degenerate']}")
    return 0


def _critical_data(n: int) -> dict:
    rep = degeneracy_report(n)
    return {
        "n": n,
        "modes": [
            {"l": md.l, "a_l": md.a_l, "slope": md.slope,
             "beta_l": md.beta_l, "condition_met": md.condition_met,
             "m_star": md.m_star}
            for md in rep.modes
        ],
        "mode1": {
            "b": rep.mode1.b, "c": rep.mode1.c, "d": rep.mode1.d,
            "roots": list(rep.mode1.roots),
            "positive_roots": list(rep.mode1.positive_roots),
        },
        "all_m_star": list(rep.all_m_star),
        "count": rep.count,
        "predicted": predicted_count(n),
        "match": rep.count == predicted_count(n),
        "collisions": [list(c) for c in rep.collisions],
    }


def cmd_critical(args) -> int:
    data = _critical_data(args.n)
    if args.format == "json":
        _emit_json(data)
    else:
        print(f"n = {data['n']}: {data['count']} distinct positive "
              f"critical mass value(s), predicted {data['predicted']}")
        for md in data["modes"]:
            star = _fmt(md["m_star"]) if md["m_star"] is not None else "-"
            print(f"  mode l={md['l']}: beta={_fmt(md['beta_l'])} "
                  f"m* = {star}")
        m1 = data["mode1"]
        print(f"  mode l=1 quadratic: b={_fmt(m1['b'])} c={_fmt(m1['c'])} "
              f"d={_fmt(m1['d'])}")
        print("  mode l=1 positive roots: "
              + (", ".join(_fmt(r) for r in m1["positive_roots"]) or "none"))
        print("  all m*: " + ", ".join(_fmt(v) for v in data["all_m_star"]))
        print(f"  table match: {data['match']}")
    if not data["match"] and not args.no_assert:
        print(f"count mismatch for n={data['n']}: computed {data['count']}, "
              f"predicted {data['predicted']}", file=sys.stderr)
        return CHECK_FAILURE
    return 0


def cmd_table(args) -> int:
    if args.n_max < 3:
        raise UsageError(f"need n-max >= 3, got {args.n_max}")
    rows = []
    for n in range(3, args.n_max + 1):
        computed = degeneracy_report(n).count
        predicted = predicted_count(n)
        rows.append({"n": n, "computed": computed, "predicted": predicted,
                     "match": computed == predicted})
    if args.format == "json":
        _emit_json({"rows": rows})
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "computed", "predicted", "match"])
        for r in rows:
            writer.writerow([r["n"], r["computed"], r["predicted"],
                             str(r["match"]).lower()])
    else:
        print("n  computed  predicted  match")
        for r in rows:
            print(f"{r['n']:<3}{r['computed']:<10}{r['predicted']:<11}"
                  f"{r['match']}")
    bad = [r for r in rows if not r["match"]]
    if bad and not args.no_assert:
        print(f"count mismatch at n = {[r['n'] for r in bad]}",
              file=sys.stderr)
        return CHECK_FAILURE
    return 0


def cmd_scan(args) -> int:
    if not (0.0 < args.m_min < args.m_max):
        raise UsageError(f"need 0 < m-min < m-max, got "
                         f"{args.m_min}..{args.m_max}")
    if args.steps < 2:
        raise UsageError(f"need steps >= 2, got {args.steps}")
    n = args.n
    cfg0 = build_config(n, args.m_min)  # validates n
    geo = geometry_cache(cfg0)
    modes = list(range(2, n // 2 + 1))
    coeffs1 = mode_coefficients(geo, 1)
    coeffs = {l: mode_coefficients(geo, l) for l in modes}
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["m", "det_A1"] + [f"det_A{l}" for l in modes]
                    + ["min_abs_eig_full"])
    from .spectral import block_2x2, block_3x3
    for m in np.linspace(args.m_min, args.m_max, args.steps + 1):
        m = float(m)
        row = [m, float(np.linalg.det(block_3x3(geo, coeffs1, m)))]
        for l in modes:
            row.append(float(np.linalg.det(block_2x2(geo, coeffs[l], m))))
        cfg = build_config(n, m)
        eigs = full_spectrum(cfg, geometry_cache(cfg))
        nontrivial = np.sort(np.abs(eigs))[2:]  # beyond the two exact zeros
        row.append(float(nontrivial[0]))
        writer.writerow([_fmt(v) for v in row])
    return 0


def cmd_verify(args) -> int:
    results = run_all_checks(
        args.n, args.m,
        tol_analytic=args.tol_analytic,
        tol_fd=args.tol_fd,
        tol_kernel=args.tol_kernel,
        flip_sep_sign=args.flip_sep_sign,
    )
    if args.format == "json":
        _emit_json({"n": args.n, "m": args.m, "checks": [
            {"name": r.name, "value": r.value, "tol": r.tol,
             "passed": r.passed}
            for r in results
        ]})
    else:
        for r in results:
            status = "pass" if r.passed else "FAIL"
            print(f"{status}  {r.name}: {_fmt(r.value)} "
                  f"(tol {_fmt(r.tol)})")
    failing = [r for r in results if not r.passed]
    if failing:
        print(f"first failing check: {failing[0].name}", file=sys.stderr)
        return CHECK_FAILURE
    return 0


class UsageError(Exception):
    pass


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-analytic", type=float, default=1e-9,
                   help="tolerance for analytic identities (default 1e-9)")
    p.add_argument("--tol-fd", type=float, default=1e-5,
                   help="tolerance for finite-difference agreement")
    p.add_argument("--tol-kernel", type=float, default=1e-7,
                   help="threshold below which eigenvalues count as kernel")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngon-degeneracy",
        description="Block decomposition and degeneracy analysis of the "
                    "central + regular n-gon configuration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="blocks and verdict at one (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("critical", help="critical central masses for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--no-assert", action="store_true",
                   help="do not fail on count-table mismatch")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("table", help="critical-value counts over n = 3..n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["text", "csv", "json"],
                   default="text")
    p.add_argument("--no-assert", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", help="CSV sweep of block determinants over m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-min", type=float, required=True)
    p.add_argument("--m-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="oracle consistency battery")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--flip-sep-sign", action="store_true",
                   help="negative control: flip the separation-vector sign")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
