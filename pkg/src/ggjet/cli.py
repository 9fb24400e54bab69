"""Command line interface.

Exit status: 0 when every verdict passes, 1 on a verification failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from typing import Sequence

from . import report
from .annex import (
    WeightSpec,
    WeightedSplitBundle,
    lattice_sum_asymptotic_check,
    lattice_volume_squared,
    remark_identity_check,
    simplex_volume_ratio,
    whitney_verify,
)
from .bounds import bounds_report
from .coefficients import CoeffTable
from .morse import JetParams, evaluate_P, morse_polynomial
from .suites import SUITES, check_coeffs, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# brute-force B enumeration grows like C(k(n+2)+n, n): n = 4 is instant, n = 6 takes minutes
COEFF_ORACLE_MAX_N = 4


class UsageError(Exception):
    pass


def parse_range(s: str) -> list[int]:
    """``"2..6"`` -> ``[2, 3, 4, 5, 6]``; ``"2,4"`` -> ``[2, 4]``."""
    s = s.strip()
    try:
        if ".." in s:
            lo, hi = s.split("..")
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {s!r}") from None


def parse_eps(s: str | None, n: int) -> Fraction:
    if s is None or s.replace(" ", "") == "5n+3":
        return Fraction(5 * n + 3)
    try:
        eps = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"eps must be a rational like '13' or '27/2', got {s!r}") from None
    if eps <= 0:
        raise UsageError(f"eps must be positive, got {eps}")
    return eps


def _n_values(args) -> list[int]:
    if getattr(args, "n_range", None):
        return args.n_range
    if args.n is None:
        raise UsageError("give --n or --n-range")
    return [args.n]


def _params(n: int, k: int | None, eps: str | None) -> JetParams:
    try:
        return JetParams(n, n if k is None else k, parse_eps(eps, n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


@contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # Executor.map preserves input order, so output stays deterministic
        yield lambda fn, *its: pool.map(fn, *its, chunksize=8)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    ns = _n_values(args)
    payloads, csv_rows, text = [], [], []
    ok = True
    for n in ns:
        params = _params(n, None, args.eps)
        if params.n < 2:
            raise UsageError("n must be >= 2")
        rep = bounds_report(params)
        ok = ok and rep.ok
        d_value = None
        if args.d is not None:
            mp = morse_polynomial(params)
            d_value = (args.d, evaluate_P(mp, args.d))
        payloads.append(report.bounds_to_dict(rep, d_value))
        csv_rows.extend(report.qr_rows(params, rep.q, rep.majorants.R))
        text.append(_bound_text(rep, d_value))
    if args.format == "json":
        _emit(args, report.dumps_json(payloads[0] if len(payloads) == 1 else payloads))
    elif args.format == "csv":
        _emit(args, report.rows_to_csv(report.QR_HEADER, csv_rows))
    else:
        _emit(args, "\n".join(text))
    return EXIT_OK if ok else EXIT_FAIL


def _bound_text(rep, d_value) -> str:
    q = str
    lines = [
        f"n={rep.params.n} k={rep.params.k} eps={rep.params.eps}",
        f"  D_eps            = {q(rep.d_eps)}",
        f"  fujiwara M       = {q(rep.fujiwara_M)}",
        f"  threshold 2M     = {q(rep.threshold_2M)}",
        f"  scan threshold   = {rep.scan_threshold}",
        f"  ggl_bound        = {q(rep.ggl_bound)}  (~{report.approx(rep.ggl_bound)})",
        f"  monomial_bound   = {q(rep.monomial_bound)}  (~{report.approx(rep.monomial_bound)})",
        f"  kobayashi_bound  = {q(rep.kobayashi_bound)}  (~{report.approx(rep.kobayashi_bound)})",
    ]
    for name, v in rep.verdicts.items():
        lines.append(f"  [{'PASS' if v else 'FAIL'}] {name}")
    if d_value is not None:
        d, val = d_value
        sign = "P > 0" if val > 0 else "P <= 0"
        lines.append(f"  P(d={d}) = {q(val)}  ({sign})")
    return "\n".join(lines) + "\n"


def cmd_morse(args) -> int:
    params = _params(args.n, args.k, args.eps)
    mp = morse_polynomial(params)
    payload = report.morse_to_dict(mp)
    if args.d is not None:
        val = evaluate_P(mp, args.d)
        payload["evaluation"] = {"d": args.d, "P": report.q_str(val), "P_positive": val > 0}
    if args.format == "json":
        _emit(args, report.dumps_json(payload))
    elif args.format == "csv":
        _emit(args, report.rows_to_csv(report.QR_HEADER, report.qr_rows(params, mp.q)))
    else:
        lines = [f"n={params.n} k={params.k} eps={params.eps} N={params.N} (k!)^n={params.kfact_n}"]
        lines.append(f"  raw = {mp.raw}")
        for a, c in enumerate(mp.q):
            lines.append(f"  Q[{a}] = {c}")
        if args.d is not None:
            lines.append(f"  P(d={args.d}) = {payload['evaluation']['P']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    n = args.n
    k = n if args.k is None else args.k
    if n < 1 or k < 1:
        raise UsageError("n and k must be positive")
    table = CoeffTable.build(n, k)
    checks = check_coeffs(n, k)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        _emit(args, report.dumps_json(report.coeffs_to_dict(table, {c.name: c.passed for c in checks})))
    elif args.format == "csv":
        rows = [[n, k, "B", i, report.q_str(c)] for i, c in enumerate(table.B)]
        rows += [[n, k, "C", i, report.q_str(c)] for i, c in enumerate(table.C)]
        _emit(args, report.rows_to_csv(["n", "k", "name", "index", "value"], rows))
    else:
        lines = [f"n={n} k={k} (k!)^n={table.kfact_n}"]
        lines += [f"  B[{i}] = {c}" for i, c in enumerate(table.B)]
        lines += [f"  C[{i}] = {c}" for i, c in enumerate(table.C)]
        lines += [f"  [{'PASS' if c.passed else 'FAIL'}] {c.name} {c.detail}".rstrip() for c in checks]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.n_range:
        n_values = args.n_range
    elif args.n is not None:
        n_values = [args.n]
    else:
        n_values = [2, 3] if args.suite in ("coeffs",) else [2, 3, 4, 5, 6]
    if args.suite in ("lemmas", "morse", "all") and min(n_values) < 2:
        raise UsageError("lemma and morse suites need n >= 2")
    eps = None
    if args.eps is not None:
        eps = parse_eps(args.eps, n_values[0])
    checks = []
    with _mapper(args.jobs) as mapper:
        for suite in suites:
            ns = n_values
            if suite == "coeffs" and args.suite == "all":
                ns = [n for n in n_values if n <= COEFF_ORACLE_MAX_N] or [2]
            checks.extend(
                run_suite(
                    suite,
                    n_values=ns,
                    k=args.k,
                    eps=eps,
                    max_n=args.max_n,
                    max_r=args.max_r,
                    weights=args.weights,
                    degrees=args.degrees,
                    ordered=args.ordered,
                    mapper=mapper,
                )
            )
    ok = all(c.passed for c in checks)
    if args.format == "json":
        payload = {
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
            "all_passed": ok,
        }
        _emit(args, report.dumps_json(payload))
    elif args.format == "csv":
        _emit(args, report.rows_to_csv(["check", "passed", "detail"], ([c.name, c.passed, c.detail] for c in checks)))
    else:
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name} {c.detail}".rstrip() for c in checks]
        lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _parse_bundle(spec: str) -> list[tuple[int, int]]:
    """``"1:1,0:2"`` -> ``[(1, 1), (0, 2)]`` (degree:weight pairs)."""
    try:
        out = []
        for part in spec.split(","):
            c, a = part.split(":")
            out.append((int(c), int(a)))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bundle {spec!r}; expected 'c:a,c:a,...'") from None


def cmd_annex(args) -> int:
    try:
        w = WeightSpec(tuple(args.weights))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p = args.exponents if args.exponents is not None else [0] * w.r
    if len(p) != w.r:
        raise UsageError("--exponents must have one entry per weight")
    schedule = args.m_schedule or [w.L * 2**j for j in range(11)]
    ok = True
    payload: dict = {
        "weights": list(w.a),
        "gcd": w.g,
        "lcm": w.L,
        "lattice_volume_squared": report.q_str(lattice_volume_squared(w)),
    }
    if w.r >= 2:
        payload["simplex_volume_ratio"] = report.q_str(simplex_volume_ratio(w))
    try:
        lat = lattice_sum_asymptotic_check(w, p, schedule)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = ok and lat.passed
    payload["lattice_sum"] = _convergence_dict(lat)
    payload["lattice_sum"]["exponents"] = list(p)
    if args.remark_n is not None:
        k = args.remark_k
        ms = args.remark_schedule or [2**j for j in range(1, 12)]
        rem = remark_identity_check(args.remark_n, k, ms)
        ok = ok and rem.passed
        payload["remark"] = _convergence_dict(rem)
        payload["remark"].update(
            n=args.remark_n, k=k,
            bracket=report.q_str(rem.extra["bracket"]),
            constant=report.q_str(rem.extra["constant"]),
        )
    if args.bundle is not None:
        try:
            b = WeightedSplitBundle(args.bundle_n, tuple(args.bundle))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        res = whitney_verify(b)
        ok = ok and res.equal
        payload["whitney"] = {
            "n": b.n,
            "entries": [list(e) for e in b.entries],
            "lhs": report.q_str(res.lhs),
            "rhs": report.q_str(res.rhs),
            "equal": res.equal,
        }
    payload["all_passed"] = ok

    if args.format == "json":
        _emit(args, report.dumps_json(payload))
    elif args.format == "csv":
        rows = [["lattice", r["m"], r["exact"], r["predicted"], r["ratio"]] for r in payload["lattice_sum"]["rows"]]
        if "remark" in payload:
            rows += [["remark", r["m"], r["exact"], r["predicted"], r["ratio"]] for r in payload["remark"]["rows"]]
        _emit(args, report.rows_to_csv(["check", "m", "exact", "predicted", "ratio_approx"], rows))
    else:
        lines = [f"weights={list(w.a)} gcd={w.g} lcm={w.L}",
                 f"  vol(C_H)^2 = {payload['lattice_volume_squared']}"]
        if "simplex_volume_ratio" in payload:
            lines.append(f"  vol(simplex)/vol(C_H) = {payload['simplex_volume_ratio']}")
        for key in ("lattice_sum", "remark"):
            if key in payload:
                sec = payload[key]
                lines.append(f"  {key}: {'PASS' if sec['passed'] else 'FAIL'} (final |ratio-1| ~ {sec['final_error']})")
                for r in sec["rows"]:
                    lines.append(f"    m={r['m']:>8} ratio~{r['ratio']}")
        if "whitney" in payload:
            wh = payload["whitney"]
            lines.append(f"  whitney: lhs={wh['lhs']} rhs={wh['rhs']} {'EQUAL' if wh['equal'] else 'DIFFER'}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _convergence_dict(rep) -> dict:
    return {
        "tolerance": report.q_str(rep.tol),
        "final_error": report.approx(rep.final_error),
        "monotone": rep.monotone,
        "passed": rep.passed,
        "rows": [
            {"m": r.m, "exact": report.q_str(r.exact), "predicted": report.q_str(r.predicted),
             "ratio": report.approx(r.ratio)}
            for r in rep.rows
        ],
    }


def _int_list(s: str) -> list[int]:
    return parse_range(s)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ggjet",
        description="Exact Morse-inequality computations on Green-Griffiths jet spaces of hypersurfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jobs=False):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if jobs:
            p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")

    p = sub.add_parser("bound", help="degree bounds, thresholds and lemma verdicts")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", type=parse_range)
    p.add_argument("--eps", help="rational twist, default 5n+3")
    p.add_argument("--d", type=int, help="also evaluate P at this degree")
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("morse", help="Morse polynomial and its Q coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="jet order, default n")
    p.add_argument("--eps", help="rational twist, default 5n+3")
    p.add_argument("--d", type=int)
    common(p)
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("coeffs", help="B, C and Lambda tables with oracle checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    common(p)
    p.set_defaults(func=cmd_coeffs)

    def verify_args(p, suite_default=None):
        if suite_default is None:
            p.add_argument("--suite", choices=SUITES + ("all",), default="all")
        else:
            p.set_defaults(suite=suite_default)
        p.add_argument("--n", type=int)
        p.add_argument("--n-range", type=parse_range)
        p.add_argument("--k", type=int)
        p.add_argument("--eps")
        p.add_argument("--max-n", type=int, default=3)
        p.add_argument("--max-r", type=int, default=3)
        p.add_argument("--weights", type=_int_list, default=[1, 2, 3])
        p.add_argument("--degrees", type=_int_list, default=[-1, 0, 1, 2],
                       help="e.g. '--degrees=-1,0,1,2' or '--degrees=0..2'")
        p.add_argument("--ordered", action="store_true",
                       help="whitney grid over ordered summand tuples instead of multisets")
        common(p, jobs=True)
        p.set_defaults(func=cmd_verify)

    verify_args(sub.add_parser("verify", help="run verification suites"))
    verify_args(sub.add_parser("verify-whitney", help="alias of verify --suite whitney"), "whitney")
    verify_args(sub.add_parser("verify-lemmas", help="alias of verify --suite lemmas"), "lemmas")

    p = sub.add_parser("annex", help="lattice, simplex and Euler characteristic identities")
    p.add_argument("--weights", type=_int_list, default=[1, 2, 3])
    p.add_argument("--exponents", type=_int_list)
    p.add_argument("--m-schedule", type=_int_list, help="increasing multiples of gcd(weights)")
    p.add_argument("--remark-n", type=int)
    p.add_argument("--remark-k", type=int, default=2)
    p.add_argument("--remark-schedule", type=_int_list)
    p.add_argument("--bundle", type=_parse_bundle, help="degree:weight pairs, e.g. '1:1,0:2'")
    p.add_argument("--bundle-n", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_annex)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
