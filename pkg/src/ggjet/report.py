"""Serialization of results: JSON with exact ``"p/q"`` strings, CSV tables and
plain text."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable

from .arith import PolyD
from .bounds import BoundsReport
from .coefficients import CoeffTable, lambda_matrix
from .morse import JetParams, MorsePolynomial

APPROX_DIGITS = 12


def q_str(x) -> str:
    """Exact ``"p/q"`` rendering (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def approx(x) -> str:
    return f"{float(Fraction(x)):.{APPROX_DIGITS}g}"


def params_to_dict(p: JetParams) -> dict:
    return {"n": p.n, "k": p.k, "eps": q_str(p.eps), "N": p.N}


def morse_to_dict(mp: MorsePolynomial) -> dict:
    return {
        "params": params_to_dict(mp.params),
        "kfact_n": str(mp.params.kfact_n),
        "raw": [q_str(c) for c in mp.raw.coeffs],
        "q": [q_str(c) for c in mp.q],
        "q_approx": [approx(c) for c in mp.q],
    }


def morse_from_dict(data: dict) -> MorsePolynomial:
    """Rebuild a :class:`MorsePolynomial` from :func:`morse_to_dict` output.

    The stored coefficients are re-checked against the closed-form identity.
    """
    p = data["params"]
    params = JetParams(int(p["n"]), int(p["k"]), parse_rational(p["eps"]))
    raw = PolyD(parse_rational(c) for c in data["raw"])
    q = tuple(parse_rational(c) for c in data["q"])
    return MorsePolynomial(params, raw, q, CoeffTable.build(params.n, params.k))


def coeffs_to_dict(table: CoeffTable, checks: dict[str, bool] | None = None) -> dict:
    out = {
        "n": table.n,
        "k": table.k,
        "kfact_n": str(table.kfact_n),
        "B": [q_str(c) for c in table.B],
        "C": [q_str(c) for c in table.C],
        "lambda": [[q_str(c) for c in row] for row in lambda_matrix(table)],
    }
    if checks is not None:
        out["checks"] = checks
    return out


def bounds_to_dict(rep: BoundsReport, d_value: tuple[int, Fraction] | None = None) -> dict:
    maj = rep.majorants
    out: dict[str, Any] = {
        "params": params_to_dict(rep.params),
        "q": [q_str(c) for c in rep.q],
        "R": [q_str(c) for c in maj.R],
        "D": {str(l): q_str(maj.D[l]) for l in range(1, rep.params.n + 1)},
        "d_eps": q_str(rep.d_eps),
        "fujiwara_M": q_str(rep.fujiwara_M),
        "threshold_2M": q_str(rep.threshold_2M),
        "scan_threshold": rep.scan_threshold,
        "ggl_bound": q_str(rep.ggl_bound),
        "monomial_bound": q_str(rep.monomial_bound),
        "kobayashi_bound": q_str(rep.kobayashi_bound),
        "verdicts": dict(rep.verdicts),
        "all_verdicts_pass": rep.ok,
        "approx": {
            "d_eps": approx(rep.d_eps),
            "threshold_2M": approx(rep.threshold_2M),
            "ggl_bound": approx(rep.ggl_bound),
            "monomial_bound": approx(rep.monomial_bound),
            "kobayashi_bound": approx(rep.kobayashi_bound),
        },
        "metadata": dict(rep.metadata),
    }
    if d_value is not None:
        d, val = d_value
        out["evaluation"] = {"d": d, "P": q_str(val), "P_positive": val > 0, "P_approx": approx(val)}
    return out


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def rows_to_csv(header: list[str], rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


QR_HEADER = ["n", "k", "eps", "alpha", "Q", "R"]


def qr_rows(params: JetParams, q: Iterable[Fraction], R: Iterable[Fraction] | None = None):
    R = list(R) if R is not None else None
    for a, qa in enumerate(q):
        yield [params.n, params.k, q_str(params.eps), a, q_str(qa), q_str(R[a]) if R is not None else ""]


def morse_roundtrip(mp: MorsePolynomial) -> bool:
    again = morse_from_dict(json.loads(json.dumps(morse_to_dict(mp))))
    return again.raw == mp.raw and again.q == mp.q and again.params == mp.params

