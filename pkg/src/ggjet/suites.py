"""Verification suites run by ``ggjet verify``.

Each suite yields :class:`Check` records in a fixed order. Grid points are
independent, so suites accept an optional executor ``map``; ordering of the
output never depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .annex import (
    beta_integral,
    lattice_sum_asymptotic_check,
    remark_identity_check,
    simplex_monomial_integral,
    whitney_grid,
    whitney_verify,
    WeightedSplitBundle,
)
from .bounds import check_lemma_chain
from .coefficients import (
    compute_B,
    compute_B_bruteforce,
    compute_C,
    compute_C_subsets,
)
from .morse import InconsistencyError, JetParams, morse_polynomial

MapFn = Callable[..., Iterable]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def check_coeffs(n: int, k: int) -> list[Check]:
    out = []
    B = compute_B(n, k)
    for g in range(n + 1):
        brute = compute_B_bruteforce(n, k, g)
        ok = brute == B[g]
        out.append(Check(f"coeffs n={n} k={k} B[{g}]", ok, "" if ok else f"gf={B[g]} enum={brute}"))
    C = compute_C(k)
    for a in range(k + 1):
        sub = compute_C_subsets(k, a)
        ok = sub == C[a]
        out.append(Check(f"coeffs k={k} C[{a}]", ok, "" if ok else f"product={C[a]} subsets={sub}"))
    return out


def check_lemmas(n: int, eps=None) -> list[Check]:
    params = JetParams.headline(n, eps)
    verdicts = check_lemma_chain(params)
    return [Check(f"lemmas n={n} eps={params.eps} {name}", ok) for name, ok in verdicts.items()]


def check_morse(n: int, eps) -> Check:
    params = JetParams(n, n, Fraction(eps))
    try:
        morse_polynomial(params)
    except InconsistencyError as exc:
        return Check(f"morse n={n} eps={params.eps} dual-route", False, str(exc))
    return Check(f"morse n={n} eps={params.eps} dual-route", True)


def check_whitney_bundle(b: WeightedSplitBundle) -> Check:
    res = whitney_verify(b)
    name = f"whitney n={b.n} entries={list(b.entries)}"
    return Check(name, res.equal, "" if res.equal else f"lhs={res.lhs} rhs={res.rhs}")


def beta_expanded(a: int, b: int) -> Fraction:
    """``int_0^1 t^a (1-t)^b dt`` by expanding ``(1-t)^b`` and integrating termwise."""
    return sum((Fraction((-1) ** i * comb(b, i), a + i + 1) for i in range(b + 1)), Fraction(0))


def simplex_integral_recursive(p: Sequence[int]) -> Fraction:
    """Uniform mean of ``t^p`` over the standard simplex, peeling off one
    coordinate at a time."""
    p = list(p)
    r = len(p)
    if r == 1:
        return Fraction(1)
    rest = p[1:]
    return (r - 1) * beta_expanded(p[0], sum(rest) + r - 2) * simplex_integral_recursive(rest)


def check_integrals(max_r: int = 4, max_total: int = 5, weights: Sequence[int] = (1, 2, 3)) -> list[Check]:
    out = []
    for r in range(2, max_r + 1):
        for p in product(range(max_total + 1), repeat=r):
            if sum(p) > max_total:
                continue
            ones = simplex_monomial_integral((1,) * r, p)
            rec = simplex_integral_recursive(p)
            ok = ones == rec
            for a in product(weights, repeat=r):
                scaled = simplex_monomial_integral(a, p)
                expect = rec
                for ai, pi in zip(a, p):
                    expect /= Fraction(ai) ** pi
                ok = ok and scaled == expect
            out.append(Check(f"integral r={r} p={p}", ok))
    for a in range(6):
        for b in range(6):
            out.append(Check(f"beta a={a} b={b}", beta_integral(a, b) == beta_expanded(a, b)))
    return out


DEFAULT_LATTICE_CASES = (
    ((1,), (0,), [2**j for j in range(4)]),
    ((1, 1), (0, 0), [2**j for j in range(1, 12)]),
    ((1, 2, 3), (1, 0, 0), [6 * 2**j for j in range(11)]),
)


def check_annex(remark_cases: Sequence[tuple[int, int, Sequence[int]]] | None = None) -> list[Check]:
    out = check_integrals()
    for a, p, ms in DEFAULT_LATTICE_CASES:
        rep = lattice_sum_asymptotic_check(a, p, ms)
        out.append(Check(f"lattice-asymptotic a={a} p={p}", rep.passed, f"final |ratio-1|={float(rep.final_error):.3g}"))
    if remark_cases is None:
        remark_cases = DEFAULT_REMARK_CASES
    for n, k, ms in remark_cases:
        rep = remark_identity_check(n, k, ms)
        out.append(Check(f"remark n={n} k={k}", rep.passed, f"final |ratio-1|={float(rep.final_error):.3g}"))
    return out


DEFAULT_REMARK_CASES = (
    (3, 1, [2**j for j in range(1, 10)]),
    (1, 2, [2**j for j in range(1, 15)]),
    (2, 2, [2**j for j in range(1, 15)]),
    (2, 3, [2**j for j in range(1, 12)]),
)


def run_suite(
    suite: str,
    *,
    n_values: Sequence[int] = (2, 3, 4, 5, 6),
    k: int | None = None,
    eps=None,
    max_n: int = 3,
    max_r: int = 3,
    weights: Sequence[int] = (1, 2, 3),
    degrees: Sequence[int] = (-1, 0, 1, 2),
    ordered: bool = False,
    mapper: MapFn = map,
) -> Iterator[Check]:
    if suite == "coeffs":
        ks = [k if k is not None else n for n in n_values]
        for chunk in mapper(check_coeffs, list(n_values), ks):
            yield from chunk
    elif suite == "lemmas":
        for chunk in mapper(check_lemmas, list(n_values), [eps] * len(n_values)):
            yield from chunk
    elif suite == "morse":
        grid = [(n, e) for n in n_values for e in ((1, 5 * n + 3, 40) if eps is None else (eps,))]
        yield from mapper(check_morse, [g[0] for g in grid], [g[1] for g in grid])
    elif suite == "whitney":
        bundles = list(whitney_grid(max_n, max_r, weights, degrees, ordered=ordered))
        yield from mapper(check_whitney_bundle, bundles)
    elif suite == "annex":
        yield from check_annex()
    else:
        raise ValueError(f"unknown suite {suite!r}")


SUITES = ("coeffs", "lemmas", "morse", "whitney", "annex")
