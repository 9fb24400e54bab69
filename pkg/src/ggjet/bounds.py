"""Majorants of the Morse coefficients, the bounding lemma chain, the Fujiwara
positivity bound and the resulting degree thresholds (all exact)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import BinomialTable
from .coefficients import CoeffTable, check_bounds_B, check_bounds_C
from .morse import JetParams, MorsePolynomial, morse_polynomial

# Constant of the R-chain step R_{a-1} <= (27/2) n^4 R_a. A later restatement
# uses 27/4, which does not dominate that step; both are kept in report metadata.
R_CHAIN_CONSTANT = Fraction(27, 2)
R_CHAIN_CONSTANT_ALT = Fraction(27, 4)

MONOMIAL_CONSTANT = Fraction(153, 4)


class FujiwaraHypothesisError(ValueError):
    def __init__(self, j: int, lhs: Fraction, rhs: Fraction):
        self.j = j
        super().__init__(f"|a_(n-{j})| = {lhs} exceeds M^{j} a_n = {rhs}")


def _require_k_eq_n(params: JetParams) -> None:
    if params.k != params.n:
        raise ValueError(f"effective bounds need k = n (got n={params.n}, k={params.k})")


@dataclass(frozen=True)
class MajorantTable:
    params: JetParams
    R: tuple[Fraction, ...]
    D: tuple[Fraction, ...]  # D[0] unused placeholder; D[l] for l = 1..n

    def D_l(self, l: int) -> Fraction:
        if not 1 <= l <= self.params.n:
            raise IndexError(l)
        return self.D[l]


def majorants(params: JetParams, table: CoeffTable | None = None) -> MajorantTable:
    """``R_a = C_a [B_{n-a} + sum_l D_l B_{n-a-l}]`` with all signs dropped."""
    _require_k_eq_n(params)
    n, N, eps = params.n, params.N, params.eps
    table = table or CoeffTable.build(n, params.k)
    binom = BinomialTable(N)
    D = [Fraction(0)] + [(2 + (2 + eps) * l) * binom(N, l) * 2 ** (l - 1) for l in range(1, n + 1)]
    R = []
    for a in range(n + 1):
        acc = table.B[n - a] + sum((D[l] * table.B[n - a - l] for l in range(1, n - a + 1)), Fraction(0))
        R.append(table.C[a] * acc)
    return MajorantTable(params, tuple(R), tuple(D))


def d_epsilon(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return max(R_CHAIN_CONSTANT, 9 * (1 + eps / 4))


def check_lemma_chain(
    params: JetParams,
    mp: MorsePolynomial | None = None,
    maj: MajorantTable | None = None,
) -> dict[str, bool]:
    """Exact check of every inequality used to bound the Morse coefficients.

    Failures are reported as ``False`` entries, never raised.
    """
    _require_k_eq_n(params)
    n, eps = params.n, params.eps
    mp = mp or morse_polynomial(params)
    table = mp.table
    maj = maj or majorants(params, table)
    R, D = maj.R, maj.D
    n2, n4 = n * n, n**4
    D_eps = d_epsilon(eps)
    return {
        "B_ratio": check_bounds_B(table),
        "C_ratio": check_bounds_C(table),
        "D_ratio": all(D[l + 1] <= 9 * n2 * D[l] for l in range(1, n)),
        "R_top": R[n - 1] <= 9 * n4 * (1 + eps / 4) * R[n],
        "R_chain": all(R[a - 1] <= R_CHAIN_CONSTANT * n4 * R[a] for a in range(1, n)),
        "Q_le_R": all(abs(q) <= r for q, r in zip(mp.q, R)),
        "R_le_Deps": all(R[a] <= D_eps ** (n - a) * n ** (4 * (n - a)) * R[n] for a in range(n + 1)),
    }


@dataclass(frozen=True)
class FujiwaraResult:
    positive: bool
    value: Fraction
    certificate: Fraction | None = None  # lower bound a_n t^n (1 - sum (M/t)^j), when t > 2M


def _poly_value(coeffs: Sequence[Fraction], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def fujiwara_positive(coeffs: Sequence, M, t) -> FujiwaraResult:
    """Positivity of ``Q(t) = sum coeffs[i] t^i`` (ascending order).

    Checks ``|a_{n-j}| <= M^j a_n`` first. For ``t > 2M`` the result carries
    the geometric-series lower bound as a certificate; otherwise only the exact
    sign of ``Q(t)`` is reported.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs or cs[-1] <= 0:
        raise ValueError("leading coefficient must be positive")
    M, t = Fraction(M), Fraction(t)
    if M <= 0:
        raise ValueError("M must be positive")
    deg = len(cs) - 1
    lead = cs[-1]
    for j in range(1, deg + 1):
        if abs(cs[deg - j]) > M**j * lead:
            raise FujiwaraHypothesisError(j, abs(cs[deg - j]), M**j * lead)
    value = _poly_value(cs, t)
    if t > 2 * M:
        ratio = M / t
        cert = lead * t**deg * (1 - sum(ratio**j for j in range(1, deg + 1)))
        if not (0 < cert <= value):
            raise AssertionError(f"certificate {cert} does not bound Q(t) = {value}")
        return FujiwaraResult(True, value, cert)
    return FujiwaraResult(value > 0, value)


def fujiwara_M(params: JetParams) -> Fraction:
    return d_epsilon(params.eps) * params.n**4


def positivity_threshold(mp: MorsePolynomial) -> int:
    """Least integer ``d0 >= 1`` with ``P(d) > 0`` for every integer ``d >= d0``.

    Integers above ``2M`` are covered by the Fujiwara bound; the rest are
    scanned exactly, from the top down, for the last non-positive value.
    """
    _require_k_eq_n(mp.params)
    ints, _ = mp.integer_q()
    # sign P(d) = sign(sum q_a d^a) for d > 0
    upper = math.ceil(2 * fujiwara_M(mp.params))
    for d in range(upper, 0, -1):
        acc = 0
        for c in reversed(ints):
            acc = acc * d + c
        if acc <= 0:
            return d + 1
    return 1


def theorem_bounds(n: int) -> tuple[Fraction, Fraction]:
    """``(153/4 n^5, 153/4 (2n-1)^5)``: the monomial degree bound and its
    image under the ``n -> 2n-1`` substitution."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    ggl = 2 * d_epsilon(5 * n + 3) * n**4
    mono = MONOMIAL_CONSTANT * n**5
    if not ggl <= mono:
        raise AssertionError(f"2 D_eps n^4 = {ggl} exceeds 153/4 n^5 = {mono}")
    return mono, MONOMIAL_CONSTANT * (2 * n - 1) ** 5


@dataclass(frozen=True)
class BoundsReport:
    params: JetParams
    q: tuple[Fraction, ...]
    majorants: MajorantTable
    d_eps: Fraction
    fujiwara_M: Fraction
    threshold_2M: Fraction
    ggl_bound: Fraction
    monomial_bound: Fraction
    kobayashi_bound: Fraction
    scan_threshold: int
    verdicts: dict[str, bool]
    metadata: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def bounds_report(params: JetParams) -> BoundsReport:
    _require_k_eq_n(params)
    mp = morse_polynomial(params)
    maj = majorants(params, mp.table)
    verdicts = check_lemma_chain(params, mp, maj)
    D_eps = d_epsilon(params.eps)
    M = D_eps * params.n**4
    try:
        fuj = fujiwara_positive(mp.q, M, 2 * M + 1)
        verdicts["fujiwara_hypothesis"] = fuj.positive
    except FujiwaraHypothesisError:
        verdicts["fujiwara_hypothesis"] = False
    mono, koba = theorem_bounds(params.n)
    d0 = positivity_threshold(mp)
    verdicts["scan_within_fujiwara"] = d0 <= math.floor(2 * M) + 1
    metadata = {
        "d_eps_formula": "max(27/2, 9(1+eps/4))",
        "d_eps_alternative_constant": str(R_CHAIN_CONSTANT_ALT),
        "d_eps_with_alternative": str(max(R_CHAIN_CONSTANT_ALT, 9 * (1 + params.eps / 4))),
        "note": "27/2 is the constant delivered by the R-chain step; 27/4 appears in a restatement",
    }
    return BoundsReport(
        params=params,
        q=mp.q,
        majorants=maj,
        d_eps=D_eps,
        fujiwara_M=M,
        threshold_2M=2 * M,
        ggl_bound=2 * M,
        monomial_bound=mono,
        kobayashi_bound=koba,
        scan_threshold=d0,
        verdicts=verdicts,
        metadata=metadata,
    )
