"""Intersection numbers on the jet space and the Morse polynomial.

Two independent routes are computed for ``A^N - N A^{N-1} B``:

* the series route multiplies out the Segre series of the weighted jet bundle
  in ``Q[d][h]/(h^{n+1})`` and integrates with ``int h^n = d``;
* the closed form assembles ``Q_alpha`` directly from ``B`` and ``C``.

:func:`morse_polynomial` refuses to return unless both agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    BinomialTable,
    HSeries,
    PolyD,
    degree_map,
    geometric_factor,
    series_mul,
    series_pow,
)
from .coefficients import CoeffTable


class InconsistencyError(RuntimeError):
    """Raised when two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class JetParams:
    n: int
    k: int
    eps: Fraction

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        eps = Fraction(self.eps)
        if eps <= 0:
            raise ValueError(f"eps must be positive, got {eps}")
        object.__setattr__(self, "eps", eps)

    @classmethod
    def headline(cls, n: int, eps=None) -> "JetParams":
        """``k = n`` and, unless given, ``eps = 5n + 3``."""
        return cls(n, n, Fraction(5 * n + 3) if eps is None else Fraction(eps))

    @property
    def N(self) -> int:
        """Dimension of the projectivized jet bundle."""
        return self.n + self.n * self.k - 1

    @property
    def kfact_n(self) -> int:
        return math.factorial(self.k) ** self.n


def segre_series_Tk(params: JetParams) -> HSeries:
    n, k = params.n, params.k
    s = HSeries.one(n)
    for l in range(1, k + 1):
        s = series_mul(s, series_pow(geometric_factor(n, l, sign=-1), n + 2))
        s = series_mul(s, HSeries(n, [1, PolyD([0, Fraction(1, l)])]))
    return s * Fraction(1, params.kfact_n)


def _binoms(params: JetParams) -> BinomialTable:
    return BinomialTable(params.N)


def intersection_A_power(params: JetParams, segre: HSeries | None = None) -> PolyD:
    """``A^N = sum_l 2^l C(N, l) int s_{n-l} h^l`` (series route)."""
    n, N = params.n, params.N
    s = segre_series_Tk(params) if segre is None else segre
    binom = _binoms(params)
    total = PolyD()
    for l in range(n + 1):
        term = HSeries(n, [0] * n + [s.coeff(n - l)])
        total = total + degree_map(term).scale(2**l * binom(N, l))
    return total


def intersection_AB(params: JetParams, segre: HSeries | None = None) -> PolyD:
    """``A^{N-1} B = sum_{l>=1} 2^{l-1} (2+eps) C(N-1, l-1) int s_{n-l} h^l``."""
    n, N = params.n, params.N
    s = segre_series_Tk(params) if segre is None else segre
    binom = _binoms(params)
    total = PolyD()
    for l in range(1, n + 1):
        term = HSeries(n, [0] * n + [s.coeff(n - l)])
        total = total + degree_map(term).scale(2 ** (l - 1) * binom(N - 1, l - 1))
    return total.scale(2 + params.eps)


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def closed_form_A_power(params: JetParams, table: CoeffTable) -> PolyD:
    """``(k!)^n A^N`` assembled from ``B`` and ``C`` (coefficient of ``d^{a+1}``)."""
    n, N = params.n, params.N
    binom = _binoms(params)
    coeffs = [Fraction(0)]
    for a in range(n + 1):
        inner = sum(
            (binom(N, l) * 2**l * _sgn(n - a - l) * table.B[n - a - l]
             for l in range(n - a + 1)),
            Fraction(0),
        )
        coeffs.append(inner * table.C[a])
    return PolyD(coeffs)


def closed_form_AB(params: JetParams, table: CoeffTable) -> PolyD:
    """``(k!)^n A^{N-1} B`` assembled from ``B`` and ``C``."""
    n, N = params.n, params.N
    binom = _binoms(params)
    coeffs = [Fraction(0)]
    for a in range(n + 1):
        inner = sum(
            (binom(N - 1, l - 1) * 2 ** (l - 1) * (2 + params.eps)
             * _sgn(n - l - a) * table.B[n - a - l]
             for l in range(1, n - a + 1)),
            Fraction(0),
        )
        coeffs.append(inner * table.C[a])
    return PolyD(coeffs)


def q_coefficients(params: JetParams, table: CoeffTable) -> list[Fraction]:
    """``Q_alpha`` after merging the two sums with ``l C(N,l) = N C(N-1,l-1)``."""
    n, N, eps = params.n, params.N, params.eps
    binom = _binoms(params)
    q = []
    for a in range(n + 1):
        acc = Fraction(table.B[n - a])
        for l in range(1, n - a + 1):
            acc += (2 - (2 + eps) * l) * binom(N, l) * _sgn(l) * 2 ** (l - 1) * table.B[n - a - l]
        q.append(_sgn(n - a) * table.C[a] * acc)
    return q


@dataclass(frozen=True)
class MorsePolynomial:
    """``raw = A^N - N A^{N-1} B`` as a polynomial in ``d`` together with the
    closed-form coefficients ``q`` satisfying ``(k!)^n raw = d sum q_a d^a``."""

    params: JetParams
    raw: PolyD
    q: tuple[Fraction, ...]
    table: CoeffTable = field(repr=False, compare=False)

    def __post_init__(self):
        normalized = self.raw.scale(self.params.kfact_n)
        if normalized != PolyD(self.q).shift(1):
            raise InconsistencyError(
                "series route and closed form disagree: "
                f"(k!)^n*raw={normalized!r}, d*sum(q)={PolyD(self.q).shift(1)!r}"
            )

    @property
    def q_poly(self) -> PolyD:
        return PolyD(self.q)

    def integer_q(self) -> tuple[list[int], int]:
        """``q`` scaled to integers: returns ``(ints, denom)`` with
        ``q[a] = ints[a] / denom``."""
        denom = math.lcm(*(c.denominator for c in self.q)) if self.q else 1
        return [int(c * denom) for c in self.q], denom


def morse_polynomial(params: JetParams) -> MorsePolynomial:
    table = CoeffTable.build(params.n, params.k)
    segre = segre_series_Tk(params)
    a_pow = intersection_A_power(params, segre)
    ab = intersection_AB(params, segre)
    raw = a_pow - ab.scale(params.N)

    # cross-check the two intersection numbers separately before combining
    kf = params.kfact_n
    if a_pow.scale(kf) != closed_form_A_power(params, table):
        raise InconsistencyError("A^N: series route and closed form disagree")
    if ab.scale(kf) != closed_form_AB(params, table):
        raise InconsistencyError("A^{N-1}.B: series route and closed form disagree")

    return MorsePolynomial(params, raw, tuple(q_coefficients(params, table)), table)


def evaluate_P(mp: MorsePolynomial, d) -> Fraction:
    """Exact value of ``A^N - N A^{N-1} B`` at degree ``d``."""
    return mp.raw(d)
