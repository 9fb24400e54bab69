"""Lattice sums, simplex integrals and Euler characteristics of symmetric
powers of weighted split bundles on projective space.

Everything is exact except the convergence reports, which compare exact sums
against their leading asymptotic term and therefore carry a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterator, Sequence

from .arith import HSeries, binomial_poly, series_mul


@dataclass(frozen=True)
class WeightSpec:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a:
            raise ValueError("need at least one weight")
        if any(x < 1 for x in a):
            raise ValueError(f"weights must be positive, got {a}")
        object.__setattr__(self, "a", a)

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def g(self) -> int:
        return math.gcd(*self.a)

    @property
    def L(self) -> int:
        return math.lcm(*self.a)


def _ws(w) -> WeightSpec:
    return w if isinstance(w, WeightSpec) else WeightSpec(tuple(w))


def lattice_volume_squared(w) -> Fraction:
    """Squared ``(r-1)``-volume of a fundamental domain of ``{l : a.l = 0}``."""
    w = _ws(w)
    return Fraction(sum(x * x for x in w.a), w.g**2)


def simplex_volume_ratio(w) -> Fraction:
    """``vol(a.t = 1, t >= 0) / vol(fundamental domain)``; the square roots cancel."""
    w = _ws(w)
    if w.r < 2:
        raise ValueError("simplex ratio needs at least two weights")
    return Fraction(w.g, math.factorial(w.r - 1) * math.prod(w.a))


def beta_integral(a: int, b: int) -> Fraction:
    """``int_0^1 t^a (1-t)^b dt``."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    return Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 1))


def simplex_monomial_integral(w, p: Sequence[int]) -> Fraction:
    """Mean of ``t^p`` over ``{a.t = 1, t >= 0}`` under the uniform probability."""
    w = _ws(w)
    p = tuple(p)
    if len(p) != w.r:
        raise ValueError("exponent list must match the number of weights")
    if w.r < 2:
        raise ValueError("need r >= 2")
    if any(x < 0 for x in p):
        raise ValueError("exponents must be non-negative")
    num = math.factorial(w.r - 1) * math.prod(math.factorial(x) for x in p)
    den = math.factorial(sum(p) + w.r - 1)
    scale = math.prod(ai**pi for ai, pi in zip(w.a, p))
    return Fraction(num, den * scale)


def solutions(a: Sequence[int], m: int) -> Iterator[tuple[int, ...]]:
    """All ``l in N^r`` with ``sum a_i l_i = m``.

    The coordinate with the smallest weight is solved for instead of looped
    over.
    """
    r = len(a)
    if m < 0:
        return
    if r == 1:
        if m % a[0] == 0:
            yield (m // a[0],)
        return
    solve = min(range(r), key=lambda i: a[i])
    others = [i for i in range(r) if i != solve]
    a_solve = a[solve]
    l = [0] * r

    def rec(idx: int, rem: int):
        if idx == len(others):
            if rem % a_solve == 0:
                l[solve] = rem // a_solve
                yield tuple(l)
            return
        i = others[idx]
        for v in range(rem // a[i] + 1):
            l[i] = v
            yield from rec(idx + 1, rem - a[i] * v)
        l[i] = 0

    yield from rec(0, m)


def lattice_sum_monomial(w, p: Sequence[int], m: int) -> Fraction:
    """``sum_{a.l = m} prod l_i^{p_i} / p_i!`` over non-negative ``l``."""
    w = _ws(w)
    p = tuple(p)
    if len(p) != w.r:
        raise ValueError("exponent list must match the number of weights")
    if m < 0:
        raise ValueError("m must be non-negative")
    if m % w.g:
        return Fraction(0)
    total = 0
    for l in solutions(w.a, m):
        term = 1
        for li, pi in zip(l, p):
            if pi:
                term *= li**pi
        total += term
    return Fraction(total, math.prod(math.factorial(x) for x in p))


def lattice_sum_leading(w, p: Sequence[int], m: int) -> Fraction:
    """Leading asymptotic term of :func:`lattice_sum_monomial`."""
    w = _ws(w)
    deg = sum(p) + w.r - 1
    den = math.prod(ai ** (pi + 1) for ai, pi in zip(w.a, p)) * math.factorial(deg)
    return Fraction(w.g * m**deg, den)


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    exact: Fraction
    predicted: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.exact / self.predicted

    @property
    def error(self) -> Fraction:
        return abs(self.ratio - 1)


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    tol: Fraction
    extra: dict | None = None

    @property
    def final_error(self) -> Fraction:
        return self.rows[-1].error

    @property
    def monotone(self) -> bool:
        """``|ratio - 1|`` non-increasing over the last three samples."""
        errs = [row.error for row in self.rows[-3:]]
        return all(x >= y for x, y in zip(errs, errs[1:]))

    @property
    def passed(self) -> bool:
        return self.final_error < self.tol and self.monotone


DEFAULT_TOL = Fraction(5, 100)


def lattice_sum_asymptotic_check(w, p, m_list: Sequence[int], tol=DEFAULT_TOL) -> ConvergenceReport:
    w = _ws(w)
    ms = list(m_list)
    if not ms:
        raise ValueError("empty m schedule")
    if any(m % w.g for m in ms):
        raise ValueError(f"every m must be divisible by gcd {w.g}")
    if any(x >= y for x, y in zip(ms, ms[1:])):
        raise ValueError("m schedule must be increasing")
    rows = tuple(
        ConvergenceRow(m, lattice_sum_monomial(w, p, m), lattice_sum_leading(w, p, m)) for m in ms
    )
    return ConvergenceReport(rows, Fraction(tol))


@dataclass(frozen=True)
class WeightedSplitBundle:
    """Sum of weighted line bundles ``O(c_i)^{(a_i)}`` on ``P^n``.

    ``entries`` holds ``(c_i, a_i)`` pairs. A weighted summand of higher rank
    is several entries sharing a weight (see :meth:`from_summands`).
    """

    n: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        entries = tuple((int(c), int(a)) for c, a in self.entries)
        if not entries:
            raise ValueError("need at least one summand")
        if any(a < 1 for _, a in entries):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_summands(cls, n: int, summands: Sequence[tuple[Sequence[int], int]]) -> "WeightedSplitBundle":
        """Build from ``(degree list, weight)`` pairs, splitting each summand."""
        return cls(n, tuple((c, a) for degs, a in summands for c in degs))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.entries)

    @property
    def weights(self) -> WeightSpec:
        return WeightSpec(tuple(a for _, a in self.entries))

    @property
    def r(self) -> int:
        return len(self.entries)


def euler_char_symmetric(b: WeightedSplitBundle, m: int) -> int:
    """``chi(P^n, S^m E) = sum_{a.l = m} C(c.l + n, n)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    w = b.weights
    if m % w.g:
        return 0
    cs = b.degrees
    total = 0
    for l in solutions(w.a, m):
        total += binomial_poly(sum(c * li for c, li in zip(cs, l)), b.n)
    return total


def lagrange_interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (ascending) of the unique polynomial of degree < len(xs)
    through the given points."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        den = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            den *= xi - xj
        scale = Fraction(yi) / den
        for t in range(k):
            coeffs[t] += scale * basis[t]
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class InterpolationError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuasiPolyFit:
    """Polynomial in ``m`` agreeing with ``chi(S^m E)`` on multiples of ``L``."""

    L: int
    samples: tuple[tuple[int, int], ...]
    heldout: tuple[tuple[int, int], ...]
    coeffs_j: tuple[Fraction, ...]  # in the variable j = m / L

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs_j) - 1

    def coeff_m(self, i: int) -> Fraction:
        """Coefficient of ``m**i``."""
        return self.coeffs_j[i] / Fraction(self.L) ** i

    @property
    def leading(self) -> Fraction:
        return self.coeff_m(self.degree_bound)

    def __call__(self, m: int) -> Fraction:
        if m % self.L:
            raise ValueError("fit only valid on multiples of L")
        return _poly_eval(self.coeffs_j, m // self.L)


def fit_euler_char(b: WeightedSplitBundle, extra: int = 2) -> QuasiPolyFit:
    """Interpolate ``chi`` at ``m = L, 2L, .., (n+r)L`` and check ``extra``
    further multiples."""
    L = b.weights.L
    npts = b.n + b.r
    js = list(range(1, npts + 1))
    ys = [euler_char_symmetric(b, j * L) for j in js]
    coeffs = lagrange_interpolate(js, [Fraction(y) for y in ys])
    held = []
    for j in range(npts + 1, npts + 1 + extra):
        y = euler_char_symmetric(b, j * L)
        fy = _poly_eval(coeffs, j)
        if fy != y:
            raise InterpolationError(
                f"residual at m={j * L}: interpolated {fy}, exact {y}"
            )
        held.append((j * L, y))
    return QuasiPolyFit(
        L,
        tuple((j * L, y) for j, y in zip(js, ys)),
        tuple(held),
        tuple(coeffs),
    )


def weighted_segre_product(b: WeightedSplitBundle) -> HSeries:
    """``prod_i sum_p (c_i h / a_i)^p`` in ``Q[h]/(h^{n+1})``."""
    n = b.n
    s = HSeries.one(n)
    for c, a in b.entries:
        x = Fraction(c, a)
        s = series_mul(s, HSeries(n, [x**p for p in range(n + 1)]))
    return s


@dataclass(frozen=True)
class WhitneyResult:
    bundle: WeightedSplitBundle
    lhs: Fraction
    rhs: Fraction
    fit: QuasiPolyFit

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def whitney_verify(b: WeightedSplitBundle) -> WhitneyResult:
    """Compare the top weighted Segre number obtained from the growth of
    ``chi(S^m E)`` with the product formula over the summands."""
    fit = fit_euler_char(b)
    top = b.n + b.r - 1
    lhs = fit.coeff_m(top) * math.factorial(top)
    w = b.weights
    rhs = Fraction(w.g, math.prod(w.a)) * weighted_segre_product(b).coeff(b.n).coeff(0)
    return WhitneyResult(b, lhs, rhs, fit)


def whitney_grid(
    max_n: int = 3,
    max_r: int = 3,
    weights: Sequence[int] = (1, 2, 3),
    degrees: Sequence[int] = (-1, 0, 1, 2),
    min_n: int = 1,
    ordered: bool = False,
) -> Iterator[WeightedSplitBundle]:
    """Every bundle in the grid, up to reordering of summands unless
    ``ordered`` is set."""
    pairs = list(product(degrees, weights))
    for n in range(min_n, max_n + 1):
        for r in range(1, max_r + 1):
            combos = product(pairs, repeat=r) if ordered else combinations_with_replacement(pairs, r)
            for combo in combos:
                yield WeightedSplitBundle(n, combo)


def remark_bracket_sequences(n: int, k: int) -> Fraction:
    """``sum_{1 <= i_1 <= .. <= i_n <= k} 1/(i_1...i_n)``."""
    return sum(
        (Fraction(1, math.prod(seq)) for seq in combinations_with_replacement(range(1, k + 1), n)),
        Fraction(0),
    )


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def remark_bracket_compositions(n: int, k: int) -> Fraction:
    """``sum_{p_1 + .. + p_k = n} prod_i i^{-p_i}``."""
    total = Fraction(0)
    for p in _compositions(n, k):
        total += Fraction(1, math.prod(i**pi for i, pi in zip(range(1, k + 1), p)))
    return total


def remark_sum(n: int, k: int, m: int) -> Fraction:
    """``sum_{l_1 + 2 l_2 + .. + k l_k = m} (l_1 + .. + l_k)^n / n!``."""
    total = 0
    for l in solutions(tuple(range(1, k + 1)), m):
        total += sum(l) ** n
    return Fraction(total, math.factorial(n))


def remark_identity_check(n: int, k: int, m_list: Sequence[int], tol=DEFAULT_TOL) -> ConvergenceReport:
    seq = remark_bracket_sequences(n, k)
    comp = remark_bracket_compositions(n, k)
    if seq != comp:
        raise AssertionError(f"bracket mismatch: sequences {seq} != compositions {comp}")
    const = seq / math.factorial(k)
    deg = n + k - 1
    rows = tuple(
        ConvergenceRow(m, remark_sum(n, k, m), const * Fraction(m**deg, math.factorial(deg)))
        for m in m_list
    )
    return ConvergenceReport(rows, Fraction(tol), {"bracket": seq, "constant": const})
