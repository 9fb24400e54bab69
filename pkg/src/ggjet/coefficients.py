"""Combinatorial coefficients of the Segre series of the Green-Griffiths jet
bundle.

``B[g]`` is the ``h^g`` coefficient of ``prod_{l<=k} (sum_{j<=n} (h/l)^j)^{n+2}``
and ``C[a]`` the ``h^a`` coefficient of ``prod_{l<=k} (1 + h/l)``. Both have a
second, purely combinatorial description which the ``*_bruteforce`` /
``*_subsets`` functions implement independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .arith import HSeries, PolyD, geometric_factor, series_mul, series_pow


def compute_B(n: int, k: int) -> list[Fraction]:
    """``B_0 .. B_n`` from the truncated generating function."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    prod = HSeries.one(n)
    for l in range(1, k + 1):
        prod = series_mul(prod, series_pow(geometric_factor(n, l, sign=1), n + 2))
    return [c.coeff(0) for c in prod.coeffs]


def jet_alphabet(n: int, k: int) -> list[int]:
    """The ordered set ``1_1 < .. < 1_{n+2} < 2_1 < .. < k_{n+2}`` with the
    indexes forgotten (each value ``l`` repeated ``n+2`` times)."""
    return [l for l in range(1, k + 1) for _ in range(n + 2)]


def compute_B_bruteforce(n: int, k: int, gamma: int) -> Fraction:
    """Sum of ``1/(u_1...u_g)`` over non-decreasing length-``g`` sequences of
    positions in the jet alphabet.

    Only defined for ``gamma <= n``: above that the ``h^n`` truncation of each
    factor would bind and the enumeration no longer matches ``compute_B``.
    """
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    if gamma > n:
        raise ValueError(f"gamma={gamma} > n={n}: per-factor truncation binds")
    alphabet = jet_alphabet(n, k)
    total = Fraction(0)
    # sequences of positions (not values): distinct copies 1_1, 1_2 count separately
    for seq in combinations_with_replacement(range(len(alphabet)), gamma):
        prod = 1
        for pos in seq:
            prod *= alphabet[pos]
        total += Fraction(1, prod)
    return total


def compute_C(k: int, n: int | None = None) -> list[Fraction]:
    """Coefficients of ``prod_{l=1}^{k} (1 + h/l)``.

    With ``n`` given the list is padded/truncated to length ``n+1``
    (``C[a] = 0`` for ``a > k``).
    """
    if k < 1:
        raise ValueError("k must be positive")
    cs = [Fraction(1)]
    for l in range(1, k + 1):
        nxt = cs + [Fraction(0)]
        for a in range(1, len(nxt)):
            nxt[a] += cs[a - 1] / l
        cs = nxt
    if n is not None:
        cs = (cs + [Fraction(0)] * (n + 1))[: n + 1]
    return cs


def compute_C_subsets(k: int, alpha: int) -> Fraction:
    """``sum_{l_1 < .. < l_a <= k} 1/(l_1...l_a)`` by subset enumeration."""
    total = Fraction(0)
    for subset in combinations(range(1, k + 1), alpha):
        total += Fraction(1, math.prod(subset))
    return total


@dataclass(frozen=True)
class CoeffTable:
    n: int
    k: int
    B: tuple[Fraction, ...]
    C: tuple[Fraction, ...]
    kfact_n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "kfact_n", math.factorial(self.k) ** self.n)

    @classmethod
    def build(cls, n: int, k: int) -> "CoeffTable":
        return cls(n, k, tuple(compute_B(n, k)), tuple(compute_C(k, n)))

    def lam(self, alpha: int, beta: int) -> Fraction:
        return lam(self, alpha, beta)


def lam(table: CoeffTable, alpha: int, beta: int) -> Fraction:
    """Coefficient of ``d^alpha h^beta`` in the Segre series of the jet bundle."""
    if not (0 <= alpha <= table.n and 0 <= beta <= table.n):
        raise ValueError("alpha and beta must lie in 0..n")
    if beta < alpha:
        return Fraction(0)
    gamma = beta - alpha
    sign = -1 if gamma % 2 else 1
    return sign * table.B[gamma] * table.C[alpha] / table.kfact_n


def lambda_matrix(table: CoeffTable) -> list[list[Fraction]]:
    return [[lam(table, a, b) for b in range(table.n + 1)] for a in range(table.n + 1)]


def check_bounds_B(table: CoeffTable) -> bool:
    """``B_{g+1} <= 2 n^2 B_g`` for ``0 <= g < n``."""
    n = table.n
    return all(table.B[g + 1] <= 2 * n * n * table.B[g] for g in range(n))


def check_bounds_C(table: CoeffTable) -> bool:
    """``C_a <= (3/2) n^2 C_{a+1}`` for ``a + 1 <= n``."""
    n = table.n
    bound = Fraction(3, 2) * n * n
    return all(table.C[a] <= bound * table.C[a + 1] for a in range(n))


def as_polyd_rows(table: CoeffTable) -> list[PolyD]:
    """``h``-coefficients of the Segre series assembled from ``lam``."""
    return [PolyD(lam(table, a, b) for a in range(b + 1)) for b in range(table.n + 1)]
