"""Exact arithmetic: polynomials in the hypersurface degree ``d`` and truncated
power series in the hyperplane class ``h``.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. A :class:`PolyD` is a dense polynomial in ``d``;
an :class:`HSeries` is an element of ``Q[d][h] / (h^{n+1})`` where ``n`` is the
truncation order (the dimension of the hypersurface).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


class PolyD:
    """Dense univariate polynomial in ``d`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``d**i``. Trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "PolyD":
        return cls([c])

    @classmethod
    def monomial(cls, power: int, c=1) -> "PolyD":
        return cls([0] * power + [c])

    @property
    def degree(self) -> int:
        """Degree in ``d``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyD.const(other)
        if not isinstance(other, PolyD):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyD({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"({c})*d")
            else:
                terms.append(f"({c})*d^{i}")
        return " + ".join(terms)

    def __neg__(self) -> "PolyD":
        return PolyD(-c for c in self.coeffs)

    def __add__(self, other) -> "PolyD":
        if isinstance(other, (int, Fraction)):
            other = PolyD.const(other)
        if not isinstance(other, PolyD):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyD(out)

    __radd__ = __add__

    def __sub__(self, other) -> "PolyD":
        if isinstance(other, (int, Fraction)):
            other = PolyD.const(other)
        if not isinstance(other, PolyD):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyD":
        return (-self) + other

    def __mul__(self, other) -> "PolyD":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PolyD):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyD()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyD(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "PolyD":
        c = _as_fraction(c)
        return PolyD(c * x for x in self.coeffs)

    def shift(self, k: int = 1) -> "PolyD":
        """Multiply by ``d**k``."""
        if not self.coeffs:
            return PolyD()
        return PolyD([0] * k + list(self.coeffs))

    def __call__(self, d: Scalar) -> Fraction:
        """Horner evaluation at ``d``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * d + c
        return acc


class HSeries:
    """Truncated power series in ``h`` with :class:`PolyD` coefficients.

    Models the numerical Chow ring ``Q[d][h]/(h^{trunc+1})`` of a hypersurface
    of dimension ``trunc``. All products discard powers of ``h`` above
    ``trunc``.
    """

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs: Sequence = ()):
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        cs = []
        for c in list(coeffs)[: trunc + 1]:
            cs.append(c if isinstance(c, PolyD) else PolyD.const(c))
        cs.extend(PolyD() for _ in range(trunc + 1 - len(cs)))
        self.trunc = trunc
        self.coeffs: tuple[PolyD, ...] = tuple(cs)

    @classmethod
    def one(cls, trunc: int) -> "HSeries":
        return cls(trunc, [1])

    @classmethod
    def h_power(cls, trunc: int, k: int, c=1) -> "HSeries":
        return cls(trunc, [0] * k + [c])

    def coeff(self, j: int) -> PolyD:
        if 0 <= j <= self.trunc:
            return self.coeffs[j]
        return PolyD()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.trunc, self.coeffs))

    def __repr__(self) -> str:
        return f"HSeries(trunc={self.trunc}, coeffs={list(self.coeffs)!r})"

    def _check(self, other: "HSeries") -> None:
        if self.trunc != other.trunc:
            raise ValueError(
                f"truncation orders differ: {self.trunc} != {other.trunc}"
            )

    def __add__(self, other: "HSeries") -> "HSeries":
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        return HSeries(self.trunc, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "HSeries":
        return HSeries(self.trunc, [-a for a in self.coeffs])

    def __sub__(self, other: "HSeries") -> "HSeries":
        return self + (-other)

    def __mul__(self, other) -> "HSeries":
        if isinstance(other, (int, Fraction)):
            return HSeries(self.trunc, [a.scale(other) for a in self.coeffs])
        if isinstance(other, PolyD):
            return HSeries(self.trunc, [a * other for a in self.coeffs])
        if not isinstance(other, HSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "HSeries":
        return series_pow(self, e)


def series_mul(a: HSeries, b: HSeries) -> HSeries:
    """Product of two truncated series; both must share the truncation order."""
    a._check(b)
    n = a.trunc
    out = [PolyD() for _ in range(n + 1)]
    for i, x in enumerate(a.coeffs):
        if x.is_zero():
            continue
        for j in range(n + 1 - i):
            y = b.coeffs[j]
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return HSeries(n, out)


def series_pow(a: HSeries, e: int) -> HSeries:
    """``a**e`` by binary exponentiation."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = HSeries.one(a.trunc)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def geometric_factor(n: int, l: int, sign: int = -1) -> HSeries:
    """``sum_{j=0}^{n} (sign * h / l)**j`` truncated at ``h**n``."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    r = Fraction(sign, l)
    return HSeries(n, [r**j for j in range(n + 1)])


def degree_map(s: HSeries) -> PolyD:
    """Integrate over the hypersurface: top ``h``-coefficient times ``d``."""
    return s.coeffs[s.trunc].shift(1)


class BinomialTable:
    """Exact binomial coefficients ``C(N, l)`` for ``0 <= N <= max_n``,
    filled by Pascal's rule."""

    def __init__(self, max_n: int):
        if max_n < 0:
            raise ValueError("max_n must be non-negative")
        rows = [[1]]
        for N in range(1, max_n + 1):
            prev = rows[-1]
            row = [1] + [prev[i - 1] + prev[i] for i in range(1, N)] + [1]
            rows.append(row)
        self.max_n = max_n
        self._rows = rows

    def __call__(self, N: int, l: int) -> int:
        if N > self.max_n or N < 0:
            raise ValueError(f"N={N} outside table range 0..{self.max_n}")
        if l < 0 or l > N:
            return 0
        return self._rows[N][l]


def binomial_poly(x: int, n: int) -> int:
    """``C(x + n, n)`` as a polynomial in ``x``; valid for negative ``x``."""
    num = 1
    for i in range(1, n + 1):
        num *= x + i
    den = 1
    for i in range(2, n + 1):
        den *= i
    # n consecutive integers: always divisible by n!
    return num // den
