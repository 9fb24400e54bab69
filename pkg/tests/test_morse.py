import math
import random
from fractions import Fraction

import pytest

from ggjet.arith import PolyD, geometric_factor, series_mul, series_pow, HSeries
from ggjet.bounds import majorants
from ggjet.coefficients import CoeffTable, lam
from ggjet.morse import (
    InconsistencyError,
    JetParams,
    MorsePolynomial,
    closed_form_A_power,
    closed_form_AB,
    evaluate_P,
    intersection_A_power,
    intersection_AB,
    morse_polynomial,
    segre_series_Tk,
)


def test_params_validation():
    with pytest.raises(ValueError):
        JetParams(1, 1, 1)
    with pytest.raises(ValueError):
        JetParams(2, 0, 1)
    with pytest.raises(ValueError):
        JetParams(2, 2, 0)
    assert JetParams.headline(3).eps == 18
    assert JetParams(3, 3, 1).N == 11


@pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 2), (3, 3), (4, 4)])
def test_segre_coefficients_match_lambda(n, k):
    s = segre_series_Tk(JetParams(n, k, 1))
    t = CoeffTable.build(n, k)
    assert s.coeff(0) == PolyD.const(Fraction(1, math.factorial(k) ** n))
    for beta in range(n + 1):
        c = s.coeff(beta)
        assert c.degree <= beta
        for alpha in range(n + 1):
            assert c.coeff(alpha) == lam(t, alpha, beta)


def test_k1_is_tangent_segre():
    n = 3
    expected = series_mul(series_pow(geometric_factor(n, 1), n + 2), HSeries(n, [1, PolyD([0, 1])]))
    assert segre_series_Tk(JetParams(n, 1, 5)) == expected


@pytest.mark.parametrize("n", [2, 3])
def test_intersection_routes_agree(n):
    p = JetParams(n, n, Fraction(7, 3))
    t = CoeffTable.build(n, n)
    a = intersection_A_power(p)
    ab = intersection_AB(p)
    assert a.scale(p.kfact_n) == closed_form_A_power(p, t)
    assert ab.scale(p.kfact_n) == closed_form_AB(p, t)
    assert a.coeff(0) == 0
    assert ab.coeff(n + 1) == 0


def test_top_coefficient_of_A_power():
    a = intersection_A_power(JetParams(2, 2, 13))
    assert a.coeff(3) == Fraction(1, 8)


def test_AB_depends_on_eps_only_through_scalar():
    base = intersection_AB(JetParams(3, 3, 1)).scale(Fraction(1, 3))
    for eps in [Fraction(1, 2), 5, Fraction(40)]:
        assert intersection_AB(JetParams(3, 3, eps)).scale(1 / (2 + Fraction(eps))) == base


def test_merging_identity():
    for b in range(1, 60):
        for a in range(1, b + 1):
            assert a * math.comb(b, a) == b * math.comb(b - 1, a - 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dual_route_random_eps(n):
    rng = random.Random(1000 + n)
    for _ in range(3):
        eps = Fraction(rng.randint(1, 400), rng.randint(1, 10))
        mp = morse_polynomial(JetParams(n, n, eps))
        assert mp.raw.scale(mp.params.kfact_n) == PolyD(mp.q).shift(1)
        assert mp.raw.degree == n + 1
        assert mp.raw.coeff(0) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_leading_q_is_C_n_independent_of_eps(n):
    tops = {morse_polynomial(JetParams(n, n, e)).q[n] for e in [Fraction(1, 7), 1, 13, 40]}
    assert tops == {Fraction(1, math.factorial(n))}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_q_bounded_by_majorants(n):
    for eps in [Fraction(1, 3), 5 * n + 3, 40]:
        p = JetParams(n, n, eps)
        mp = morse_polynomial(p)
        R = majorants(p, mp.table).R
        assert all(abs(q) <= r for q, r in zip(mp.q, R))


def test_inconsistent_construction_raises():
    mp = morse_polynomial(JetParams(2, 2, 13))
    bad_q = (mp.q[0] + 1,) + mp.q[1:]
    with pytest.raises(InconsistencyError):
        MorsePolynomial(mp.params, mp.raw, bad_q, mp.table)


def test_evaluate_examples():
    mp = morse_polynomial(JetParams(2, 2, 13))
    assert evaluate_P(mp, 0) == 0
    assert evaluate_P(mp, 1225) > 0
    assert evaluate_P(mp, 10**6) > 0
    for d in [1, 5, 100, 214, 215, 1000]:
        v = evaluate_P(mp, d)
        s = sum(q * d**a for a, q in enumerate(mp.q))
        assert (v > 0) == (s > 0) and (v < 0) == (s < 0)


def test_headline_q_values_n2():
    mp = morse_polynomial(JetParams(2, 2, 13))
    assert mp.q == (Fraction(-299, 2), Fraction(-213, 2), Fraction(1, 2))
