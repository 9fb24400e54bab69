import math
import random
from fractions import Fraction

import pytest

from ggjet.bounds import (
    FujiwaraHypothesisError,
    bounds_report,
    check_lemma_chain,
    d_epsilon,
    fujiwara_M,
    fujiwara_positive,
    majorants,
    positivity_threshold,
    theorem_bounds,
)
from ggjet.coefficients import CoeffTable
from ggjet.morse import JetParams, evaluate_P, morse_polynomial


def test_majorant_examples():
    p = JetParams(2, 2, 13)
    maj = majorants(p)
    t = CoeffTable.build(2, 2)
    assert maj.R[2] == t.C[2]
    assert maj.R[1] == t.C[1] * (t.B[1] + (4 + p.eps) * p.N)
    assert maj.D_l(1) == 85


def test_majorants_need_k_equal_n():
    with pytest.raises(ValueError):
        majorants(JetParams(3, 2, 1))


def test_majorant_D_formula():
    p = JetParams(4, 4, Fraction(5, 2))
    maj = majorants(p)
    for l in range(1, 5):
        assert maj.D_l(l) == (2 + (2 + p.eps) * l) * math.comb(p.N, l) * 2 ** (l - 1)
    assert all(r > 0 for r in maj.R)


def test_d_epsilon():
    assert d_epsilon(13) == Fraction(153, 4)
    assert d_epsilon(1) == Fraction(27, 2)
    assert d_epsilon(2) == Fraction(27, 2)
    with pytest.raises(ValueError):
        d_epsilon(0)


@pytest.mark.parametrize("n", range(2, 9))
def test_lemma_chain_headline(n):
    verdicts = check_lemma_chain(JetParams.headline(n))
    assert len(verdicts) == 7
    assert all(verdicts.values()), verdicts


@pytest.mark.parametrize("eps", [Fraction(1, 10), 1, 2, 40])
def test_lemma_chain_other_eps(eps):
    assert all(check_lemma_chain(JetParams(3, 3, eps)).values())


def test_fujiwara_trivial():
    assert fujiwara_positive([0, 0, 1], 5, 1).positive


def test_fujiwara_quadratic():
    M = Fraction(3)
    # t^2 - M t - M^2 in ascending order
    res = fujiwara_positive([-M * M, -M, 1], M, 2 * M + 1)
    assert res.positive
    assert res.value == M * M + 3 * M + 1
    assert 0 < res.certificate <= res.value


def test_fujiwara_below_threshold_reports_exact_sign():
    M = Fraction(3)
    res = fujiwara_positive([-M * M, -M, 1], M, 1)
    assert not res.positive
    assert res.certificate is None


def test_fujiwara_hypothesis_violation_names_j():
    with pytest.raises(FujiwaraHypothesisError) as info:
        fujiwara_positive([100, 0, 1], 2, 10)
    assert info.value.j == 2


def test_fujiwara_on_morse_coefficients():
    mp = morse_polynomial(JetParams(2, 2, 13))
    M = fujiwara_M(mp.params)
    assert M == 612
    assert fujiwara_positive(mp.q, M, 1225).positive


def test_fujiwara_randomized_soundness():
    rng = random.Random(7)
    for _ in range(200):
        deg = rng.randint(1, 6)
        M = Fraction(rng.randint(1, 50), rng.randint(1, 7))
        lead = Fraction(rng.randint(1, 20), rng.randint(1, 5))
        coeffs = [lead]
        for j in range(1, deg + 1):
            cap = M**j * lead
            coeffs.append(cap * Fraction(rng.randint(-1000, 1000), 1000))
        coeffs.reverse()
        delta = Fraction(rng.randint(1, 10**6), 10**6)
        res = fujiwara_positive(coeffs, M, 2 * M + delta)
        assert res.positive and res.value > 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_positivity_threshold(n):
    mp = morse_polynomial(JetParams.headline(n))
    d0 = positivity_threshold(mp)
    M = fujiwara_M(mp.params)
    assert d0 <= 2 * M + 1
    assert evaluate_P(mp, d0) > 0
    if d0 > 1:
        assert evaluate_P(mp, d0 - 1) <= 0
    # spot-check the range above d0 up to the guaranteed threshold
    for d in range(d0, math.ceil(2 * M) + 2, max(1, int(M) // 50)):
        assert evaluate_P(mp, d) > 0


def test_threshold_n2_eps13():
    mp = morse_polynomial(JetParams(2, 2, 13))
    assert 2 * fujiwara_M(mp.params) == 1224
    assert positivity_threshold(mp) <= 1225


def test_threshold_n3_eps18():
    mp = morse_polynomial(JetParams(3, 3, 18))
    assert 2 * fujiwara_M(mp.params) + 1 == 8020
    assert positivity_threshold(mp) <= 8020


def test_theorem_bounds():
    assert theorem_bounds(2) == (1224, Fraction(37179, 4))
    assert theorem_bounds(3)[0] == Fraction(153 * 243, 4)
    with pytest.raises(ValueError):
        theorem_bounds(1)


@pytest.mark.parametrize("n", range(2, 12))
def test_monomial_dominates_ggl(n):
    ggl = 18 * (Fraction(5 * n + 3, 4) + 1) * n**4
    mono, koba = theorem_bounds(n)
    assert mono >= ggl
    assert (mono == ggl) == (n == 2)
    assert koba == theorem_bounds(2 * n - 1)[0]


def test_bounds_report_n2():
    rep = bounds_report(JetParams(2, 2, 13))
    assert rep.ok
    assert rep.threshold_2M == 1224
    assert rep.ggl_bound == 1224
    assert rep.fujiwara_M == rep.d_eps * 16
    assert rep.monomial_bound == 1224
    assert rep.kobayashi_bound == Fraction(37179, 4)
    assert "27/4" in rep.metadata["d_eps_alternative_constant"]
