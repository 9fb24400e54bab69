"""Exact Morse-inequality computations on Green-Griffiths jet spaces of
projective hypersurfaces, with brute-force oracles for every supporting
identity."""

from .arith import BinomialTable, HSeries, PolyD, degree_map, geometric_factor, series_mul, series_pow
from .bounds import (
    BoundsReport,
    FujiwaraResult,
    MajorantTable,
    bounds_report,
    check_lemma_chain,
    d_epsilon,
    fujiwara_positive,
    majorants,
    positivity_threshold,
    theorem_bounds,
)
from .coefficients import CoeffTable, compute_B, compute_B_bruteforce, compute_C, compute_C_subsets, lam
from .morse import (
    InconsistencyError,
    JetParams,
    MorsePolynomial,
    evaluate_P,
    intersection_A_power,
    intersection_AB,
    morse_polynomial,
    segre_series_Tk,
)

__version__ = "0.1.0"
