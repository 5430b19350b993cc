import math

import mpmath
import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from riesz_zeros.errors import KappaDivergence
from riesz_zeros.kappa import (EvalPolicy, KappaQuery, kappa, kappa_decompose, kappa_direct,
                               kappa_highprec, kappa_km_asymptotic, kappa_minus_one, kappa_mm,
                               positivity_threshold, series_coefficients, small_r_leading,
                               tail_constant)

import oracles

# frozen from tests/oracles.py (30+ digit mpmath evaluation of the closed form)
ORACLE_VALUES = [
    (1, 0.3, 0.044979758198403884),
    (2, 0.3, 0.75033727229817241),
    (3, 0.3, 11.133607398494543),
    (4, 1.5, 1.0327645502254373),
    (6, 2.5, 0.99798845465410264),
    (2, 1e-3, 0.75000000000004167),
]


@pytest.mark.parametrize("m,r,expected", ORACLE_VALUES)
def test_matches_frozen_oracle(m, r, expected):
    assert kappa(m, r) == pytest.approx(expected, rel=1e-13)


def test_tail_minus_one_frozen():
    assert kappa_minus_one(3, 6.0) == pytest.approx(7.8863776228281566e-14, rel=1e-11)


def test_r_zero_limits():
    assert kappa(2, 0.0) == 0.75
    assert kappa(1, 0.0) == 0.0
    for m in (3, 4, 7):
        with pytest.raises(KappaDivergence):
            kappa(m, 0.0)


def test_query_validation():
    with pytest.raises(ValueError):
        KappaQuery(0, 1.0)
    with pytest.raises(ValueError):
        KappaQuery(17, 1.0)
    with pytest.raises(ValueError):
        KappaQuery(2, -0.1)
    with pytest.raises(ValueError):
        EvalPolicy(series_cutoff=0.0)


def test_kappa_22_approaches_three_quarters():
    assert abs(kappa_mm(KappaQuery(2, 1e-4)) - 0.75) < 1e-6


def test_far_field_is_one():
    assert kappa_mm(KappaQuery(3, 10.0)) == 1.0
    for m in range(1, 9):
        assert abs(kappa_minus_one(m, 10.0)) < 1e-30


def test_m4_near_origin():
    r = 1e-3
    expected = float(kappa_highprec(4, r))
    assert kappa(4, r) == pytest.approx(expected, rel=1e-12)
    assert kappa(4, r) == pytest.approx(1.25e12, rel=1e-6)


@pytest.mark.parametrize("m", range(1, 9))
def test_branch_consistency_against_highprec(m):
    for r in np.geomspace(1e-4, 0.35, 25):
        ref = float(kappa_highprec(m, r))
        assert abs(kappa(m, r) - ref) <= 1e-9 * abs(ref)


@pytest.mark.parametrize("m", [1, 2, 5, 8])
def test_branches_agree_at_cutoff(m):
    pol = EvalPolicy()
    below = kappa(m, np.nextafter(pol.series_cutoff, 0))
    above = kappa(m, pol.series_cutoff)
    assert abs(below - above) <= 1e-9 * abs(above)


def test_series_leading_coefficient_exact():
    for m in range(1, 10):
        assert series_coefficients(m)[0] == Fraction(m + 1, 4)


def test_highprec_independent_of_package_oracle():
    for m, r in [(2, 0.7), (5, 1.3), (3, 0.05)]:
        assert float(kappa_highprec(m, r)) == pytest.approx(float(oracles.kappa(m, r)), rel=1e-14)


def test_decompose_examples():
    d = kappa_decompose(KappaQuery(1, 0.8))
    assert d.term_two < 0
    d = kappa_decompose(KappaQuery(2, 1.0))
    assert d.value == pytest.approx(kappa(2, 1.0), rel=1e-12)
    d = kappa_decompose(KappaQuery(3, 2.0))
    assert d.term_one > 0 and d.term_three > 0 and d.term_two < 0
    with pytest.raises(ValueError):
        kappa_decompose(KappaQuery(2, 0.0))


@given(m=st.integers(1, 8), r=st.floats(1e-3, 12.0))
def test_term_signs(m, r):
    d = kappa_decompose(KappaQuery(m, r))
    assert d.term_one >= 0 and d.term_two <= 0 and d.term_three >= 0


@given(m=st.integers(1, 16), r=st.floats(0.36, 25.0))
def test_minus_one_consistent_with_value(m, r):
    km1 = kappa_minus_one(m, r)
    assert kappa(m, r) == pytest.approx(1.0 + km1, rel=1e-14, abs=1e-15)


@given(m=st.integers(1, 6), r=st.floats(5.0, 20.0))
def test_tail_bound(m, r):
    assert abs(kappa_minus_one(m, r)) <= tail_constant(m) * r ** 4 * math.exp(-r * r)


@given(m=st.integers(1, 16), r=st.floats(1e-4, 6.0))
def test_kappa_positive(m, r):
    assert kappa(m, r) > 0


def test_vectorised_matches_scalar():
    r = np.array([1e-3, 0.2, 0.35, 1.0, 4.0])
    vec = kappa(3, r)
    assert np.array_equal(vec, np.array([kappa(3, x) for x in r]))


def test_direct_form_loses_accuracy_near_zero():
    # the naive closed form cancels catastrophically; the series does not
    ref = float(kappa_highprec(2, 1e-3))
    assert abs(kappa_direct(2, 1e-3) - ref) > 1e-6
    assert abs(kappa(2, 1e-3) - ref) < 1e-14


@pytest.mark.parametrize("m", range(1, 7))
def test_leading_asymptotics(m):
    r = 1e-3
    assert kappa(m, r) * r ** (2 * m - 4) == pytest.approx((m + 1) / 4, rel=1e-3)


def test_small_r_leading_examples():
    assert small_r_leading(2, 0.01) == pytest.approx(0.75)
    assert small_r_leading(1, 1.0) == pytest.approx(0.5)
    assert small_r_leading(3, 0.1) == pytest.approx(100.0)


def test_positivity_threshold():
    assert positivity_threshold(3) == 3.0
    assert positivity_threshold(4) == pytest.approx(math.sqrt(11))
    assert kappa(3, 3.0) - 1 > 0
    with pytest.raises(ValueError):
        positivity_threshold(2)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_positive_beyond_threshold(m):
    r = np.linspace(positivity_threshold(m), 20.0, 200)
    assert np.all(kappa_minus_one(m, r) > 0)


def test_km_asymptotic():
    assert kappa_km_asymptotic(1, 2, "near_zero").exponent == -2
    assert kappa_km_asymptotic(2, 2, "near_zero").constant == 0.75
    assert kappa_km_asymptotic(1, 1, "near_infinity").limit == 1.0
    with pytest.raises(ValueError):
        kappa_km_asymptotic(3, 2, "near_zero")


def test_highprec_minus_one_resolves_tail():
    v = kappa_highprec(3, 12.0, minus_one=True)
    assert v > 0
    assert float(v) == pytest.approx(kappa_minus_one(3, 12.0), rel=1e-12)
