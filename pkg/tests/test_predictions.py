import math

import pytest
from hypothesis import given, strategies as st

from riesz_zeros.predictions import (Bounds, ExpansionPrediction, c_n_from_energy, con_prefactor,
                                     log_energy_lower_bound, expansion_cutoff, log_energy_from_cn,
                                     minimal_energy_bounds, predict_sphere_log,
                                     predict_theorem_con, predict_theorem_dis, cn_upper_limit,
                                     sphere_log_expansion)

L = math.log(4 / math.e)


def test_sphere_log_values():
    assert predict_sphere_log(10, 0.5) == pytest.approx(25 - 2.5 * math.log(10) - 2.5)
    assert predict_sphere_log(10, 0.5) == pytest.approx(16.7435, abs=1e-4)
    assert predict_sphere_log(1, 0.5) == 0
    assert predict_sphere_log(10, 1.0) == pytest.approx(-L / 4 * 100 - 2.5 * math.log(10) + L / 4 * 10)
    with pytest.raises(ValueError):
        predict_sphere_log(10, 2.0)


@given(n=st.integers(1, 10 ** 6), radius=st.sampled_from([0.5, 1.0]))
def test_expansion_matches_closed_form(n, radius):
    assert sphere_log_expansion(radius).evaluate(n) == pytest.approx(predict_sphere_log(n, radius),
                                                                     rel=1e-12, abs=1e-9)


def test_expansion_invariants():
    with pytest.raises(ValueError):
        ExpansionPrediction((("a", 1.0, 1.0), ("b", 1.0, 2.0)))
    assert ExpansionPrediction((("a", 2.0, 1.0),), (1.0, 1.0)).evaluate(0) == 0.0


def test_dis_log_case_m1():
    pred = predict_theorem_dis(1, 0, [0.5], 0.5)
    assert [(p, c) for _, p, c in pred.terms] == [(2.0, 0.5), (1.0, -0.5)]
    assert pred.log_term == (-1.0, 1.0)
    # ordered-pair expansion is twice the unordered sphere formula
    for n in (3, 10, 200):
        assert pred.evaluate(n) == pytest.approx(2 * predict_sphere_log(n, 0.5), rel=1e-12)


def test_dis_cp2_two_terms():
    pred = predict_theorem_dis(2, 1.0, [1.7, 9.0, 9.0], -0.97)
    assert [(p, c) for _, p, c in pred.terms] == [(4.0, 1.7), (2.5, -0.97)]


def test_dis_keeps_powers_strict_at_integer_boundary():
    pred = predict_theorem_dis(4, 0.5, [1.0, 2.0, 3.0, 4.0], 1.0)
    powers = [p for _, p, _ in pred.terms]
    assert powers == sorted(powers, reverse=True) and len(set(powers)) == len(powers)
    # m - s/2 = 2: a_2 N^4 would coincide with c N^4, so it is dropped
    assert expansion_cutoff(3, 2.0) == 2
    pred = predict_theorem_dis(3, 2.0, [1.0, 5.0], 7.0)
    assert [p for _, p, _ in pred.terms] == [6.0, 4.0]


def test_dis_window():
    with pytest.raises(ValueError):
        predict_theorem_dis(1, 2.0, [1.0], 1.0)
    with pytest.raises(ValueError):
        predict_theorem_dis(3, 4.0, [1.0], 1.0)
    assert predict_theorem_dis(3, 1.0, [1.0], 1.0).evaluate(0) == 0


def test_con_prefactor_and_weight():
    assert con_prefactor(2, 1) == pytest.approx(math.pi ** 2)
    assert con_prefactor(3, 2) == pytest.approx(math.pi ** 2)
    assert con_prefactor(3, 1) == pytest.approx((math.pi ** 2 / 2) ** 2)
    pred = predict_theorem_con(4, 3, 0.5, [2.0, 3.0], d_value=1.5)
    terms = {label: (p, c) for label, p, c in pred.terms}
    pref = con_prefactor(4, 3)
    assert terms["a1"] == (6.0, pytest.approx(pref * 2.0))
    assert terms["a2"] == (4.0, pytest.approx(pref * 0.75 * 3.0))
    assert terms["d_m(k,s)"] == (6 - 4 + 0.25, 1.5)
    with pytest.raises(ValueError):
        predict_theorem_con(4, 3, 0.5, [2.0, 3.0], {2: 0.5})


def test_con_window():
    predict_theorem_con(3, 1, 3.9, [1.0])
    for s in (4.0, 4.1, 0.0):
        with pytest.raises(ValueError):
            predict_theorem_con(3, 1, s, [1.0])
    with pytest.raises(ValueError):
        predict_theorem_con(2, 2, 1.0, [1.0])


def test_lower_bound_and_limit_constant():
    assert log_energy_lower_bound(100) == pytest.approx(-L / 4 * 1e4 - 25 * math.log(100) - 1100 / (6 * math.pi))
    assert cn_upper_limit() == pytest.approx(-0.25 * math.log(math.pi * math.sqrt(3) / 2)
                                                 - math.pi / (8 * math.sqrt(3)))
    assert cn_upper_limit() == pytest.approx(-0.4769, abs=1e-4)


@given(n=st.integers(2, 10 ** 5), c=st.floats(-5, 5))
def test_cn_inversion(n, c):
    assert c_n_from_energy(log_energy_from_cn(n, c), n) == pytest.approx(c, abs=1e-9 * n)


def test_bound_variants():
    b = minimal_energy_bounds(50, "riesz", s=1.0, c3=2.0, c4=1.0)
    assert b.lower < b.upper
    b = minimal_energy_bounds(50, "riesz", s=2.0)
    assert b.lower == b.upper == pytest.approx(0.125 * 2500 * math.log(50))
    b = minimal_energy_bounds(50, "riesz", s=3.0, c1=1.0, c2=2.0)
    assert b.lower == pytest.approx(50 ** 2.5)
    assert minimal_energy_bounds(100, "log_lower").lower == log_energy_lower_bound(100)
    assert minimal_energy_bounds(10, "cn_limits").upper == cn_upper_limit()
    e = log_energy_from_cn(40, -0.05)
    assert minimal_energy_bounds(40, "cn", energy=e).lower == pytest.approx(-0.05)
    with pytest.raises(ValueError):
        minimal_energy_bounds(10, "nope")
