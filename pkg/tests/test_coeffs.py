import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riesz_zeros.coeffs import (CoeffRequest, c_m_log, c_m_s, coeff_scan, coefficient,
                                d_m_integral, normalization_identity, residue_at_4, s_star)
from riesz_zeros.errors import DivergentIntegral, PrecisionFailure
from riesz_zeros.kappa import kappa

# frozen from tests/oracles.py (mpmath tanh-sinh, 30 digits)
RIESZ = [
    (1, 0.5, -1.31781518472251),
    (1, 1.5, -3.87007719559181),
    (2, 0.5, -0.988361388541879),
    (2, 1.0, -0.970654114810045),
    (2, 3.0, -1.38175777504246),
    (3, 0.5, -0.548121634155373),
    (3, 2.0, 1.14493406684823),
    (4, 0.5, 0.658768631693069),
    (4, 3.0, 10.6795804659046),
    (5, 1.0, 9.85047983661822),
]
LOG = {1: 0.5, 2: 0.0, 3: -0.851028451579797, 4: -3.42180892456565, 5: -13.7048044609371}


@pytest.mark.parametrize("m,s,expected", RIESZ)
def test_riesz_against_oracle(m, s, expected):
    res = c_m_s(CoeffRequest(m, s, tol=1e-10))
    assert res.value == pytest.approx(expected, abs=1e-9)
    assert res.total_error <= 1e-10


@pytest.mark.parametrize("m", sorted(LOG))
def test_log_constant_against_oracle(m):
    res = c_m_log(m, tol=1e-10)
    assert res.value == pytest.approx(LOG[m], abs=1e-9)


def test_log_constant_m1_is_one_half():
    # positive: consistent with the exact sphere formula under ordered pairs
    assert c_m_log(1, 1e-11).value == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("m", range(1, 9))
def test_normalization_identity(m):
    res = normalization_identity(m, tol=1e-10)
    assert abs(res.value + 1) <= 1e-9


def test_dispatch_on_zero():
    assert coefficient(CoeffRequest(3, 0.0)).value == pytest.approx(LOG[3], abs=1e-8)
    assert coefficient(CoeffRequest(2, 1.0)).value == pytest.approx(-0.970654114810045, abs=1e-8)


@pytest.mark.parametrize("m,s", [(1, 2.0), (1, 2.5), (2, 4.0), (5, 4.2), (3, -0.1)])
def test_divergent_window(m, s):
    with pytest.raises(DivergentIntegral):
        CoeffRequest(m, s)


def test_precision_failure_carries_estimate():
    with pytest.raises(PrecisionFailure) as exc:
        c_m_s(CoeffRequest(16, 3.5, tol=1e-8))
    assert exc.value.best is not None and exc.value.best.value > 1e10


def test_large_m_relative_tolerance():
    res = c_m_s(CoeffRequest(8, 2.0, tol=1e-6))
    assert res.value == pytest.approx(1521.83, rel=1e-5)


def test_residue_values():
    assert residue_at_4(2) == -1.0
    assert residue_at_4(3) == 6.0
    assert residue_at_4(4) == 10.0
    with pytest.raises(ValueError):
        residue_at_4(1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_residue_approach(m):
    target = residue_at_4(m)
    prev = None
    for k in (2, 3):
        s = 4 - 10.0 ** -k
        v = (4 - s) * c_m_s(CoeffRequest(m, s, tol=1e-9)).value
        assert abs(v - target) <= 0.05 * abs(target)
        if prev is not None:
            assert abs(v - target) <= abs(prev - target)
        prev = v


def test_m2_near_pole():
    v = c_m_s(CoeffRequest(2, 3.99, tol=1e-9)).value
    assert v == pytest.approx(-100, rel=0.05)


def test_s_star_values():
    s3 = s_star(3, tol=1e-7)
    assert 1 < s3 < 4
    assert s3 == pytest.approx(1.0580, abs=1e-3)
    assert c_m_s(CoeffRequest(3, s3 - 1e-5)).value < 0 < c_m_s(CoeffRequest(3, s3 + 1e-5)).value
    s4 = s_star(4, tol=1e-7)
    assert 0 < s4 < 4
    assert c_m_s(CoeffRequest(4, 0.25)).value < 0
    assert c_m_s(CoeffRequest(3, 0.25)).value < 0
    above = [c_m_s(CoeffRequest(4, s)).value for s in np.linspace(s4 + 0.01, 3.99, 40)]
    assert min(above) > 0


def test_s_star_needs_m3():
    with pytest.raises(ValueError):
        s_star(2)


def test_scan_and_continuity():
    scan = coeff_scan(2, 0.5, 1.5, 101, tol=1e-10)
    s = np.array([a for a, _ in scan])
    c = np.array([b for _, b in scan])
    steps = np.abs(np.diff(c))
    slope = np.max(np.abs(np.gradient(c, s)))
    assert np.all(steps <= 1.5 * slope * 0.01 + 1e-9)


def test_halving_and_truncation_stability():
    base = c_m_s(CoeffRequest(3, 1.5, tol=1e-8))
    finer = c_m_s(CoeffRequest(3, 1.5, tol=5e-9))
    wider = c_m_s(CoeffRequest(3, 1.5, tol=1e-8, truncation_radius=2 * base.truncation_radius))
    assert abs(finer.value - base.value) <= base.total_error
    assert abs(wider.value - base.value) <= base.total_error


@settings(max_examples=20)
@given(m=st.integers(2, 5), s=st.floats(0.05, 3.9))
def test_split_radius_invariance(m, s):
    a = c_m_s(CoeffRequest(m, s, tol=1e-9, split_radius=0.35)).value
    b = c_m_s(CoeffRequest(m, s, tol=1e-9, split_radius=0.2)).value
    assert abs(a - b) <= 5e-9 * max(1, abs(a))


def test_d_m_hook_reproduces_point_case_shape():
    # with the point-case kappa plugged in for k = m - 1 the hook returns the
    # prefactor times the same integral evaluated at the shifted exponent
    m, k, s = 2, 1, 1.0
    res = d_m_integral(m, k, s, lambda r: kappa(1, r))
    assert math.isfinite(res.value)
