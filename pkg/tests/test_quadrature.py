import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from riesz_zeros.quadrature import (GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, adaptive_gk,
                                    adaptive_gk_heap, gk15)


def test_rule_exactness():
    for deg in range(0, 23):
        exact = (1 - (-1) ** (deg + 1)) / (deg + 1)
        assert float(KRONROD_WEIGHTS @ NODES ** deg) == pytest.approx(exact, abs=1e-14)
    for deg in range(0, 14):
        exact = (1 - (-1) ** (deg + 1)) / (deg + 1)
        assert float(GAUSS_WEIGHTS @ NODES ** deg) == pytest.approx(exact, abs=1e-14)


def test_single_panel():
    k, err = gk15(np.exp, 0.0, 1.0)
    assert k == pytest.approx(math.e - 1, rel=1e-15)
    assert err < 1e-12


def test_log_endpoint_singularity():
    val, err, _, ok = adaptive_gk(np.log, 0.0, 1.0, tol=1e-11)
    assert ok and abs(val + 1) < 1e-10


def test_reversed_limits():
    a = adaptive_gk(np.sin, 0.0, 2.0)[0]
    b = adaptive_gk(np.sin, 2.0, 0.0)[0]
    assert a == -b


def test_limit_reports_nonconvergence():
    _, _, n, ok = adaptive_gk(lambda x: np.abs(x - 0.3) ** -0.9, 0.0, 1.0, tol=1e-14, limit=50)
    assert not ok and n <= 50


@given(a=st.floats(0.1, 5), p=st.floats(-0.6, 3))
def test_power_integrals(a, p):
    exact = a ** (p + 1) / (p + 1)
    val, err, _, ok = adaptive_gk(lambda x: x ** p, 0.0, a, tol=1e-10)
    assert ok
    assert abs(val - exact) <= 1e-9 * max(1, abs(exact))


def test_batched_agrees_with_heap():
    f = lambda x: np.exp(-x * x) * np.cos(5 * x)
    a = adaptive_gk(f, 0.0, 6.0, tol=1e-12)[0]
    b = adaptive_gk_heap(f, 0.0, 6.0, tol=1e-12)[0]
    assert a == pytest.approx(b, abs=1e-12)
    assert a == pytest.approx(math.sqrt(math.pi) / 2 * math.exp(-25 / 4), abs=1e-12)
