"""Coefficient integrals built from the point-case pair correlation.

All integrals have the shape ``2m * int_0^inf w(r) (kappa_mm(r) - 1) r^(2m-1-s) dr``
with ``w = 1`` (Riesz case, and the normalization identity at s = 0) or
``w = log r`` (logarithmic case). They are split into three pieces:

* [0, split_radius]: the Laurent series of kappa is integrated term by
  term in closed form, which handles the r^(3-s) endpoint behaviour exactly;
* [split_radius, R]: adaptive Gauss-Kronrod on the closed form;
* [R, inf): bounded analytically with |kappa - 1| <= K r^4 exp(-r^2).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.special import gammaincc, gamma

from . import kappa as _kappa
from .errors import DivergentIntegral, NoCrossing, PrecisionFailure
from .quadrature import adaptive_gk

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    tail_bound: float
    subdivisions: int
    truncation_radius: float = math.nan

    @property
    def total_error(self) -> float:
        return self.error_estimate + self.tail_bound

    def as_dict(self):
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "tail_bound": self.tail_bound,
        }


@dataclass(frozen=True)
class CoeffRequest:
    """Parameters of one coefficient integral.

    ``s = 0`` selects the logarithmic kernel. ``truncation_radius=None``
    picks the smallest R >= 6 (in steps of 0.5) whose tail bound is below
    tol / 10.
    """

    m: int
    s: float
    tol: float = 1e-8
    split_radius: float = 0.35
    truncation_radius: float | None = None

    def __post_init__(self):
        _kappa._check_m(self.m)
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if not 0 < self.split_radius <= 1:
            raise ValueError("split_radius must lie in (0, 1]")
        if self.s != 0:
            check_window(self.m, self.s)


def check_window(m, s):
    upper = min(2 * m, 4)
    if not 0 < s < upper:
        raise DivergentIntegral(
            f"c_{m}(s) diverges for s={s}: need 0 < s < min(2m, 4) = {upper} "
            f"(integrand ~ r^(3-s) (m+1)/4 - r^(2m-1-s) near 0)"
        )


# ---------------------------------------------------------------------------
# pieces

def _series_piece(m, s, eps, log_weight, order):
    """int_0^eps w(r) (kappa - 1) r^(2m-1-s) dr from the Laurent series.

    kappa = sum_n Q_n r^(2n + 4 - 2m), so each term integrates to an
    elementary expression with exponent e_n = 2n + 4 - s.
    Returns (value, truncation error estimate).
    """
    q = [float(c) for c in _kappa.series_coefficients(m, order)]
    le = math.log(eps)

    def term(e):
        if log_weight:
            return eps ** e * (le / e - 1.0 / (e * e))
        return eps ** e / e

    terms = [qn * term(2 * n + 4 - s) for n, qn in enumerate(q)]
    value = math.fsum(terms) - term(2 * m - s)
    # geometric extrapolation of the dropped tail from the last two terms
    a, b = abs(terms[-2]), abs(terms[-1])
    ratio = b / a if a > 0 else 0.0
    trunc = b * ratio / (1 - ratio) if ratio < 1 else b
    return value, trunc + 8 * np.finfo(float).eps * math.fsum(abs(t) for t in terms)


def _tail_bound(m, s, radius, log_weight):
    """K * int_R^inf w(r) r^(2m+3-s) exp(-r^2) dr (w = log r bounded by r)."""
    k_const = _kappa.tail_constant(m)
    a = m + 2 - s / 2 + (0.5 if log_weight else 0.0)
    return k_const * 0.5 * gamma(a) * gammaincc(a, radius * radius)


def _choose_radius(m, s, tol, log_weight):
    radius = 6.0
    while _tail_bound(m, s, radius, log_weight) >= tol / 10:
        radius += 0.5
    return radius


def _weighted_integral(m, s, tol, split_radius, truncation_radius, log_weight,
                       policy=_kappa.DEFAULT_POLICY):
    """Unscaled integral (without the 2m factor) with error bookkeeping."""
    radius = truncation_radius or _choose_radius(m, s, tol / (2 * m), log_weight)
    if radius <= split_radius:
        raise ValueError("truncation_radius must exceed split_radius")
    tail = _tail_bound(m, s, radius, log_weight)
    small, small_err = _series_piece(m, s, split_radius, log_weight, policy.series_order)
    power = 2 * m - 1 - s

    def integrand(r):
        vals = _kappa.kappa_minus_one(m, r, policy) * r ** power
        return vals * np.log(r) if log_weight else vals

    budget = max(tol / (2 * m) - tail - small_err, 0.25 * tol / (2 * m))
    mid, mid_err, subdivisions, converged = adaptive_gk(
        integrand, split_radius, radius, tol=0.5 * budget
    )
    return small + mid, small_err + mid_err, tail, subdivisions, radius, converged


def _finish(m, tol, pieces, what):
    value, err, tail, subdivisions, radius, converged = pieces
    res = QuadResult(2 * m * value, 2 * m * err, 2 * m * tail, subdivisions, radius)
    if not converged or res.total_error > tol:
        raise PrecisionFailure(
            f"{what}: error {res.total_error:.3g} exceeds tol {tol:.3g}", best=res
        )
    return res


# ---------------------------------------------------------------------------
# public operations

def c_m_s(req: CoeffRequest) -> QuadResult:
    """c_m(s) = 2m int_0^inf (kappa_mm(r) - 1) r^(2m-1-s) dr for 0 < s < min(2m, 4)."""
    if req.s == 0:
        raise DivergentIntegral("s = 0 selects the logarithmic kernel; use c_m_log")
    check_window(req.m, req.s)
    pieces = _weighted_integral(req.m, req.s, req.tol, req.split_radius,
                                req.truncation_radius, log_weight=False)
    return _finish(req.m, req.tol, pieces, f"c_{req.m}({req.s})")


def c_m_log(m: int, tol: float = 1e-8, split_radius: float = 0.35,
            truncation_radius: float | None = None) -> QuadResult:
    """Logarithmic constant c_m = 2m int_0^inf log(r) (kappa_mm - 1) r^(2m-1) dr."""
    _kappa._check_m(m)
    pieces = _weighted_integral(m, 0.0, tol, split_radius, truncation_radius,
                                log_weight=True)
    return _finish(m, tol, pieces, f"c_{m} (log)")


def normalization_identity(m: int, tol: float = 1e-8, split_radius: float = 0.35,
                           truncation_radius: float | None = None) -> QuadResult:
    """2m int_0^inf (kappa_mm - 1) r^(2m-1) dr, which equals -1 for every m."""
    _kappa._check_m(m)
    pieces = _weighted_integral(m, 0.0, tol, split_radius, truncation_radius,
                                log_weight=False)
    return _finish(m, tol, pieces, f"identity m={m}")


def coefficient(req: CoeffRequest) -> QuadResult:
    """Dispatch on ``req.s``: the Riesz coefficient, or the log constant at s = 0."""
    if req.s == 0:
        return c_m_log(req.m, req.tol, req.split_radius, req.truncation_radius)
    return c_m_s(req)


def residue_at_4(m: int) -> float:
    """lim_{s -> 4^-} (4 - s) c_m(s).

    For m >= 3 only the r^(4-2m) singularity of kappa feeds the pole; for
    m = 2 the subtracted constant sits at the same power and kappa_22(0) - 1
    = -1/4 survives.
    """
    if m == 1:
        raise ValueError("for m = 1 the pole is at s = 2, not s = 4")
    _kappa._check_m(m)
    leading = (m + 1) / 4
    if m == 2:
        leading -= 1.0
    return 2 * m * leading


def _c_raw(m, s, tol):
    """c_m(s) extended continuously to s = 0 (where it equals -1)."""
    if s == 0:
        return normalization_identity(m, tol).value
    return c_m_s(CoeffRequest(m, s, tol)).value


def s_star(m: int, tol: float = 1e-6, coeff_tol: float = 1e-9) -> float:
    """Smallest zero of s -> c_m(s) in (0, 4), for m >= 3.

    Scans s = 0.25, 0.5, ..., 3.75 (plus s = 0, where c_m = -1) and bisects
    the first bracket until it is narrower than ``tol``.
    """
    if m < 3:
        raise ValueError("s_star is defined for m >= 3")
    grid = [0.0] + [0.25 * k for k in range(1, 16)]
    values = [_c_raw(m, s, coeff_tol) for s in grid]
    crossings = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if values[i] < 0 <= values[i + 1] or values[i] >= 0 > values[i + 1]
    ]
    if not crossings:
        raise NoCrossing(f"c_{m}(s) shows no sign change on (0, 4)")
    if len(crossings) > 1:
        log.warning("c_%d(s) changes sign in several brackets: %s", m, crossings)
    lo, hi = crossings[0]
    f_lo = _c_raw(m, lo, coeff_tol)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = _c_raw(m, mid, coeff_tol)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def coeff_scan(m: int, smin: float, smax: float, points: int, tol: float = 1e-8):
    """[(s, c_m(s))] on an evenly spaced grid inside the validity window."""
    if points < 1:
        raise ValueError("points must be >= 1")
    grid = np.linspace(smin, smax, points) if points > 1 else np.array([smin])
    for s in grid:
        check_window(m, s)
    return [(float(s), c_m_s(CoeffRequest(m, float(s), tol)).value) for s in grid]


def d_m_integral(m: int, k: int, s: float, kappa_km: Callable, tol: float = 1e-8,
                 truncation_radius: float = 12.0, split_radius: float = 0.5) -> QuadResult:
    """Higher-codimension coefficient from an externally supplied kappa_km.

    Returns (pi^(m-k)/(m-k)!)^2 * 2m * int_0^inf (kappa_km(r) - 1) r^(2m-1-s) dr.
    ``kappa_km`` must be vectorised and behave like r^(-2k) at 0, so the
    window is 0 < s < 2(m - k). Near 0 the substitution u = r^(2(m-k)-s)
    removes the endpoint singularity. The tail beyond ``truncation_radius``
    is bounded by a constant fitted on [5, 8] (decay class r^4 exp(-r^2)).
    """
    if not 1 <= k < m:
        raise ValueError("need 1 <= k < m")
    a = 2 * (m - k) - s
    if not 0 < s < 2 * (m - k):
        raise DivergentIntegral(f"d_m(k, s) needs 0 < s < 2(m-k) = {2 * (m - k)}")

    def near(u):
        r = u ** (1.0 / a)
        return (kappa_km(r) - 1.0) * r ** (2 * k) / a

    lo, lo_err, n1, ok1 = adaptive_gk(near, 0.0, split_radius ** a, tol=tol / 4)

    def far(r):
        return (kappa_km(r) - 1.0) * r ** (2 * m - 1 - s)

    hi, hi_err, n2, ok2 = adaptive_gk(far, split_radius, truncation_radius, tol=tol / 4)
    grid = np.linspace(5.0, 8.0, 61)
    k_fit = 2.0 * float(np.max(np.abs(kappa_km(grid) - 1.0) / (grid ** 4 * np.exp(-grid ** 2))))
    ex = m + 2 - s / 2
    tail = k_fit * 0.5 * gamma(ex) * gammaincc(ex, truncation_radius ** 2)
    pref = (math.pi ** (m - k) / math.factorial(m - k)) ** 2 * 2 * m
    res = QuadResult(pref * (lo + hi), pref * (lo_err + hi_err), pref * tail, n1 + n2,
                     truncation_radius)
    if not (ok1 and ok2) or res.total_error > tol:
        raise PrecisionFailure("d_m integral did not reach tolerance", best=res)
    return res


def with_tol(req: CoeffRequest, tol: float) -> CoeffRequest:
    return replace(req, tol=tol)
