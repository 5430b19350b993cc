"""Scaling limit of the pair correlation of zeros in the point case.

For a full system of ``m`` Gaussian random sections in complex dimension
``m`` the rescaled pair correlation depends only on the distance ``r``.
With ``v = exp(-r^2)`` it reads

    kappa_mm(r) = [T1 + T2 + T3] / (m (1 - v)^(m+2))

    T1 = m (1 - v^(m+1)) (1 - v)
    T2 = r^2 (2m + 2) (v^(m+1) - v)
    T3 = r^4 [v^(m+1) + v^m + ((m+1) v + 1) (v^m - v) / (v - 1)]

Numerator and denominator both vanish to high order as r -> 0, so small r
is served by a Laurent series in x = r^2 whose coefficients are built once
with exact rational arithmetic. Larger r uses a rearranged closed form
that keeps kappa - 1 accurate deep into the exponential tail.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import KappaDivergence

M_MAX = 16


@dataclass(frozen=True)
class EvalPolicy:
    """How kappa is evaluated.

    ``series_cutoff`` is the radius below which the series replaces the
    closed form, ``series_order`` the number of terms kept beyond the
    leading one, ``direct_precision`` the working precision (decimal
    digits) of the high-precision reference path.
    """

    series_cutoff: float = 0.35
    series_order: int = 30
    direct_precision: int = 50

    def __post_init__(self):
        if not 0.0 < self.series_cutoff <= 1.0:
            raise ValueError("series_cutoff must lie in (0, 1]")
        if self.series_order < 8:
            raise ValueError("series_order must be at least 8")
        if self.direct_precision < 16:
            raise ValueError("direct_precision must be at least 16 digits")


DEFAULT_POLICY = EvalPolicy()


@dataclass(frozen=True)
class KappaQuery:
    m: int
    r: float
    policy: EvalPolicy = field(default=DEFAULT_POLICY)

    def __post_init__(self):
        _check_m(self.m)
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError(f"r must be finite and nonnegative, got {self.r}")


@dataclass(frozen=True)
class KappaDecomposition:
    term_one: float
    term_two: float
    term_three: float
    denominator: float
    v: float

    @property
    def value(self) -> float:
        return (self.term_one + self.term_two + self.term_three) / self.denominator


@dataclass(frozen=True)
class AsymptoticForm:
    """Leading behaviour of kappa_km in one regime.

    Near zero: kappa ~ constant * r**exponent (constant is None when only the
    growth class is known). Near infinity: kappa -> limit with corrections
    of the size given by ``decay``.
    """

    regime: str
    exponent: float | None = None
    constant: float | None = None
    limit: float | None = None
    decay: str | None = None


def _check_m(m):
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise TypeError(f"m must be an integer, got {type(m).__name__}")
    if not 1 <= m <= M_MAX:
        raise ValueError(f"m must lie in [1, {M_MAX}], got {m}")


# ---------------------------------------------------------------------------
# exact series

def _numerator_terms(m):
    """Numerator as {power of x: {power of v: integer coefficient}}."""
    t1 = {0: m, 1: -m, m + 1: -m, m + 2: m}
    t2 = {m + 1: 2 * m + 2, 1: -(2 * m + 2)}
    # (v^m - v)/(v - 1) = v + v^2 + ... + v^(m-1)
    t3 = {m + 1: 1, m: 1}
    for j in range(1, m):
        t3[j + 1] = t3.get(j + 1, 0) + (m + 1)
        t3[j] = t3.get(j, 0) + 1
    return {0: t1, 1: t2, 2: t3}


def _exp_series(k, order):
    """Coefficients of exp(-k x) up to x**order."""
    out = [Fraction(1)]
    for n in range(1, order + 1):
        out.append(out[-1] * Fraction(-k, n))
    return out


def _mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] += ai * bj
    return out


def _div(a, b, order):
    if b[0] == 0:
        raise ZeroDivisionError("series division by a series with zero constant term")
    out = []
    for n in range(order + 1):
        acc = a[n] if n < len(a) else Fraction(0)
        for k in range(1, min(n, len(b) - 1) + 1):
            acc -= b[k] * out[n - k]
        out.append(acc / b[0])
    return out


@lru_cache(maxsize=None)
def series_coefficients(m: int, order: int = 30) -> tuple[Fraction, ...]:
    """Exact coefficients Q_n with kappa_mm(r) = x**(2-m) * sum_n Q_n x**n.

    Here x = r**2 and n runs over 0..order. The numerator of the closed form
    vanishes to fourth order in x for every m; that common factor is removed
    before dividing by the denominator series.
    """
    _check_m(m)
    top = order + 4
    num = [Fraction(0)] * (top + 1)
    for xpow, poly in _numerator_terms(m).items():
        for vpow, coeff in poly.items():
            if coeff == 0:
                continue
            for n, e in enumerate(_exp_series(vpow, top - xpow)):
                num[n + xpow] += coeff * e
    if any(num[:4]):
        raise ArithmeticError("numerator does not vanish to order x^4")
    reduced = num[4:]
    # (1 - e^{-x}) / x = sum (-1)^n x^n / (n+1)!
    g = [Fraction((-1) ** n, math.factorial(n + 1)) for n in range(order + 1)]
    den = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(m + 2):
        den = _mul(den, g, order)
    den = [m * d for d in den]
    return tuple(_div(reduced, den, order))


_float_lock = threading.Lock()
_float_cache: dict[tuple[int, int], np.ndarray] = {}


def _float_series(m, order):
    key = (m, order)
    coeffs = _float_cache.get(key)
    if coeffs is None:
        with _float_lock:
            coeffs = _float_cache.get(key)
            if coeffs is None:
                coeffs = np.array([float(q) for q in series_coefficients(m, order)])
                _float_cache[key] = coeffs
    return coeffs


def _series_reduced(m, x, policy):
    """sum_n Q_n x**n (Horner) so that kappa = x**(2-m) * result."""
    coeffs = _float_series(m, policy.series_order)
    acc = np.zeros_like(x)
    for q in coeffs[::-1]:
        acc = acc * x + q
    return acc


# ---------------------------------------------------------------------------
# closed form in double precision

def _direct_parts(m, r):
    """Stable pieces of the closed form for r > 0 (arrays)."""
    x = r * r
    v = np.exp(-x)
    one_minus_v = -np.expm1(-x)
    one_minus_vm1 = -np.expm1(-(m + 1) * x)
    one_minus_vm = -np.expm1(-m * x)
    if m >= 2:
        geo = v * (-np.expm1(-(m - 1) * x)) / one_minus_v  # v + ... + v^(m-1)
    else:
        geo = np.zeros_like(x)
    vm = np.exp(-m * x)
    vm1 = v * vm
    t1 = m * one_minus_vm1 * one_minus_v
    t2 = -x * (2 * m + 2) * v * one_minus_vm
    t3 = x * x * (vm1 + vm + ((m + 1) * v + 1) * geo)
    den = m * one_minus_v ** (m + 2)
    # T1 - den = m (1-v) [1 - (1-v)^(m+1) - v^(m+1)], exact for small v
    t1_minus_den = m * one_minus_v * (-np.expm1((m + 1) * np.log1p(-v)) - vm1)
    return t1, t2, t3, den, v, t1_minus_den


def _direct_minus_one(m, r):
    _, t2, t3, den, _, t1_minus_den = _direct_parts(m, r)
    return (t1_minus_den + t2 + t3) / den


def kappa_minus_one(m: int, r, policy: EvalPolicy = DEFAULT_POLICY):
    """kappa_mm(r) - 1, vectorised over ``r`` (all entries must be > 0).

    The subtraction is carried out analytically for r beyond the series
    cutoff, so the result keeps full relative accuracy in the exponential
    tail where kappa itself rounds to 1.
    """
    _check_m(m)
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r <= 0) or not np.all(np.isfinite(r)):
        raise ValueError("kappa_minus_one needs finite r > 0")
    out = np.empty_like(r)
    small = r < policy.series_cutoff
    if np.any(small):
        x = r[small] ** 2
        out[small] = x ** (2 - m) * _series_reduced(m, x, policy) - 1.0
    if np.any(~small):
        out[~small] = _direct_minus_one(m, r[~small])
    return out[0] if scalar else out


def kappa(m: int, r, policy: EvalPolicy = DEFAULT_POLICY):
    """Vectorised kappa_mm(r); r = 0 is allowed for m <= 2."""
    _check_m(m)
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r < 0) or not np.all(np.isfinite(r)):
        raise ValueError("r must be finite and nonnegative")
    out = np.empty_like(r)
    zero = r == 0
    if np.any(zero):
        if m >= 3:
            raise KappaDivergence(f"kappa_{m}{m} diverges at zero (~ r^{4 - 2 * m})")
        out[zero] = 0.75 if m == 2 else 0.0
    small = (r < policy.series_cutoff) & ~zero
    if np.any(small):
        x = r[small] ** 2
        out[small] = x ** (2 - m) * _series_reduced(m, x, policy)
    big = r >= policy.series_cutoff
    if np.any(big):
        out[big] = 1.0 + _direct_minus_one(m, r[big])
    return out[0] if scalar else out


def kappa_mm(q: KappaQuery) -> float:
    """kappa_mm at a single query point."""
    return float(kappa(q.m, q.r, q.policy))


def kappa_direct(m: int, r):
    """Closed form evaluated naively in double precision (no series)."""
    _check_m(m)
    r = np.asarray(r, dtype=float)
    t1, t2, t3, den, _, _ = _direct_parts(m, r)
    return (t1 + t2 + t3) / den


def kappa_highprec(m: int, r, dps: int = 50, minus_one: bool = False):
    """Reference value of the closed form at ``dps`` significant digits.

    Working precision is raised with -log10(r) to absorb the cancellation
    between numerator and denominator, and with r**2 when ``minus_one`` asks
    for kappa - 1 in the exponential tail. Returns an ``mpmath.mpf``.
    """
    _check_m(m)
    r = mpmath.mpf(r)
    if r <= 0:
        raise ValueError("kappa_highprec needs r > 0")
    extra = int(max(0.0, -float(mpmath.log10(r))) * 2 * (m + 4)) + 20
    if minus_one:
        extra += int(float(r * r) / math.log(10)) + 10
    with mpmath.workdps(dps + extra):
        x = r * r
        v = mpmath.exp(-x)
        t1 = m * (1 - v ** (m + 1)) * (1 - v)
        t2 = x * (2 * m + 2) * (v ** (m + 1) - v)
        geo = mpmath.fsum(v ** j for j in range(1, m))
        t3 = x * x * (v ** (m + 1) + v ** m + ((m + 1) * v + 1) * geo)
        value = (t1 + t2 + t3) / (m * (-mpmath.expm1(-x)) ** (m + 2))
        if minus_one:
            value -= 1
    with mpmath.workdps(dps):
        return +value


def kappa_decompose(q: KappaQuery) -> KappaDecomposition:
    """Split kappa_mm(r) into its three numerator terms and denominator."""
    if q.r == 0:
        raise ValueError("decomposition undefined at zero (denominator vanishes)")
    t1, t2, t3, den, v, _ = _direct_parts(q.m, np.float64(q.r))
    return KappaDecomposition(float(t1), float(t2), float(t3), float(den), float(v))


def small_r_leading(m: int, r: float) -> float:
    """Leading small-distance behaviour (m+1)/4 * r**(4-2m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if r <= 0:
        raise ValueError("r must be > 0")
    return (m + 1) / 4 * r ** (4 - 2 * m)


def positivity_threshold(m: int) -> float:
    """Radius sqrt(2m+3) beyond which kappa_mm - 1 > 0 is guaranteed."""
    if m < 3:
        raise ValueError("threshold proven only for m >= 3")
    return math.sqrt(2 * m + 3)


def kappa_km_asymptotic(k: int, m: int, regime: str) -> AsymptoticForm:
    """Asymptotic class of kappa_km near zero or infinity."""
    if not 1 <= k:
        raise ValueError("codimension k must be >= 1")
    if k > m:
        raise ValueError(f"invalid codimension k={k} > m={m}")
    if regime == "near_zero":
        if k < m:
            return AsymptoticForm(regime, exponent=-2.0 * k)
        return AsymptoticForm(regime, exponent=4.0 - 2 * m, constant=(m + 1) / 4)
    if regime == "near_infinity":
        return AsymptoticForm(regime, limit=1.0, decay="r^4 exp(-r^2)")
    raise ValueError(f"unknown regime {regime!r}")


@lru_cache(maxsize=None)
def tail_constant(m: int, safety: float = 2.0) -> float:
    """Constant K with |kappa_mm(r) - 1| <= K r^4 exp(-r^2) for r >= 5.

    Fitted as the maximum ratio on a fine grid of [5, 8], times ``safety``.
    For large r the ratio increases towards 1/m, which is folded in so the
    bound also covers r > 8.
    """
    r = np.linspace(5.0, 8.0, 301)
    ratio = np.abs(kappa_minus_one(m, r)) / (r ** 4 * np.exp(-r * r))
    return safety * max(float(ratio.max()), 1.0 / m)
