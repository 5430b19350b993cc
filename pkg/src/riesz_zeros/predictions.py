"""Closed-form and asymptotic energy predictors.

All expansions are in the degree N. Expected energies of random zeros use
ordered pair sums unless noted; the sphere formulas use unordered pairs of
the log-chordal kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .sphere import Kernel, SphereConfig, a1_sphere

LOG_4_OVER_E = math.log(4) - 1


@dataclass(frozen=True)
class ExpansionPrediction:
    """sum coefficient * N^power, plus an optional coefficient * N^power * log sqrt(N)."""

    terms: tuple
    log_term: tuple | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        powers = [p for _, p, _ in self.terms]
        if any(b >= a for a, b in zip(powers, powers[1:])):
            raise ValueError(f"powers must be strictly decreasing, got {powers}")

    @property
    def includes_log_term(self) -> bool:
        return self.log_term is not None

    def evaluate(self, n: float) -> float:
        if n == 0:
            return 0.0
        total = math.fsum(c * n ** p for _, p, c in self.terms)
        if self.log_term is not None:
            coeff, power = self.log_term
            total += coeff * n ** power * math.log(math.sqrt(n))
        return total

    def as_dict(self):
        return {
            "terms": [{"label": l, "power": p, "coefficient": c} for l, p, c in self.terms],
            "log_term": None if self.log_term is None else
            {"coefficient": self.log_term[0], "power": self.log_term[1]},
        }


def predict_sphere_log(n: float, radius: float) -> float:
    """Expected unordered log-chordal energy of N random SU(2) zeros."""
    if radius == 0.5:
        return n * n / 4 - n / 4 * _log(n) - n / 4
    if radius == 1.0:
        return -LOG_4_OVER_E / 4 * n * n - n / 4 * _log(n) + LOG_4_OVER_E / 4 * n
    raise ValueError("radius must be 1/2 or 1")


def _log(n):
    return math.log(n) if n > 0 else 0.0


def sphere_log_expansion(radius: float) -> ExpansionPrediction:
    if radius == 0.5:
        terms = (("a1", 2.0, 0.25), ("linear", 1.0, -0.25))
    elif radius == 1.0:
        terms = (("a1", 2.0, -LOG_4_OVER_E / 4), ("linear", 1.0, LOG_4_OVER_E / 4))
    else:
        raise ValueError("radius must be 1/2 or 1")
    # -(N/4) log N = -(1/2) N log sqrt N
    return ExpansionPrediction(terms, (-0.5, 1.0), {"kernel": "log_chordal", "pair_counting": "unordered"})


def expansion_cutoff(m: int, s: float) -> int:
    """Number p such that a_j N^(2m-j) is kept for j < p.

    p is the smallest integer with 2m - p <= m + s/2, so every kept power
    stays strictly above the c_m(s) power even when m - s/2 is an integer.
    """
    return math.ceil(m - s / 2)


def _a_terms(a_coeffs, top_power, m, s, weights=None, scale=1.0):
    if not a_coeffs:
        raise ValueError("a_coeffs must contain at least a_1")
    terms = [("a1", float(top_power), scale * a_coeffs[0])]
    p = expansion_cutoff(m, s)
    for j in range(2, p):
        if j - 1 < len(a_coeffs):
            w = 1.0 if weights is None else weights[j]
            terms.append((f"a{j}", float(top_power - j), scale * w * a_coeffs[j - 1]))
    return terms


def predict_theorem_dis(m: int, s: float, a_coeffs, c_value: float) -> ExpansionPrediction:
    """Expected energy of zeros of m sections in dimension m.

    0 < s < min(2m, 4): a_1 N^2m + sum_j a_j N^(2m-j) + c_m(s) N^(m+s/2).
    s = 0: the a-terms, then (a_m - c_m) N^m and -N^m log sqrt N.
    Missing a_j are taken as zero.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if s == 0:
        a = list(a_coeffs)
        terms = [("a1", 2.0 * m, a[0])]
        for j in range(2, m):
            if j - 1 < len(a):
                terms.append((f"a{j}", float(2 * m - j), a[j - 1]))
        am = a[m - 1] if (m >= 2 and m - 1 < len(a)) else 0.0
        terms.append(("a_m - c_m" if m >= 2 else "-c_m", float(m), am - c_value))
        return ExpansionPrediction(tuple(terms), (-1.0, float(m)), {"m": m, "s": 0})
    if not 0 < s < min(2 * m, 4):
        raise ValueError(f"s must lie in (0, {min(2 * m, 4)}) for m = {m}")
    terms = _a_terms(list(a_coeffs), 2 * m, m, s)
    terms.append(("c_m(s)", m + s / 2, c_value))
    return ExpansionPrediction(tuple(terms), None, {"m": m, "s": s})


def con_prefactor(m: int, k: int) -> float:
    return (math.pi ** (m - k) / math.factorial(m - k)) ** 2


def predict_theorem_con(m: int, k: int, s: float, a_coeffs, w_coeffs=None,
                        d_value: float = 0.0) -> ExpansionPrediction:
    """Expected continuous energy of the codimension-(m-k) zero variety.

    (pi^(m-k)/(m-k)!)^2 [a_1 N^2k + sum_j w_j a_j N^(2k-j)] + d N^(2k-m+s/2)
    for 0 < s < 2(m-k). ``w_coeffs`` maps j to w_j; w_2 is fixed to k/m.
    """
    if not 1 <= k < m:
        raise ValueError("need 1 <= k < m")
    if not 0 < s < 2 * (m - k):
        raise ValueError(f"s must lie in (0, {2 * (m - k)})")
    weights = dict(w_coeffs or {})
    w2 = k / m
    if 2 in weights and not math.isclose(weights[2], w2, rel_tol=1e-15):
        raise ValueError(f"w_2 is fixed to k/m = {w2}")
    weights[2] = w2
    p = expansion_cutoff(m, s)
    for j in range(3, p):
        if j - 1 < len(a_coeffs) and j not in weights:
            raise ValueError(f"missing weight w_{j}")
    pref = con_prefactor(m, k)
    terms = _a_terms(list(a_coeffs), 2 * k, m, s, weights, pref)
    terms.append(("d_m(k,s)", 2 * k - m + s / 2, d_value))
    return ExpansionPrediction(tuple(terms), None, {"m": m, "k": k, "s": s, "prefactor": pref})


# ---------------------------------------------------------------------------
# minimal-energy bounds on the 2-sphere

@dataclass(frozen=True)
class Bounds:
    lower: float | None
    upper: float | None
    variant: str


def cn_upper_limit() -> float:
    """Upper limit for limsup C_N on the unit sphere."""
    return -0.25 * math.log(math.pi * math.sqrt(3) / 2) - math.pi / (8 * math.sqrt(3))


def cn_lower_limit(a: float, b: float) -> float:
    return -0.25 * math.log(math.pi / 2 * (1 - math.exp(-a)) ** b)


def log_energy_lower_bound(n: float) -> float:
    """Lower bound for the unordered Green/log energy on the unit sphere (up to o(N))."""
    return -LOG_4_OVER_E / 4 * n * n - n * _log(n) / 4 - 11 / (6 * math.pi) * n


def log_energy_from_cn(n: float, c_n: float) -> float:
    return -LOG_4_OVER_E / 4 * n * n - n / 4 * _log(n) + c_n * n


def c_n_from_energy(energy: float, n: float) -> float:
    """Inverse of ``log_energy_from_cn`` in its last argument."""
    return (energy + LOG_4_OVER_E / 4 * n * n + n / 4 * _log(n)) / n


def riesz_leading_constant(s: float, radius: float = 1.0) -> float:
    """V_2(s): the double integral of the geodesic Riesz kernel."""
    return a1_sphere(Kernel.riesz(s), SphereConfig(radius))


def minimal_energy_bounds(n: float, variant: str, s: float | None = None, *, c1=None, c2=None,
                          c3=None, c4=None, v=None, gamma=None, dim: int = 2,
                          energy: float | None = None, a=None, b=None) -> Bounds:
    """Bound families for minimal N-point energies.

    ``riesz``: s < dim gives (V/2 N^2 - C3 N^(1+s/dim), V/2 N^2 - C4 N^(1+s/dim)),
    with V computed when dim = 2 and not supplied; s = dim gives gamma N^2 log N
    on both sides (``gamma`` defaults to 1/8 on the 2-sphere); s > dim gives
    (C1, C2) N^(1+s/dim).
    ``log_lower``: the Green/log lower bound.
    ``cn``: C_N for a measured minimal log energy (``energy``), returned as
    both bounds, with the asymptotic constants as a separate variant ``cn_limits``
    (upper; lower needs ``a`` and ``b``).
    """
    if variant == "log_lower":
        return Bounds(log_energy_lower_bound(n), None, variant)
    if variant == "cn_limits":
        lower = cn_lower_limit(a, b) if a is not None and b is not None else None
        return Bounds(lower, cn_upper_limit(), variant)
    if variant == "cn":
        if energy is None:
            raise ValueError("cn needs a measured energy")
        c = c_n_from_energy(energy, n)
        return Bounds(c, c, variant)
    if variant != "riesz":
        raise ValueError(f"unknown bound variant {variant!r}")
    if s is None or s <= 0:
        raise ValueError("riesz bounds need s > 0")
    power = 1 + s / dim
    if s < dim:
        if v is None:
            if dim != 2:
                raise ValueError("supply V_m(s) for dim != 2")
            v = riesz_leading_constant(s)
        lo = 0.5 * v * n * n - c3 * n ** power if c3 is not None else None
        hi = 0.5 * v * n * n - c4 * n ** power if c4 is not None else None
        return Bounds(lo, hi, variant)
    if s == dim:
        g = gamma if gamma is not None else (0.125 if dim == 2 else None)
        if g is None:
            raise ValueError("supply gamma_m for dim != 2")
        val = g * n * n * _log(n)
        return Bounds(val, val, variant)
    lo = c1 * n ** power if c1 is not None else None
    hi = c2 * n ** power if c2 is not None else None
    return Bounds(lo, hi, variant)
