"""Gaussian SU(2) random polynomials and their zero sets on the sphere.

A degree-N sample has coefficients c_j = a_j sqrt(binom(N, j)) with a_j
i.i.d. standard complex Gaussians. Zeros are computed in the affine chart
and pushed to the sphere stereographically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import comb, gammaln

from .errors import DegenerateSample, RootFinderFailure
from .sphere import HALF, PointConfig, SphereConfig, stereographic_to_sphere

COMPANION_MAX_DEGREE = 60
DEFLATION_RATIO = 1e-12
UNDERFLOW = 1e-290


@dataclass(frozen=True)
class RngStream:
    """Independent, reproducible random stream keyed by (master_seed, stream_index).

    The generator is PCG64 seeded by ``SeedSequence(master_seed,
    spawn_key=(domain, stream_index))``. ``domain`` separates the streams
    used by different experiments driven from one master seed.
    """

    master_seed: int
    stream_index: int = 0
    domain: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        if self.stream_index < 0 or self.domain < 0:
            raise ValueError("stream_index and domain must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(self.domain, self.stream_index))
        return np.random.Generator(np.random.PCG64(ss))

    def with_index(self, stream_index: int) -> "RngStream":
        return RngStream(self.master_seed, stream_index, self.domain)


@dataclass(frozen=True)
class PolySample:
    """Polynomial sum_j coeffs[j] z^j (ascending order)."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        object.__setattr__(self, "coeffs", c)

    def scaled(self, lam: complex) -> "PolySample":
        return PolySample(self.degree, lam * self.coeffs)

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def binomial_profile(n: int) -> np.ndarray:
    """sqrt(binom(n, j)) for j = 0..n."""
    return np.sqrt(comb(n, np.arange(n + 1)))


def sample_polynomial(n: int, rng: RngStream | np.random.Generator) -> PolySample:
    if n < 1:
        raise ValueError("degree must be >= 1")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    a = (gen.standard_normal(n + 1) + 1j * gen.standard_normal(n + 1)) / math.sqrt(2)
    return PolySample(n, a * binomial_profile(n))


# ---------------------------------------------------------------------------
# root finding

@numba.njit(cache=True, nogil=True)
def _horner_chart(c, z):
    """p(z) and the componentwise scale sum |c_j||z|^j, evaluated stably.

    For |z| > 1 both are computed for the reversed polynomial in w = 1/z,
    i.e. divided by z^n; the ratio (backward error) is unaffected.
    """
    n = len(c) - 1
    p = 0j
    scale = 0.0
    if abs(z) > 1.0:
        w = 1.0 / z
        aw = abs(w)
        for j in range(n + 1):
            p = p * w + c[j]
            scale = scale * aw + abs(c[j])
    else:
        az = abs(z)
        for j in range(n, -1, -1):
            p = p * z + c[j]
            scale = scale * az + abs(c[j])
    return p, scale


@numba.njit(cache=True, nogil=True)
def _backward_errors(c, z):
    out = np.empty(len(z))
    for i in range(len(z)):
        p, scale = _horner_chart(c, z[i])
        out[i] = abs(p) / scale if scale > 0 else 0.0
    return out


@numba.njit(cache=True, nogil=True)
def _newton_polygon_init(c, phase):
    """Initial guesses from the upper convex hull of (j, log|c_j|).

    Each hull edge of width k contributes k points on a circle whose radius
    is the geometric slope of that edge; angles are spread uniformly with a
    per-edge offset to break symmetry.
    """
    n = len(c) - 1
    a = np.empty(n + 1)
    for j in range(n + 1):
        a[j] = math.log(abs(c[j]) + 1e-300)
    hull = np.empty(n + 1, np.int64)
    h = 0
    for j in range(n + 1):
        while h >= 2:
            i0 = hull[h - 2]
            i1 = hull[h - 1]
            if (a[i1] - a[i0]) * (j - i0) <= (a[j] - a[i0]) * (i1 - i0):
                h -= 1
            else:
                break
        hull[h] = j
        h += 1
    z = np.empty(n, np.complex128)
    pos = 0
    for e in range(h - 1):
        i0 = hull[e]
        i1 = hull[e + 1]
        k = i1 - i0
        rad = math.exp((a[i0] - a[i1]) / k)
        for t in range(k):
            ang = 2 * math.pi * t / k + 2 * math.pi * i1 / n + phase
            z[pos] = rad * complex(math.cos(ang), math.sin(ang))
            pos += 1
    return z


@numba.njit(cache=True, nogil=True)
def _aberth(c, z, max_iter, tol):
    """Gauss-Seidel Aberth-Ehrlich iteration in place; returns iterations or -1."""
    n = len(c) - 1
    done = np.zeros(n, np.bool_)
    for it in range(max_iter):
        active = 0
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p = 0j
            dp = 0j
            if abs(zi) > 1.0:
                # reversed polynomial q(w) = w^n p(1/w); p'/p = w (n - w q'/q)
                w = 1.0 / zi
                for j in range(n + 1):
                    dp = dp * w + p
                    p = p * w + c[j]
                den = w * (n * p - w * dp)
            else:
                for j in range(n, -1, -1):
                    dp = dp * zi + p
                    p = p * zi + c[j]
                den = dp
            if p == 0:
                done[i] = True
                continue
            ratio = p / den
            s = 0j
            for j in range(n):
                if j != i:
                    s += 1.0 / (zi - z[j])
            step = ratio / (1.0 - ratio * s)
            z[i] = zi - step
            if abs(step) <= tol * abs(z[i]):
                done[i] = True
            else:
                active += 1
        if active == 0:
            return it + 1
    return -1


def _log_binomials(n):
    j = np.arange(n + 1)
    return gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)


def _companion_roots(c):
    # numpy builds the companion matrix and LAPACK balances it before eigvals
    return np.roots(c[::-1]).astype(complex)


@dataclass
class RootReport:
    roots: np.ndarray          # finite chart roots
    at_infinity: int
    method: str
    iterations: int
    max_backward_error: float


def chart_roots(coeffs, tol: float = 1e-10, max_iter: int = 200, method: str = "auto") -> RootReport:
    """Roots of sum_j c_j z^j with deflation at 0 and at infinity.

    ``method`` is ``"companion"``, ``"aberth"`` or ``"auto"`` (companion up
    to degree 60, Aberth above). Aberth failures fall back to the companion
    matrix before a RootFinderFailure is raised. ``tol`` bounds the
    componentwise backward error |p(z)| / sum |c_j||z|^j of every root.

    Leading coefficients are dropped (roots sent to infinity) while
    |c_k| / sqrt(binom(n, k)) < 1e-12 max_j |c_j| / sqrt(binom(n, j)). The
    binomial weights make the test invariant under rotations of the
    sphere; without them the middle coefficients of a typical sample
    (of size sqrt(binom(n, n/2))) would swamp a perfectly normal c_n.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    mags = np.abs(c)
    top = mags.max() if len(c) else 0.0
    if not np.isfinite(top) or top < UNDERFLOW:
        raise DegenerateSample("all coefficients vanish")
    # vanishing leading coefficients: roots at infinity
    weight = np.exp(0.5 * _log_binomials(n))
    normed = mags / weight
    hi = n
    while normed[hi] < DEFLATION_RATIO * normed.max():
        hi -= 1
    # exactly vanishing constant terms: roots at the origin
    lo = 0
    while c[lo] == 0:
        lo += 1
    core = c[lo:hi + 1]
    k = len(core) - 1
    zero_roots = np.zeros(lo, dtype=complex)
    if k == 0:
        return RootReport(zero_roots, n - hi, "trivial", 0, 0.0)
    if method == "auto":
        method = "companion" if k <= COMPANION_MAX_DEGREE else "aberth"
    if method not in ("companion", "aberth"):
        raise ValueError(f"unknown method {method!r}")
    # rescale to unit max to keep Horner away from overflow
    core = core / np.abs(core).max()
    iterations = 0
    used = method
    if method == "aberth":
        z = _newton_polygon_init(core, 0.3)
        iterations = _aberth(core, z, max_iter, 1e-14)
        if iterations < 0:
            used = "companion-fallback"
            z = _companion_roots(core)
    else:
        z = _companion_roots(core)
    berr = _backward_errors(core, z)
    worst = float(berr.max())
    if not np.all(np.isfinite(z)) or worst > tol:
        raise RootFinderFailure(
            "root residuals exceed tolerance",
            {"method": used, "iterations": iterations, "max_backward_error": worst,
             "degree": k, "tol": tol},
        )
    return RootReport(np.concatenate([zero_roots, z]), n - hi, used, iterations, worst)


def zeros_of(poly: PolySample | np.ndarray, tol: float = 1e-10,
             cfg: SphereConfig = HALF, method: str = "auto") -> PointConfig:
    """The N zeros of a degree-N polynomial as points on the sphere.

    Roots lost to a vanishing leading coefficient sit at the north pole.
    """
    coeffs = poly.coeffs if isinstance(poly, PolySample) else np.asarray(poly, complex)
    rep = chart_roots(coeffs, tol=tol, method=method)
    pts = stereographic_to_sphere(rep.roots, cfg).reshape(-1, 3)
    if rep.at_infinity:
        north = np.tile([0.0, 0.0, cfg.radius], (rep.at_infinity, 1))
        pts = np.concatenate([pts, north])
    return PointConfig(pts, cfg.radius)


def sample_zeros(n: int, stream: RngStream, tol: float = 1e-10,
                 cfg: SphereConfig = HALF) -> PointConfig:
    return zeros_of(sample_polynomial(n, stream), tol=tol, cfg=cfg)


def match_distance(a: PointConfig, b: PointConfig) -> float:
    """Largest chordal distance under the optimal pairing of two configurations."""
    if a.count != b.count:
        return math.inf
    if a.count == 0:
        return 0.0
    d = np.linalg.norm(a.points[:, None, :] - b.points[None, :, :], axis=-1)
    i, j = linear_sum_assignment(d)
    return float(d[i, j].max())


def scaling_invariance_check(poly: PolySample, lam: complex, tol: float = 1e-8) -> bool:
    """Zeros of lam * poly coincide with those of poly as point sets."""
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    a = zeros_of(poly)
    b = zeros_of(poly.scaled(lam))
    return match_distance(a, b) <= tol


def bergman_cpm(n: int, m: int) -> int:
    """Diagonal value (N+m)!/N! of the Fubini-Study Bergman kernel on CP^m (exact)."""
    if n < 1 or m < 1:
        raise ValueError("N and m must be >= 1")
    return math.perm(n + m, m)


def log_bergman_cpm(n: int, m: int) -> float:
    """log((N+m)!/N!), summed directly for moderate m to avoid lgamma cancellation."""
    if n < 1 or m < 1:
        raise ValueError("N and m must be >= 1")
    if m <= 10_000:
        return math.fsum(math.log(n + k) for k in range(1, m + 1))
    return math.lgamma(n + m + 1) - math.lgamma(n + 1)


# ---------------------------------------------------------------------------
# Bargmann-Fock scaling limit

def bargmann_fock_terms(radius: float, tol: float = 1e-12) -> int:
    """Smallest J with exp(-J log(J / (e R^2))) <= tol and J > e R^2."""
    if radius <= 0 or tol <= 0:
        raise ValueError("radius and tol must be positive")
    j = max(2, int(math.e * radius ** 2) + 1)
    while -j * math.log(j / (math.e * radius ** 2)) > math.log(tol):
        j += 1
    return j


def sample_bargmann_fock(radius: float, rng: RngStream | np.random.Generator,
                         tol: float = 1e-12) -> np.ndarray:
    """Zeros in |z| <= radius of the truncated Gaussian entire function
    sum_j a_j z^j / sqrt(j!)."""
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    j = bargmann_fock_terms(radius, tol)
    a = (gen.standard_normal(j) + 1j * gen.standard_normal(j)) / math.sqrt(2)
    logfact = np.array([math.lgamma(k + 1) for k in range(j)])
    coeffs = a * np.exp(-0.5 * logfact)
    rep = chart_roots(coeffs, tol=1e-8)
    z = rep.roots
    return z[np.abs(z) <= radius]
