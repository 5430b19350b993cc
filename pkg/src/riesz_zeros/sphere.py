"""Round-sphere geometry: distances, charts, interaction kernels, uniform samples.

Points are stored as 3-D Cartesian coordinates on a sphere of radius 1/2
(the Fubini-Study CP^1, area pi) or 1 (the unit sphere, area 4 pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DiagonalSingularity
from .quadrature import adaptive_gk

VARIANTS = ("riesz_geodesic", "log_geodesic", "log_chordal", "green")
COUNTINGS = ("ordered", "unordered")


@dataclass(frozen=True)
class SphereConfig:
    radius: float = 0.5
    normalized_measure: bool = True

    def __post_init__(self):
        if self.radius not in (0.5, 1.0):
            raise ValueError(f"radius must be 1/2 or 1, got {self.radius}")

    @property
    def area(self) -> float:
        return 4 * math.pi * self.radius ** 2


HALF = SphereConfig(0.5)
UNIT = SphereConfig(1.0)


@dataclass(frozen=True)
class Kernel:
    """Pair interaction as a function of distance.

    ``riesz_geodesic``: r_g^-s;  ``log_geodesic``: -log r_g;
    ``log_chordal``: -log |p - q|;  ``green``: -(1/2) log r_g + F_g, where
    the constant F_g makes the kernel integrate to zero against the
    normalized area. Leave ``robin_constant`` as None to have it computed
    for the sphere in use.
    """

    variant: str
    s: float | None = None
    robin_constant: float | None = None
    pair_counting: str = "unordered"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown kernel variant {self.variant!r}")
        if self.pair_counting not in COUNTINGS:
            raise ValueError(f"pair_counting must be one of {COUNTINGS}")
        if self.variant == "riesz_geodesic":
            if self.s is None or not 0 < self.s < 2:
                raise ValueError("riesz_geodesic needs 0 < s < 2 on the 2-sphere")
        elif self.s is not None:
            raise ValueError(f"{self.variant} takes no exponent")

    @classmethod
    def riesz(cls, s, pair_counting="unordered"):
        return cls("riesz_geodesic", s=s, pair_counting=pair_counting)

    @classmethod
    def log_chordal(cls, pair_counting="unordered"):
        return cls("log_chordal", pair_counting=pair_counting)

    @classmethod
    def log_geodesic(cls, pair_counting="unordered"):
        return cls("log_geodesic", pair_counting=pair_counting)

    @classmethod
    def green(cls, robin_constant=None, pair_counting="unordered"):
        return cls("green", robin_constant=robin_constant, pair_counting=pair_counting)

    @property
    def multiplicity(self) -> int:
        """How many times each unordered pair is counted."""
        return 2 if self.pair_counting == "ordered" else 1

    def with_counting(self, pair_counting):
        return Kernel(self.variant, self.s, self.robin_constant, pair_counting)

    @property
    def uses_chordal(self) -> bool:
        return self.variant == "log_chordal"

    def robin(self, cfg: SphereConfig) -> float:
        if self.robin_constant is not None:
            return self.robin_constant
        return robin_constant(cfg.radius)

    def from_distance(self, dist, cfg: SphereConfig):
        """Kernel values given geodesic or chordal distances (see ``uses_chordal``)."""
        dist = np.asarray(dist, dtype=float)
        if self.variant == "riesz_geodesic":
            return dist ** (-self.s)
        if self.variant == "green":
            return -0.5 * np.log(dist) + self.robin(cfg)
        return -np.log(dist)

    def derivative(self, dist):
        """d kernel / d distance."""
        dist = np.asarray(dist, dtype=float)
        if self.variant == "riesz_geodesic":
            return -self.s * dist ** (-self.s - 1)
        if self.variant == "green":
            return -0.5 / dist
        return -1.0 / dist


@dataclass
class PointConfig:
    """A finite point configuration on the sphere of the given radius."""

    points: np.ndarray
    radius: float = 0.5
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, 3)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError("points must have shape (n, 3)")
        self.points = pts
        if self.validate and len(pts):
            norms = np.linalg.norm(pts, axis=1)
            if np.max(np.abs(norms - self.radius)) > 1e-12 * self.radius * 8:
                raise ValueError("points do not lie on the sphere")

    @property
    def count(self) -> int:
        return len(self.points)

    def __len__(self):
        return self.count


# ---------------------------------------------------------------------------
# distances

def _angle(p, q):
    """Angle between direction vectors, atan2(|p x q|, p.q)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    cross = np.linalg.norm(np.cross(p, q), axis=-1)
    dot = np.sum(p * q, axis=-1)
    return np.arctan2(cross, dot)


def geodesic_distance(p, q, cfg: SphereConfig = HALF):
    return cfg.radius * _angle(p, q)


def chordal_distance(p, q, cfg: SphereConfig = HALF):
    return np.linalg.norm(np.asarray(p, float) - np.asarray(q, float), axis=-1)


def pairwise_angles(points):
    """(n, n) matrix of angles between configuration points."""
    pts = np.asarray(points, dtype=float)
    dots = pts @ pts.T
    cross = np.linalg.norm(np.cross(pts[:, None, :], pts[None, :, :]), axis=-1)
    return np.arctan2(cross, dots)


# ---------------------------------------------------------------------------
# chart

def stereographic_to_sphere(z, cfg: SphereConfig = HALF):
    """Map chart points to the sphere; 0 goes to the south pole, infinity north.

    Accepts complex scalars or arrays; ``complex('inf')`` / ``np.inf`` / None
    denote the point at infinity. The map pushes the Fubini-Study area
    dA / (pi (1 + |z|^2)^2) to the uniform measure.
    """
    if z is None:
        z = np.inf
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape + (3,))
    at_inf = ~np.isfinite(z)
    big = (np.abs(z) > 1) & ~at_inf
    small = ~big & ~at_inf
    zs = z[small]
    d = 1 + np.abs(zs) ** 2
    out[small] = np.stack([2 * zs.real / d, 2 * zs.imag / d, (np.abs(zs) ** 2 - 1) / d], -1)
    w = 1 / z[big]
    d = 1 + np.abs(w) ** 2
    # z / (1 + |z|^2) = conj(w) / (1 + |w|^2)
    out[big] = np.stack([2 * w.real / d, -2 * w.imag / d, (1 - np.abs(w) ** 2) / d], -1)
    out[at_inf] = (0.0, 0.0, 1.0)
    out *= cfg.radius
    return out[0] if scalar else out


def sphere_to_stereographic(p, cfg: SphereConfig = HALF):
    """Inverse chart; the north pole maps to complex infinity."""
    u = np.asarray(p, dtype=float) / cfg.radius
    w = u[..., 0] + 1j * u[..., 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        # (1 - u_z)(1 + u_z) = |w|^2, so the upper hemisphere avoids 1 - u_z
        z = np.where(u[..., 2] > 0, (1 + u[..., 2]) / np.conj(w), w / (1 - u[..., 2]))
    return np.where((u[..., 2] >= 1.0) | (w == 0) & (u[..., 2] > 0), complex(np.inf, 0), z)


# ---------------------------------------------------------------------------
# kernels

def kernel_value(kernel: Kernel, p, q, cfg: SphereConfig = HALF) -> float:
    """Kernel between two distinct points."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.array_equal(p, q):
        raise DiagonalSingularity("kernel is singular on the diagonal")
    if kernel.uses_chordal:
        dist = chordal_distance(p, q, cfg)
    else:
        dist = geodesic_distance(p, q, cfg)
    return float(kernel.from_distance(dist, cfg))


def _angular_integral(func, tol):
    """int_0^pi func(theta) sin(theta)/2 dtheta, the uniform pair average."""
    value, err, _, ok = adaptive_gk(lambda t: func(t) * np.sin(t) / 2, 0.0, math.pi, tol=tol)
    if not ok:
        raise ArithmeticError("angular quadrature did not converge")
    return value


@lru_cache(maxsize=None)
def robin_constant(radius: float, tol: float = 1e-13) -> float:
    """F_g making -(1/2) log r_g + F_g mean-zero on the sphere of this radius."""
    mean_log = math.log(radius) + _angular_integral(np.log, tol)
    return 0.5 * mean_log


def a1_sphere(kernel: Kernel, cfg: SphereConfig = HALF, tol: float = 1e-11) -> float:
    """Double integral of the kernel against the normalized area measure.

    Rotation invariance reduces it to a single integral over the angle
    theta with density sin(theta)/2.
    """
    a = cfg.radius
    if kernel.variant == "riesz_geodesic":
        s = kernel.s
        if not 0 < s < 2:
            raise ValueError("Riesz kernel not integrable on the 2-sphere for s >= 2")
        # (a theta)^-s sin(theta)/2 with u = theta^(2-s) to remove the endpoint singularity
        e = 2 - s

        def integrand(u):
            t = u ** (1 / e)
            return a ** (-s) * np.sinc(t / math.pi) / (2 * e)

        value, _, _, ok = adaptive_gk(integrand, 0.0, math.pi ** e, tol=tol)
        if not ok:
            raise ArithmeticError("a1 quadrature did not converge")
        return value
    if kernel.variant == "log_chordal":
        return _angular_integral(lambda t: -np.log(2 * a * np.sin(t / 2)), tol)
    if kernel.variant == "log_geodesic":
        return _angular_integral(lambda t: -np.log(a * t), tol)
    robin = kernel.robin(cfg)
    return _angular_integral(lambda t: -0.5 * np.log(a * t) + robin, tol)


def uniform_points(n: int, cfg: SphereConfig = HALF, rng=None) -> PointConfig:
    """n independent uniform points (normalized Gaussian vectors)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = np.random.default_rng(rng)
    g = rng.standard_normal((n, 3))
    pts = cfg.radius * g / np.linalg.norm(g, axis=1, keepdims=True)
    return PointConfig(pts, cfg.radius)


def random_rotation(rng=None) -> np.ndarray:
    """Haar-random element of SO(3)."""
    rng = np.random.default_rng(rng)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
