"""Local minimization of pair energies on the sphere with random restarts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as sp_minimize

from .energy import energy
from .ensembles import RngStream, sample_polynomial, zeros_of
from .errors import InfiniteEnergy
from .predictions import c_n_from_energy
from .sphere import Kernel, PointConfig, SphereConfig, uniform_points

INITIALS = ("random_uniform", "spiral", "from_zeros")
# stream domain reserved for optimizer restarts
RESTART_DOMAIN = 7


@dataclass(frozen=True)
class OptimizerConfig:
    """Restart and stopping policy.

    Restart r < ``restarts`` starts from ``initial``; one extra spiral start
    is added when ``add_spiral`` is set. ``gradient_tolerance`` defaults to
    1e-8 n. Steps come from L-BFGS with a Wolfe line search, so accepted
    iterates never increase the energy. L-BFGS stalls once energy
    differences reach round-off, so the best restart is finished with up to
    ``polish_steps`` Newton steps on the gradient.
    """

    restarts: int = 8
    max_iterations: int = 3000
    gradient_tolerance: float | None = None
    initial: str = "random_uniform"
    add_spiral: bool = True
    memory: int = 20
    polish_steps: int = 4

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.initial not in INITIALS:
            raise ValueError(f"initial must be one of {INITIALS}")
        if self.gradient_tolerance is not None and self.gradient_tolerance <= 0:
            raise ValueError("gradient_tolerance must be positive")

    def tolerance(self, n: int) -> float:
        return self.gradient_tolerance if self.gradient_tolerance is not None else 1e-8 * n


@dataclass
class MinimizeResult:
    config: PointConfig
    energy: float
    gradient_norm: float
    iterations: int
    restart_index: int
    converged: bool
    kernel: Kernel
    history: list = field(default_factory=list, repr=False)
    restart_energies: list = field(default_factory=list)

    @property
    def radius(self) -> float:
        return self.config.radius

    def summary(self) -> dict:
        return {
            "n": self.config.count,
            "energy": self.energy,
            "gradient_norm": self.gradient_norm,
            "iterations": self.iterations,
            "restart_index": self.restart_index,
            "converged": self.converged,
            "kernel": self.kernel.variant,
            "s": self.kernel.s,
            "pair_counting": self.kernel.pair_counting,
            "radius": self.radius,
            "restart_energies": self.restart_energies,
        }


def _energy_and_gradient(points: np.ndarray, kernel: Kernel, radius: float):
    """Energy and Riemannian gradient (n, 3) of a configuration."""
    n = len(points)
    cfg = SphereConfig(radius)
    i, j = np.triu_indices(n, 1)
    p, q = points[i], points[j]
    if kernel.uses_chordal:
        diff = p - q
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        if np.any(d == 0):
            k = int(np.flatnonzero(d == 0)[0])
            raise InfiniteEnergy("coincident points", (int(i[k]), int(j[k])))
        # grad_p d = (p - q)/d, grad_q d = -(p - q)/d
        gp = diff / d[:, None]
        gq = -gp
    else:
        a2 = radius * radius
        cross = np.cross(p, q)
        sin_t = np.sqrt(np.einsum("ij,ij->i", cross, cross)) / a2
        cos_t = np.einsum("ij,ij->i", p, q) / a2
        theta = np.arctan2(sin_t, cos_t)
        d = radius * theta
        if np.any(d == 0):
            k = int(np.flatnonzero(d == 0)[0])
            raise InfiniteEnergy("coincident points", (int(i[k]), int(j[k])))
        # tangent derivative of r_g = a*theta: -(q - cos(theta) p) / (a sin(theta));
        # zero at antipodes, where every direction is symmetric
        safe = sin_t > 1e-15
        inv = np.where(safe, 1.0 / (radius * np.where(safe, sin_t, 1.0)), 0.0)
        gp = -(q - cos_t[:, None] * p) * inv[:, None]
        gq = -(p - cos_t[:, None] * q) * inv[:, None]
    vals = kernel.from_distance(d, cfg)
    dk = kernel.derivative(d)
    grad = np.zeros_like(points)
    np.add.at(grad, i, dk[:, None] * gp)
    np.add.at(grad, j, dk[:, None] * gq)
    mult = kernel.multiplicity
    grad *= mult
    # project onto tangent planes
    grad -= (np.einsum("ij,ij->i", grad, points) / (radius * radius))[:, None] * points
    return mult * math.fsum(vals), grad


def energy_gradient(config: PointConfig, kernel: Kernel) -> np.ndarray:
    """Riemannian gradient of the energy, one tangent vector per point."""
    return _energy_and_gradient(config.points, kernel, config.radius)[1]


def spiral_points(n: int, cfg: SphereConfig) -> PointConfig:
    """Generalized spiral configuration (heights equally spaced, longitudes
    advanced by 3.6 / sqrt(n (1 - h^2)))."""
    if n == 1:
        return PointConfig(np.array([[0.0, 0.0, -cfg.radius]]), cfg.radius)
    h = -1 + 2 * np.arange(n) / (n - 1)
    phi = np.zeros(n)
    for k in range(1, n - 1):
        phi[k] = (phi[k - 1] + 3.6 / math.sqrt(n * (1 - h[k] ** 2))) % (2 * math.pi)
    rho = np.sqrt(np.clip(1 - h ** 2, 0, None))
    pts = cfg.radius * np.stack([rho * np.cos(phi), rho * np.sin(phi), h], 1)
    return PointConfig(pts, cfg.radius)


def initial_config(n: int, kind: str, cfg: SphereConfig, stream: RngStream) -> PointConfig:
    if kind == "random_uniform":
        return uniform_points(n, cfg, stream.generator())
    if kind == "spiral":
        return spiral_points(n, cfg)
    if kind == "from_zeros":
        return zeros_of(sample_polynomial(n, stream), cfg=cfg)
    raise ValueError(f"unknown initial {kind!r}")


def _objective(n: int, kernel: Kernel, a: float):
    def fun(x):
        xs = x.reshape(n, 3)
        norms = np.linalg.norm(xs, axis=1, keepdims=True)
        e, g = _energy_and_gradient(a * xs / norms, kernel, a)
        # chain rule through the normalization; g is already tangent
        return e, (g * (a / norms)).ravel()
    return fun


def _result(x, kernel, a, iterations, restart_index, tol, history):
    xs = x.reshape(-1, 3)
    pts = a * xs / np.linalg.norm(xs, axis=1, keepdims=True)
    e, g = _energy_and_gradient(pts, kernel, a)
    gnorm = float(np.linalg.norm(g))
    return MinimizeResult(PointConfig(pts, a), e, gnorm, iterations, restart_index,
                          gnorm <= tol, kernel, history)


def local_minimize(start: PointConfig, kernel: Kernel, opt: OptimizerConfig = OptimizerConfig(),
                   restart_index: int = 0) -> MinimizeResult:
    """L-BFGS on the ambient parametrization p = a x / |x| from a given start."""
    a = start.radius
    n = start.count
    fun = _objective(n, kernel, a)
    history = []
    tol = opt.tolerance(n)
    res = sp_minimize(fun, (start.points / a).ravel(), jac=True, method="L-BFGS-B",
                      callback=lambda xk: history.append(fun(xk)[0]),
                      options={"maxiter": opt.max_iterations, "maxcor": opt.memory,
                               "gtol": tol * 1e-3, "ftol": 0.0, "maxls": 50})
    return _result(res.x, kernel, a, int(res.nit), restart_index, tol, history)


def newton_polish(result: MinimizeResult, opt: OptimizerConfig = OptimizerConfig(),
                  step: float = 1e-5) -> MinimizeResult:
    """Newton steps with a finite-difference Hessian of the analytic gradient.

    Rotations and radial rescalings make the Hessian singular, so the step
    uses a pseudo-inverse. A step is kept only if it lowers the gradient
    norm without raising the energy beyond round-off.
    """
    a = result.radius
    n = result.config.count
    fun = _objective(n, result.kernel, a)
    tol = opt.tolerance(n)
    x = (result.config.points / a).ravel()
    best = result
    for _ in range(opt.polish_steps):
        if best.converged:
            break
        _, g = fun(x)
        dim = len(x)
        hess = np.empty((dim, dim))
        for k in range(dim):
            e = np.zeros(dim)
            e[k] = step
            hess[:, k] = (fun(x + e)[1] - fun(x - e)[1]) / (2 * step)
        hess = 0.5 * (hess + hess.T)
        x_new = x - np.linalg.pinv(hess, rcond=1e-9, hermitian=True) @ g
        cand = _result(x_new, result.kernel, a, best.iterations + 1, best.restart_index, tol,
                       best.history + [None])
        if cand.gradient_norm >= best.gradient_norm or \
                cand.energy > best.energy + 1e-13 * max(1.0, abs(best.energy)):
            break
        cand.history[-1] = cand.energy
        best, x = cand, x_new
    return best


def minimize_energy(n: int, kernel: Kernel, opt: OptimizerConfig = OptimizerConfig(),
                    seed: int = 0, cfg: SphereConfig = SphereConfig(0.5)) -> MinimizeResult:
    """Best local minimum over the configured restarts.

    Restart r draws its start from the stream (seed, r) in a dedicated
    domain, so each restart is reproducible on its own.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    starts = [(r, opt.initial) for r in range(opt.restarts)]
    if opt.add_spiral and opt.initial != "spiral":
        starts.append((opt.restarts, "spiral"))
    results = []
    for r, kind in starts:
        stream = RngStream(seed, r, domain=RESTART_DOMAIN)
        results.append(local_minimize(initial_config(n, kind, cfg, stream), kernel, opt, r))
    # prefer converged runs, then lower energy
    best = min(results, key=lambda res: (not res.converged, res.energy))
    if not best.converged:
        best = newton_polish(best, opt)
    best.restart_energies = [res.energy for res in results]
    return best


def c_n_extract(result: MinimizeResult) -> float:
    """C_N of a minimized log-chordal energy on the unit sphere (unordered pairs)."""
    if result.kernel.variant != "log_chordal" or result.radius != 1.0:
        raise ValueError("C_N needs a log_chordal minimization on the unit sphere")
    unordered = result.energy / result.kernel.multiplicity
    return c_n_from_energy(unordered, result.config.count)


def c_n_of_config(config: PointConfig) -> float:
    """C_N of an arbitrary configuration on the unit sphere."""
    if config.radius != 1.0:
        raise ValueError("C_N is defined on the unit sphere")
    return c_n_from_energy(energy(config, Kernel.log_chordal()), config.count)
