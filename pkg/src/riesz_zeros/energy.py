"""Pair energies of point configurations and Monte Carlo estimates over random zeros."""
from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .ensembles import RngStream, sample_polynomial, zeros_of
from .errors import DegenerateSample, InfiniteEnergy, RootFinderFailure
from .kappa import kappa
from .sphere import HALF, Kernel, PointConfig, SphereConfig, uniform_points

log = logging.getLogger(__name__)

MAX_FAILURE_RATE = 1e-3
MIN_PAIRS_PER_BIN = 100


def _pair_distances(points: np.ndarray, radius: float, chordal: bool):
    n = len(points)
    i, j = np.triu_indices(n, 1)
    diff = points[i] - points[j]
    if chordal:
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    else:
        cross = np.cross(points[i], points[j])
        d = radius * np.arctan2(np.sqrt(np.einsum("ij,ij->i", cross, cross)),
                                np.einsum("ij,ij->i", points[i], points[j]))
    return i, j, d


def pair_values(config: PointConfig, kernel: Kernel) -> np.ndarray:
    """Kernel value for every unordered pair i < j (row-major order)."""
    cfg = SphereConfig(config.radius)
    i, j, d = _pair_distances(config.points, config.radius, kernel.uses_chordal)
    hit = np.flatnonzero(d == 0)
    if len(hit):
        raise InfiniteEnergy("coincident points under a singular kernel",
                             indices=(int(i[hit[0]]), int(j[hit[0]])))
    return kernel.from_distance(d, cfg)


def energy(config: PointConfig, kernel: Kernel) -> float:
    """Sum of the kernel over pairs, ordered or unordered per the kernel.

    The unordered sum is correctly rounded (fsum), and the ordered sum is
    exactly twice it.
    """
    if config.count < 2:
        return 0.0
    return kernel.multiplicity * math.fsum(pair_values(config, kernel))


# ---------------------------------------------------------------------------
# Monte Carlo

@dataclass
class McStats:
    mean: float
    std_error: float
    trials: int
    seed: int
    failures: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 2:
            raise ValueError("need at least two trials")

    def sigmas_from(self, target: float) -> float:
        if self.std_error == 0:
            return 0.0 if self.mean == target else math.inf
        return (self.mean - target) / self.std_error

    def as_dict(self):
        return asdict(self)


def summarize(samples, seed: int, failures: int = 0, meta=None) -> McStats:
    """Mean and standard error via correctly rounded sums (order independent)."""
    x = np.asarray(samples, dtype=float)
    t = len(x)
    if t < 2:
        raise ValueError("need at least two samples")
    mean = math.fsum(x) / t
    var = math.fsum((x - mean) ** 2) / (t - 1)
    return McStats(mean, math.sqrt(var / t), t, seed, failures, dict(meta or {}))


def _threads(threads):
    if threads in (None, "auto"):
        return 1
    return max(1, int(threads))


def _run_trials(func, trials, threads):
    """func(t) for t in range(trials), results in trial order."""
    nthreads = _threads(threads)
    if nthreads == 1:
        return [func(t) for t in range(trials)]
    with ThreadPoolExecutor(nthreads) as pool:
        return list(pool.map(func, range(trials), chunksize=max(1, trials // (8 * nthreads))))


def zero_trial(n: int, seed: int, trial: int, cfg: SphereConfig = HALF,
               evaluate=None, max_attempts: int = 20, tol: float = 1e-10):
    """Zeros of trial ``trial`` (optionally passed through ``evaluate``).

    Attempt k draws from the stream (seed, trial) in domain k, so a failed
    attempt (root finder, degenerate sample, colliding zeros) is redrawn
    reproducibly. Returns (result, attempts_before_success).
    """
    last = None
    for attempt in range(max_attempts):
        stream = RngStream(seed, trial, domain=attempt)
        try:
            config = zeros_of(sample_polynomial(n, stream), tol=tol, cfg=cfg)
            return (evaluate(config) if evaluate else config), attempt
        except (RootFinderFailure, DegenerateSample, InfiniteEnergy) as exc:
            log.warning("trial %d attempt %d failed: %s", trial, attempt, exc)
            last = exc
    raise RootFinderFailure(f"trial {trial} failed {max_attempts} times",
                            getattr(last, "diagnostics", {}))


def mc_expected_energy(n: int, kernel: Kernel, trials: int, seed: int,
                       cfg: SphereConfig = HALF, threads=None, tol: float = 1e-10,
                       min_trials: int = 100) -> McStats:
    """Mean energy of the zeros of ``trials`` independent degree-n samples.

    Trial t uses the stream (seed, t); failed trials are redrawn and counted
    in ``failures``. More than 0.1% failures aborts with RootFinderFailure.
    """
    if n < 2:
        raise ValueError("N must be >= 2")
    if trials < min_trials:
        raise ValueError(f"need at least {min_trials} trials")

    def one(t):
        return zero_trial(n, seed, t, cfg, lambda c: energy(c, kernel), tol=tol)

    results = _run_trials(one, trials, threads)
    values = [v for v, _ in results]
    failed = [t for t, (_, k) in enumerate(results) if k]
    failures = sum(k for _, k in results)
    if failures > MAX_FAILURE_RATE * trials:
        raise RootFinderFailure(f"failure rate {failures / trials:.2e} above {MAX_FAILURE_RATE}",
                                {"failed_trials": failed[:50], "failures": failures})
    meta = {"N": n, "kernel": kernel.variant, "s": kernel.s, "pair_counting": kernel.pair_counting,
            "radius": cfg.radius, "failed_trials": failed}
    return summarize(values, seed, failures, meta)


def mc_uniform_energy(n: int, kernel: Kernel, trials: int, seed: int,
                      cfg: SphereConfig = HALF) -> McStats:
    """Mean energy of n i.i.d. uniform points (binomial process baseline)."""
    if trials < 2:
        raise ValueError("need at least two trials")
    values = [energy(uniform_points(n, cfg, RngStream(seed, t).generator()), kernel)
              for t in range(trials)]
    meta = {"N": n, "kernel": kernel.variant, "s": kernel.s, "pair_counting": kernel.pair_counting,
            "radius": cfg.radius, "process": "uniform"}
    return summarize(values, seed, 0, meta)


# ---------------------------------------------------------------------------
# pair correlation

@dataclass
class PairCorrHistogram:
    """Rescaled pair-distance histogram; ``density`` is 1 for a Poisson process.

    The rescaled distance is r = sqrt(N) * angle / 2, i.e. sqrt(N) times the
    geodesic distance on the sphere of area pi, at which the mean zero
    intensity per unit r-area is 1/pi.
    """

    bin_edges: np.ndarray
    density: np.ndarray
    stderr: np.ndarray
    counts: np.ndarray
    expected: np.ndarray
    n: int
    trials: int
    process: str = "zeros"

    @property
    def r_mid(self):
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    def kappa11(self):
        return kappa(1, self.r_mid)

    def rows(self):
        k = self.kappa11()
        return [(float(r), float(d), float(kk), float(e))
                for r, d, kk, e in zip(self.r_mid, self.density, k, self.stderr)]


def rescaled_pair_distances(points: np.ndarray, n: int) -> np.ndarray:
    _, _, d = _pair_distances(points / np.linalg.norm(points[0]), 1.0, chordal=False)
    return math.sqrt(n) * d / 2


def poisson_pair_counts(edges, n: int) -> np.ndarray:
    """Expected unordered pair count per r-bin for n independent uniform points."""
    theta = np.minimum(2 * np.asarray(edges, float) / math.sqrt(n), math.pi)
    return n * (n - 1) / 2 * -np.diff(np.cos(theta)) / 2


def empirical_pair_correlation(n: int, trials: int, bins: int, r_max: float, seed: int,
                               control: bool = False, cfg: SphereConfig = HALF,
                               threads=None) -> PairCorrHistogram:
    """Pair correlation of zeros (or of uniform points when ``control``).

    Each trial gives a per-bin density; the histogram reports the mean over
    trials and its standard error.
    """
    if n < 50:
        raise ValueError("pair correlation needs N >= 50 for the scaling regime")
    if not 0 < r_max <= 5:
        raise ValueError("r_max must lie in (0, 5]")
    if trials < 2 or bins < 1:
        raise ValueError("need trials >= 2 and bins >= 1")
    edges = np.linspace(0.0, r_max, bins + 1)
    expected = poisson_pair_counts(edges, n)

    def one(t):
        if control:
            pts = uniform_points(n, cfg, RngStream(seed, t).generator()).points
        else:
            pts = zero_trial(n, seed, t, cfg)[0].points
        c, _ = np.histogram(rescaled_pair_distances(pts, n), bins=edges)
        return c

    counts = np.array(_run_trials(one, trials, threads))
    per_trial = counts / expected
    density = per_trial.mean(axis=0)
    stderr = per_trial.std(axis=0, ddof=1) / math.sqrt(trials)
    total = counts.sum(axis=0)
    if np.any(total < MIN_PAIRS_PER_BIN):
        warnings.warn(f"fewer than {MIN_PAIRS_PER_BIN} pairs in some bins; widen the bins",
                      RuntimeWarning, stacklevel=2)
    return PairCorrHistogram(edges, density, stderr, total, expected * trials, n, trials,
                             "uniform" if control else "zeros")
