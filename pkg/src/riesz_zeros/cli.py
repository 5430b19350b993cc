"""Command-line entry point: ``riesz-zeros <subcommand> ...``.

Every run that writes files also writes ``manifest.json`` recording the
command line, master seed, version, a digest of the resolved configuration
and sha256 digests of the outputs. Exit codes: 0 success, 1 computational
failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import os
import sys
import tempfile
import time
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .coeffs import (CoeffRequest, c_m_log, c_m_s, coeff_scan, normalization_identity,
                     residue_at_4, s_star)
from .energy import empirical_pair_correlation, mc_expected_energy, mc_uniform_energy
from .ensembles import RngStream, sample_polynomial, chart_roots, stereographic_to_sphere
from .errors import DegenerateSample, NoCrossing, PrecisionFailure, RootFinderFailure
from .kappa import kappa, kappa_decompose, kappa_minus_one, KappaQuery
from .minimize import OptimizerConfig, c_n_extract, minimize_energy
from .predictions import predict_sphere_log
from .sphere import Kernel, SphereConfig

log = logging.getLogger("riesz_zeros")

EXPERIMENTS = ("kappa-figures", "coeff-scan", "identity-table", "sphere-energy", "paircorr",
               "minimize-table")
THREADS_ENV = "RIESZ_ZEROS_THREADS"
DEFAULT_SEED = 20240611


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# seeds and output

def derive_seed(master_seed: int, name: str) -> int:
    """64-bit child seed for a named experiment: first word of
    SeedSequence(master_seed, spawn_key=(crc32(name),))."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(zlib.crc32(name.encode()),))
    return int(ss.generate_state(1, np.uint64)[0])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def render_json(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def atomic_write(path: Path, text: str) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class Table:
    """Grid output; rendered as CSV or as a JSON list of records."""
    columns: list
    rows: list

    def render(self, fmt):
        if fmt == "json":
            return render_json([dict(zip(self.columns, r)) for r in self.rows])
        return render_csv(self.columns, self.rows)


@dataclass
class Record:
    """Scalar output; rendered as JSON or as a one-row CSV of its flat keys."""
    data: dict

    def render(self, fmt):
        if fmt == "csv":
            flat = {k: v for k, v in self.data.items() if not isinstance(v, (dict, list))}
            return render_csv(list(flat), [list(flat.values())])
        return render_json(self.data)


@dataclass
class RunManifest:
    command_line: str
    master_seed: int
    tool_version: str
    timestamp: str
    input_digest: str
    outputs: list = field(default_factory=list)

    def as_dict(self):
        return {
            "command_line": self.command_line,
            "master_seed": self.master_seed,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "input_digest": self.input_digest,
            "outputs": self.outputs,
        }


def config_digest(config: dict) -> str:
    return hashlib.sha256(json.dumps(_jsonable(config), sort_keys=True).encode()).hexdigest()


class Output:
    """Routes named results to stdout or to files under --out."""

    def __init__(self, out, fmt, argv, seed, config):
        self.out = Path(out) if out else None
        self.fmt = fmt
        self.manifest = RunManifest(" ".join(["riesz-zeros", *argv]), seed, __version__,
                                    time.strftime("%Y-%m-%dT%H:%M:%S%z"), config_digest(config))

    def _target(self, name, fmt):
        if self.out.suffix in (".csv", ".json"):
            return self.out
        return self.out / f"{name}.{fmt}"

    def emit(self, name, result, default_fmt):
        fmt = self.fmt or default_fmt
        text = result.render(fmt)
        if self.out is None:
            sys.stdout.write(text)
            return
        path = self._target(name, fmt)
        digest = atomic_write(path, text)
        self.manifest.outputs.append({"path": str(path), "sha256": digest})

    def finish(self):
        if self.out is None:
            return
        base = self.out.parent if self.out.suffix in (".csv", ".json") else self.out
        atomic_write(base / "manifest.json", render_json(self.manifest.as_dict()))


# ---------------------------------------------------------------------------
# subcommands

def kappa_table(m, rmin, rmax, points, log_grid=False) -> Table:
    if points < 1 or rmax < rmin or rmin < 0:
        raise UsageError("need points >= 1 and 0 <= rmin <= rmax")
    if log_grid:
        if rmin <= 0:
            raise UsageError("--log-grid needs rmin > 0")
        grid = np.geomspace(rmin, rmax, points)
    else:
        grid = np.linspace(rmin, rmax, points)
    rows = []
    for r in grid:
        r = float(r)
        if r == 0:
            if m >= 3:
                rows.append((r, math.inf, math.inf, 0.0, 0.0, 0.0))
            else:
                k0 = float(kappa(m, 0.0))
                rows.append((r, k0, k0 - 1, 0.0, 0.0, 0.0))
            continue
        d = kappa_decompose(KappaQuery(m, r))
        rows.append((r, float(kappa(m, r)), float(kappa_minus_one(m, r)),
                     d.term_one, d.term_two, d.term_three))
    return Table(["r", "kappa", "kappa_minus_1", "term1", "term2", "term3"], rows)


def cmd_kappa(args, out):
    out.emit(f"kappa_m{args.m}", kappa_table(args.m, args.rmin, args.rmax, args.points,
                                             args.log_grid), "csv")


def coeff_record(args) -> Record:
    m, tol = args.m, args.tol
    if args.identity:
        res = normalization_identity(m, tol)
        return Record({"quantity": "identity", "m": m, **res.as_dict()})
    if args.log:
        res = c_m_log(m, tol)
        return Record({"quantity": "log_constant", "m": m, **res.as_dict()})
    if args.s_star:
        value = s_star(m, tol=tol)
        return Record({"quantity": "s_star", "m": m, "value": value, "error_estimate": tol,
                       "tail_bound": 0.0})
    if args.residue:
        return Record({"quantity": "residue_at_4", "m": m, "value": residue_at_4(m),
                       "error_estimate": 0.0, "tail_bound": 0.0})
    if args.s is None:
        raise UsageError("coeff needs one of --s, --log, --identity, --s-star, --residue")
    res = c_m_s(CoeffRequest(m, args.s, tol))
    return Record({"quantity": "c_m_s", "m": m, "s": args.s, **res.as_dict()})


def cmd_coeff(args, out):
    out.emit(f"coeff_m{args.m}", coeff_record(args), "json")


def cmd_coeff_scan(args, out):
    rows = coeff_scan(args.m, args.smin, args.smax, args.points, args.tol)
    out.emit(f"coeff_scan_m{args.m}", Table(["s", "c_m_s"], rows), "csv")


def sample_table(degree, trials, seed, radius=0.5) -> Table:
    cfg = SphereConfig(radius)
    rows = []
    for t in range(trials):
        rep = chart_roots(sample_polynomial(degree, RngStream(seed, t)).coeffs)
        z = list(rep.roots) + [complex(math.inf, 0)] * rep.at_infinity
        pts = stereographic_to_sphere(np.array(z), cfg).reshape(-1, 3)
        for zi, p in zip(z, pts):
            rows.append((t, zi.real, zi.imag, p[0], p[1], p[2]))
    return Table(["trial", "re", "im", "x", "y", "z"], rows)


def cmd_sample(args, out):
    out.emit(f"zeros_N{args.degree}", sample_table(args.degree, args.trials, args.seed,
                                                   args.radius), "csv")


def make_kernel(name, s, counting) -> Kernel:
    if name == "riesz":
        name = "riesz_geodesic"
    if name == "riesz_geodesic" and s is None:
        raise UsageError("--kernel riesz needs --s")
    if name != "riesz_geodesic" and s is not None:
        raise UsageError(f"--s does not apply to kernel {name}")
    return Kernel(name, s=s, pair_counting=counting)


def simulate_record(degree, kernel, radius, trials, seed, threads=None, process="zeros") -> Record:
    cfg = SphereConfig(radius)
    if process == "uniform":
        stats = mc_uniform_energy(degree, kernel, trials, seed, cfg)
    else:
        stats = mc_expected_energy(degree, kernel, trials, seed, cfg, threads=threads,
                                   min_trials=min(100, trials))
    prediction = None
    if kernel.variant == "log_chordal" and process == "zeros":
        prediction = kernel.multiplicity * predict_sphere_log(degree, radius)
    data = {"stats": stats.as_dict(), "prediction": prediction,
            "discrepancy_sigmas": None if prediction is None else stats.sigmas_from(prediction)}
    return Record(data)


def cmd_simulate(args, out):
    kernel = make_kernel(args.kernel, args.s, args.counting)
    rec = simulate_record(args.degree, kernel, args.radius, args.trials, args.seed, args.threads)
    out.emit(f"simulate_N{args.degree}", rec, "json")


def cmd_paircorr(args, out):
    hist = empirical_pair_correlation(args.degree, args.trials, args.bins, args.rmax, args.seed,
                                      control=args.control, threads=args.threads)
    out.emit(f"paircorr_N{args.degree}", Table(["r_mid", "density", "kappa11", "stderr"],
                                               hist.rows()), "csv")


def minimize_record(n, kernel, radius, restarts, seed) -> Record:
    res = minimize_energy(n, kernel, OptimizerConfig(restarts=restarts), seed, SphereConfig(radius))
    data = res.summary()
    data["c_n"] = c_n_extract(res) if kernel.variant == "log_chordal" and radius == 1.0 else None
    data["points"] = res.config.points.tolist()
    return Record(data)


def cmd_minimize(args, out):
    kernel = make_kernel(args.kernel, args.s, args.counting)
    out.emit(f"minimize_n{args.n}", minimize_record(args.n, kernel, args.radius, args.restarts,
                                                    args.seed), "json")


# ---------------------------------------------------------------------------
# report

@dataclass
class ReportSpec:
    experiments: list
    output_dir: Path
    quick: bool = False


def _row(name, check, passed, detail):
    return (name, check, "pass" if passed else "fail", detail)


def _exp_kappa_figures(spec, seed, out):
    rows = []
    for m in (2, 3, 4):
        rmin = 0.0 if m == 2 else 0.05
        tab = kappa_table(m, rmin, 5.0, 500)
        out.emit(f"kappa_m{m}", tab, "csv")
        if m == 2:
            rows.append(_row("kappa-figures", "kappa_22(0) = 3/4", abs(tab.rows[0][1] - 0.75) < 1e-12,
                             f"{tab.rows[0][1]:.15g}"))
        far = abs(float(kappa_minus_one(m, 10.0)))
        rows.append(_row("kappa-figures", f"|kappa_{m}{m}(10) - 1| < 1e-20", far < 1e-20, f"{far:.3e}"))
    return rows


def _exp_coeff_scan(spec, seed, out):
    rows = []
    for m in (2, 3, 4):
        scan = coeff_scan(m, 0.05, 3.95, 40 if spec.quick else 79, 1e-8)
        out.emit(f"coeff_scan_m{m}", Table(["s", "c_m_s"], scan), "csv")
    small = {m: [c_m_s(CoeffRequest(m, s, 1e-9)).value for s in (0.1, 0.25, 0.5)] for m in (2, 3, 4)}
    for m, vals in small.items():
        rows.append(_row("coeff-scan", f"c_{m}(s) < 0 at s = 0.1, 0.25, 0.5", max(vals) < 0,
                         ", ".join(f"{v:.6g}" for v in vals)))
    grid = np.linspace(0.01, 3.99, 200)
    c2 = max(c_m_s(CoeffRequest(2, float(s), 1e-9)).value for s in grid)
    rows.append(_row("coeff-scan", "c_2(s) < 0 on (0, 3.99)", c2 < 0, f"max {c2:.6g}"))
    for m, target in ((2, -1.0), (3, 6.0)):
        v = 0.01 * c_m_s(CoeffRequest(m, 3.99, 1e-9)).value
        rows.append(_row("coeff-scan", f"(4 - s) c_{m}(s) at 3.99 within 5% of {target:g}",
                         abs(v - target) <= 0.05 * abs(target), f"{v:.6g}"))
    return rows


def _exp_identity_table(spec, seed, out):
    tab = []
    rows = []
    for m in range(1, 6):
        res = normalization_identity(m, 1e-9)
        tab.append((m, res.value, res.total_error))
        rows.append(_row("identity-table", f"identity m={m} = -1 +- 1e-6", abs(res.value + 1) <= 1e-6,
                         f"{res.value:.12f}"))
    out.emit("identity_table", Table(["m", "value", "error_bound"], tab), "csv")
    return rows


def _exp_sphere_energy(spec, seed, out):
    plan = ((5, 100_000), (10, 100_000), (20, 50_000), (50, 20_000))
    kernel = Kernel.log_chordal()
    tab, rows = [], []
    for n, trials in plan:
        trials = trials // 10 if spec.quick else trials
        st = mc_expected_energy(n, kernel, trials, derive_seed(seed, f"sphere-energy-{n}"))
        pred = predict_sphere_log(n, 0.5)
        z = st.sigmas_from(pred)
        tab.append((n, trials, st.mean, st.std_error, pred, z))
        rows.append(_row("sphere-energy", f"N={n} mean within 3 stderr", abs(z) <= 3, f"{z:+.2f} sigma"))
    uni = mc_uniform_energy(20, Kernel.log_chordal("ordered"), 10_000 if spec.quick else 100_000,
                            derive_seed(seed, "uniform-20"))
    z = uni.sigmas_from(190.0)
    rows.append(_row("sphere-energy", "uniform n=20 ordered mean = 190", abs(z) <= 3, f"{z:+.2f} sigma"))
    out.emit("sphere_energy", Table(["N", "trials", "mean", "std_error", "prediction", "sigmas"], tab),
             "csv")
    return rows


def _exp_paircorr(spec, seed, out):
    trials = 2_000 if spec.quick else 20_000
    s = derive_seed(seed, "paircorr")
    hist = empirical_pair_correlation(200, trials, 50, 5.0, s)
    ctrl = empirical_pair_correlation(200, max(200, trials // 10), 50, 5.0, s, control=True)
    out.emit("paircorr_N200", Table(["r_mid", "density", "kappa11", "stderr"], hist.rows()), "csv")
    out.emit("paircorr_control_N200", Table(["r_mid", "density", "kappa11", "stderr"], ctrl.rows()),
             "csv")
    # bins lying inside [0.5, 3]; smaller r has too few pairs to resolve
    sel = (hist.bin_edges[:-1] >= 0.5 - 1e-12) & (hist.bin_edges[1:] <= 3 + 1e-12)
    dev = np.abs(hist.density - hist.kappa11())[sel]
    allowed = np.maximum(0.05, 3 * hist.stderr[sel])
    flat = (np.abs(ctrl.density - 1) <= 3 * ctrl.stderr)[sel]
    return [
        _row("paircorr", "zeros match kappa_11 on [0.5, 3]", bool(np.all(dev <= allowed)),
             f"max dev {dev.max():.4f}"),
        _row("paircorr", "uniform control flat at 1 on [0.5, 3]", bool(np.all(flat)),
             f"{int(np.sum(~flat))} bins outside 3 stderr"),
    ]


def _exp_minimize_table(spec, seed, out):
    tab, rows = [], []
    trials = {10: 20_000, 20: 10_000, 50: 2_000}
    for n in (10, 20, 50):
        res = minimize_energy(n, Kernel.log_chordal(), OptimizerConfig(restarts=4), derive_seed(seed, f"min-{n}"))
        mc = mc_expected_energy(n, Kernel.log_chordal(), trials[n] // (10 if spec.quick else 1),
                                derive_seed(seed, f"min-mc-{n}"))
        tab.append((n, res.energy, res.gradient_norm, mc.mean, mc.std_error))
        rows.append(_row("minimize-table", f"n={n} minimum below random-zero mean",
                         res.energy < mc.mean, f"{res.energy:.6f} < {mc.mean:.6f}"))
    out.emit("minimize_table", Table(["n", "min_energy", "gradient_norm", "mc_mean", "mc_stderr"], tab),
             "csv")
    return rows


RUNNERS = {
    "kappa-figures": _exp_kappa_figures,
    "coeff-scan": _exp_coeff_scan,
    "identity-table": _exp_identity_table,
    "sphere-energy": _exp_sphere_energy,
    "paircorr": _exp_paircorr,
    "minimize-table": _exp_minimize_table,
}


def report(spec: ReportSpec, seed: int, out: Output):
    """Run the experiments; returns (summary rows, all_ok)."""
    summary = []
    ok = True
    for name in spec.experiments:
        try:
            rows = RUNNERS[name](spec, seed, out)
        except Exception as exc:  # noqa: BLE001 - recorded per experiment
            log.exception("experiment %s failed", name)
            rows = [(name, "run", "error", f"{type(exc).__name__}: {exc}")]
        ok &= all(r[2] == "pass" for r in rows)
        summary.extend(rows)
    out.emit("summary", Table(["experiment", "check", "status", "detail"], summary), "csv")
    return summary, ok


def cmd_report(args, out):
    names = EXPERIMENTS if args.experiments == "all" else tuple(args.experiments.split(","))
    unknown = [n for n in names if n not in EXPERIMENTS]
    if unknown:
        raise UsageError(f"unknown experiment(s): {', '.join(unknown)}")
    if out.out is None:
        raise UsageError("report needs --out <dir>")
    spec = ReportSpec(list(names), out.out, args.quick)
    _, ok = report(spec, args.seed, out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser

def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _radius(text):
    v = float(text)
    if v not in (0.5, 1.0):
        raise argparse.ArgumentTypeError("radius must be 0.5 or 1")
    return v


def _threads(text):
    if text == "auto":
        return "auto"
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1 or auto")
    return v


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands accept the global flags too; their defaults are suppressed
    # so a value given before the subcommand is not overwritten
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=d(DEFAULT_SEED), help="master seed (u64)")
    common.add_argument("--out", default=d(None), help="output directory (or .csv/.json file)")
    common.add_argument("--format", choices=("csv", "json"), default=d(None))
    common.add_argument("--threads", type=_threads, default=d(1), help="worker threads or 'auto'")
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="riesz-zeros", parents=[_global_flags(suppress=False)],
                                description="Pair correlations, Riesz coefficients and energies "
                                            "of random polynomial zeros.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command")

    k = sub.add_parser("kappa", parents=[common], help="pair correlation on a grid (CSV)")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--rmin", type=float, default=0.0)
    k.add_argument("--rmax", type=float, default=5.0)
    k.add_argument("--points", type=int, default=500)
    k.add_argument("--log-grid", action="store_true")
    k.set_defaults(func=cmd_kappa)

    c = sub.add_parser("coeff", parents=[common], help="one coefficient integral (JSON)")
    c.add_argument("--m", type=int, required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--s", type=float)
    g.add_argument("--log", action="store_true")
    g.add_argument("--identity", action="store_true")
    g.add_argument("--s-star", action="store_true")
    g.add_argument("--residue", action="store_true")
    c.add_argument("--tol", type=float, default=1e-8)
    c.set_defaults(func=cmd_coeff)

    cs = sub.add_parser("coeff-scan", parents=[common], help="c_m(s) on an s grid (CSV)")
    cs.add_argument("--m", type=int, required=True)
    cs.add_argument("--smin", type=float, default=0.05)
    cs.add_argument("--smax", type=float, default=3.95)
    cs.add_argument("--points", type=int, default=79)
    cs.add_argument("--tol", type=float, default=1e-8)
    cs.set_defaults(func=cmd_coeff_scan)

    sm = sub.add_parser("sample", parents=[common], help="zeros of random polynomials (CSV)")
    sm.add_argument("--degree", type=int, required=True)
    sm.add_argument("--trials", type=int, default=1)
    sm.add_argument("--radius", type=_radius, default=0.5)
    sm.set_defaults(func=cmd_sample)

    kernels = ("log_chordal", "log_geodesic", "green", "riesz", "riesz_geodesic")
    si = sub.add_parser("simulate", parents=[common], help="Monte Carlo expected energy (JSON)")
    si.add_argument("--degree", type=int, required=True)
    si.add_argument("--kernel", choices=kernels, default="log_chordal")
    si.add_argument("--s", type=float, default=None)
    si.add_argument("--radius", type=_radius, default=0.5)
    si.add_argument("--counting", choices=("ordered", "unordered"), default="unordered")
    si.add_argument("--trials", type=int, default=10_000)
    si.set_defaults(func=cmd_simulate)

    pc = sub.add_parser("paircorr", parents=[common], help="empirical pair correlation (CSV)")
    pc.add_argument("--degree", type=int, default=200)
    pc.add_argument("--trials", type=int, default=2_000)
    pc.add_argument("--bins", type=int, default=50)
    pc.add_argument("--rmax", type=float, default=5.0)
    pc.add_argument("--control", action="store_true", help="uniform points instead of zeros")
    pc.set_defaults(func=cmd_paircorr)

    mi = sub.add_parser("minimize", parents=[common], help="energy minimization (JSON)")
    mi.add_argument("--n", type=int, required=True)
    mi.add_argument("--kernel", choices=kernels, default="log_chordal")
    mi.add_argument("--s", type=float, default=None)
    mi.add_argument("--radius", type=_radius, default=0.5)
    mi.add_argument("--counting", choices=("ordered", "unordered"), default="unordered")
    mi.add_argument("--restarts", type=int, default=8)
    mi.set_defaults(func=cmd_minimize)

    rp = sub.add_parser("report", parents=[common], help="run the experiment battery")
    rp.add_argument("--experiments", default="all",
                    help="comma-separated subset of: " + ", ".join(EXPERIMENTS))
    rp.add_argument("--quick", action="store_true", help="one tenth of the Monte Carlo trials")
    rp.set_defaults(func=cmd_report)
    return p


COMPUTATIONAL = (PrecisionFailure, RootFinderFailure, NoCrossing, DegenerateSample, ArithmeticError,
                 RuntimeError)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            args.threads = _threads(env)
        except (ValueError, argparse.ArgumentTypeError):
            print(f"riesz-zeros: invalid {THREADS_ENV}={env!r}", file=sys.stderr)
            return 2
    config = {k: v for k, v in vars(args).items() if k not in ("func", "out", "threads", "verbose")}
    out = Output(args.out, args.format, argv, args.seed, config)
    try:
        code = args.func(args, out) or 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"riesz-zeros: error: {exc}", file=sys.stderr)
        return 2
    except COMPUTATIONAL as exc:
        print(f"riesz-zeros: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"riesz-zeros: error: {exc}", file=sys.stderr)
        return 2
    out.finish()
    return code


def main():
    sys.exit(run())
