"""Minimized log-chordal energies on the unit sphere: C_N, the lower bound
and the gap to random zeros and uniform points."""
import argparse

from riesz_zeros.energy import mc_expected_energy, mc_uniform_energy
from riesz_zeros.minimize import OptimizerConfig, c_n_extract, minimize_energy
from riesz_zeros.predictions import c_n_from_energy, log_energy_lower_bound, cn_upper_limit
from riesz_zeros.sphere import UNIT, Kernel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[10, 20, 50, 100])
    ap.add_argument("--restarts", type=int, default=6)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    kernel = Kernel.log_chordal()
    print(f"# asymptotic upper constant for C_N: {cn_upper_limit():.10f}")
    print("N,energy,lower_bound,C_N,C_N_zeros,C_N_uniform,gradient_norm,converged")
    for n in args.ns:
        res = minimize_energy(n, kernel, OptimizerConfig(restarts=args.restarts), args.seed, UNIT)
        zeros = mc_expected_energy(n, kernel, args.trials, args.seed, cfg=UNIT)
        unif = mc_uniform_energy(n, kernel, args.trials, args.seed, cfg=UNIT)
        print(f"{n},{res.energy:.8f},{log_energy_lower_bound(n):.6f},{c_n_extract(res):.8f},"
              f"{c_n_from_energy(zeros.mean, n):.6f},{c_n_from_energy(unif.mean, n):.6f},"
              f"{res.gradient_norm:.2e},{res.converged}")


if __name__ == "__main__":
    main()
