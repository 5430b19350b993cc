"""Rescaled pair correlation of random zeros against kappa_11 and a uniform control."""
import argparse

from riesz_zeros.energy import empirical_pair_correlation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=200)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--bins", type=int, default=50)
    ap.add_argument("--rmax", type=float, default=5.0)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    zeros = empirical_pair_correlation(args.degree, args.trials, args.bins, args.rmax, args.seed)
    ctrl = empirical_pair_correlation(args.degree, args.trials, args.bins, args.rmax, args.seed,
                                      control=True)
    print("r_mid,zeros,stderr,kappa11,uniform,uniform_stderr")
    for r, g, e, k, u, ue in zip(zeros.r_mid, zeros.density, zeros.stderr, zeros.kappa11(),
                                 ctrl.density, ctrl.stderr):
        print(f"{r:.3f},{g:.5f},{e:.5f},{k:.5f},{u:.5f},{ue:.5f}")


if __name__ == "__main__":
    main()
