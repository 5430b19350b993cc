"""Print kappa_mm(r) - 1 for several m on a log grid, plus the small-r check
and the radius beyond which kappa_mm > 1."""
import argparse

import numpy as np

from riesz_zeros.kappa import kappa, kappa_minus_one, positivity_threshold


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mmax", type=int, default=6)
    ap.add_argument("--points", type=int, default=25)
    args = ap.parse_args()
    grid = np.geomspace(1e-2, 8, args.points)
    ms = range(1, args.mmax + 1)
    print("r," + ",".join(f"m{m}" for m in ms))
    for r in grid:
        print(f"{r:.5g}," + ",".join(f"{float(kappa_minus_one(m, float(r))):.6e}" for m in ms))
    print()
    print("m,leading_ratio_at_1e-3,positivity_radius")
    for m in ms:
        ratio = float(kappa(m, 1e-3)) * 1e-3 ** (2 * m - 4) / ((m + 1) / 4)
        thr = positivity_threshold(m) if m >= 3 else float("nan")
        print(f"{m},{ratio:.12f},{thr:.6f}")


if __name__ == "__main__":
    main()
