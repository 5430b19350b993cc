"""Scan c_m(s) over s in (0, min(2m, 4)) and list the log constants and sign changes."""
import argparse

import numpy as np

from riesz_zeros.coeffs import CoeffRequest, c_m_log, c_m_s, normalization_identity, s_star


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ms", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--points", type=int, default=20)
    args = ap.parse_args()
    print("m,identity,c_log,s_star")
    for m in args.ms:
        ident = normalization_identity(m).value
        star = s_star(m) if m >= 3 else float("nan")
        print(f"{m},{ident:.12f},{c_m_log(m).value:.12f},{star:.6f}")
    print()
    print("m,s,c_m_s,error_estimate")
    for m in args.ms:
        top = min(2 * m, 4)
        for s in np.linspace(0.05, top - 0.05, args.points):
            res = c_m_s(CoeffRequest(m, float(s)))
            print(f"{m},{s:.4f},{res.value:.10g},{res.total_error:.2e}")


if __name__ == "__main__":
    main()
