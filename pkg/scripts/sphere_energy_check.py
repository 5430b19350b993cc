"""Compare the Monte Carlo log-chordal energy of random SU(2) zeros with the
closed form, for both sphere radii."""
import argparse

from riesz_zeros.energy import mc_expected_energy
from riesz_zeros.predictions import predict_sphere_log
from riesz_zeros.sphere import Kernel, SphereConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[5, 10, 20, 50])
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    print("radius,N,mean,std_error,prediction,sigmas")
    for radius in (0.5, 1.0):
        for n in args.degrees:
            st = mc_expected_energy(n, Kernel.log_chordal(), args.trials, args.seed,
                                    cfg=SphereConfig(radius), threads=args.threads)
            pred = predict_sphere_log(n, radius)
            print(f"{radius},{n},{st.mean:.6f},{st.std_error:.6f},{pred:.6f},{st.sigmas_from(pred):+.2f}")


if __name__ == "__main__":
    main()
