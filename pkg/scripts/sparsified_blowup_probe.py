"""Success counts of the sparsified K4 blow-up for each resampling strategy and seed."""
import argparse

from chroma.graph import complete
from chroma.sparsifier import REJECTION, RESAMPLE, RESAMPLE_CYCLES, but_pipeline


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3])
    ap.add_argument("--budget", type=int, default=500)
    ap.add_argument("--p", type=float, default=0.8)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--strategies", nargs="+", default=[REJECTION, RESAMPLE, RESAMPLE_CYCLES])
    args = ap.parse_args()
    for strategy in args.strategies:
        for seed in args.seeds:
            rep = but_pipeline(complete(4), 3, 3, args.m, seed=seed, budget=args.budget, p=args.p, strategy=strategy)
            s = rep.results["summary"]
            print(f"{strategy:>16} seed {seed}: successes {s['successes']}/{s['samples']}"
                  f"  girth_ok {s['girth_ok']}  chi_ok {s['chi_ok']}")


if __name__ == "__main__":
    main()
