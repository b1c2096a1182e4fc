"""Run certified triangle-free extraction on a few small graphs and print the certificates."""
import argparse
from fractions import Fraction

from chroma.extractor import OrderedWeightedGraph, extract_triangle_free
from chroma.graph import complete, grotzsch
from chroma.kneser import kneser


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cases = [("K4", complete(4), 2, 2), ("K5", complete(5), 2, 2), ("KG(5,2)", kneser(5, 2), 2, Fraction(3, 2)),
             ("Grotzsch", grotzsch(), 2, Fraction(3, 2))]
    for name, g, x, l in cases:
        owg = OrderedWeightedGraph.unit(g)
        cert = extract_triangle_free(owg, x, l, budget=args.budget, seed=args.seed)
        print(f"{name:>9}: accepted={cert.accepted} attempts={cert.attempts} edges={cert.H.m}"
              f" max weight {cert.max_independent_weight} target {cert.target} recomputes={cert.check(owg)}")


if __name__ == "__main__":
    main()
