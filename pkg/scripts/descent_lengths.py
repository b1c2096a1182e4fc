"""Step counts of the shrinking descent for a table of (x, l)."""
import argparse
from fractions import Fraction

from chroma.rodl import descent_length


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--xs", type=int, nargs="+", default=[3, 10, 59, 100])
    ap.add_argument("--ls", type=Fraction, nargs="+", default=[Fraction(3), Fraction(5), Fraction(10), Fraction(50)])
    args = ap.parse_args()
    print(f"{'x':>5} {'l':>6} {'steps':>16} {'final':>15}")
    for x in args.xs:
        for l in args.ls:
            steps, final = descent_length(x, l)
            print(f"{x:5d} {str(l):>6} {steps:16d} {float(final):.12f}")


if __name__ == "__main__":
    main()
