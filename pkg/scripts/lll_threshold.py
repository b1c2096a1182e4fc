"""Smallest s (to a factor of 2 in log s) at which both LLL inequalities hold.

Compares that s with the naive threshold (x Delta)^(2g-4) for a small grid.
"""
import argparse
import math

import mpmath

from chroma.sparsifier import lll_event_system_check, lll_inequalities_hold


def threshold_log_s(x: int, delta: int, g: int, hi: float = 4096.0) -> float | None:
    holds = lambda log_s: all(lll_inequalities_hold(x, delta, g, mpmath.exp(log_s)))
    if not holds(hi):
        return None
    lo = math.log((x * delta) ** (2 * g - 4) + 1)
    while hi - lo > 1e-3 * hi:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if holds(mid) else (mid, hi)
    return hi


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--xs", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--deltas", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--gs", type=int, nargs="+", default=[4, 5, 6])
    args = ap.parse_args()
    print(f"{'x':>3} {'D':>3} {'g':>3} {'ln naive s':>12} {'ln s needed':>12} {'system ok':>10}")
    for x in args.xs:
        for delta in args.deltas:
            for g in args.gs:
                naive = math.log((x * delta) ** (2 * g - 4) + 1)
                need = threshold_log_s(x, delta, g)
                ok = need is not None and lll_event_system_check(x, delta, g, mpmath.exp(need)).ok
                shown = f"{need:12.2f}" if need is not None else f"{'>4096':>12}"
                print(f"{x:3d} {delta:3d} {g:3d} {naive:12.2f} {shown} {str(ok):>10}")


if __name__ == "__main__":
    main()
