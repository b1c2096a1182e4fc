"""Exact rational LP solver for covering-type programs.

Solves ``min c.y  s.t.  A y >= b, y >= 0`` for integer data with ``c >= 0``
by the revised dual simplex method.  The all-slack basis is dual feasible
because ``c >= 0``, so no phase one is needed.

The leaving row is the most infeasible one.  After ``stall_limit`` pivots
without a strict increase of the objective the solver switches to Bland's
smallest-index rule (leaving row and entering column) until the objective
moves again; Bland's rule cannot cycle, so every stall ends in progress or
optimality and the method terminates.  Ties are always broken by smallest
index, so the returned optimum is deterministic.

The basis inverse is kept as an integer adjugate over the basis determinant
and updated with integer-preserving pivots, so all pricing of the possibly
many structural columns runs on Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence


class InfeasibleLP(ValueError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    pivots: int


def _common(row: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(q.denominator for q in row)) if row else 1
    return [q.numerator * (den // q.denominator) for q in row], den


def solve_covering(
    columns: Sequence[Mapping[int, int]],
    b: Sequence[int],
    c: Sequence[int],
    stall_limit: int = 50,
) -> LPSolution:
    """Optimal primal ``y`` and dual ``w`` (``A^T w <= c``, ``w >= 0``).

    ``columns[j]`` maps row index to the nonzero integer ``A[i][j]``.
    """
    m, k = len(b), len(columns)
    if len(c) != k:
        raise ValueError("cost vector length must match the number of columns")
    if any(int(v) != v for v in list(b) + list(c)):
        raise ValueError("b and c must be integral")
    cost = [int(v) for v in c]
    if any(v < 0 for v in cost):
        raise ValueError("dual simplex start needs c >= 0")
    cols = [sorted((i, int(a)) for i, a in col.items() if a) for col in columns]

    # Equality form:  -A y + s = -b, variables 0..k-1 structural, k..k+m-1 slack.
    # The basis inverse is adj / det: ``binv`` holds integers over the common
    # denominator ``det > 0``, updated by fraction-free (Bareiss) pivots.
    binv = [[int(i == j) for j in range(m)] for i in range(m)]
    xb = [-int(v) for v in b]
    det = 1
    basis = [k + i for i in range(m)]
    is_basic = [False] * k + [True] * m
    # Dual of the original program; equals the reduced cost of each slack.
    w = [Fraction(0)] * m

    pivots = 0
    stalled = 0
    while True:
        r = None
        if stalled < stall_limit:
            for i in range(m):
                if xb[i] < 0 and (r is None or xb[i] < xb[r]):
                    r = i
        else:
            for i in range(m):
                if xb[i] < 0 and (r is None or basis[i] < basis[r]):
                    r = i
        if r is None:
            break

        row_int = binv[r]
        w_int, w_den = _common(w)
        # alpha_j * det and reduced_j * w_den for every nonbasic column.
        enter = None
        best_num = best_den = 0
        for j in range(k + m):
            if is_basic[j]:
                continue
            if j < k:
                alpha = -sum(a * row_int[i] for i, a in cols[j])
                red = cost[j] * w_den - sum(a * w_int[i] for i, a in cols[j])
            else:
                alpha = row_int[j - k]
                red = w_int[j - k]
            if alpha >= 0:
                continue
            # ratio red / -alpha; keep the first (smallest index) minimum
            if enter is None or red * best_den < best_num * -alpha:
                enter, best_num, best_den = j, red, -alpha
        if enter is None:
            raise InfeasibleLP(f"constraint row {basis[r]} cannot be satisfied")

        if enter < k:
            col = [-sum(a * binv[t][i] for i, a in cols[enter]) for t in range(m)]
            red_enter = Fraction(cost[enter]) - sum((a * w[i] for i, a in cols[enter]), Fraction(0))
        else:
            col = [binv[t][enter - k] for t in range(m)]
            red_enter = w[enter - k]
        piv = col[r]
        stalled = stalled + 1 if red_enter == 0 else 0
        # Dual update: w_i is the reduced cost of slack i, alpha_{slack i} = binv[r][i] / det.
        if red_enter:
            step = red_enter / piv
            for i in range(m):
                if row_int[i]:
                    w[i] -= step * row_int[i]

        xr = xb[r]
        for t in range(m):
            if t == r:
                continue
            f = col[t]
            row = binv[t]
            if f:
                for j in range(m):
                    row[j] = (row[j] * piv - f * row_int[j]) // det
                xb[t] = (xb[t] * piv - f * xr) // det
            else:
                for j in range(m):
                    row[j] = row[j] * piv // det
                xb[t] = xb[t] * piv // det
        det = piv
        if det < 0:
            det = -det
            for row in binv:
                for j in range(m):
                    row[j] = -row[j]
            xb = [-v for v in xb]
        is_basic[basis[r]] = False
        is_basic[enter] = True
        basis[r] = enter
        pivots += 1

    primal = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            primal[var] = Fraction(xb[i], det)
    value = sum((cj * yj for cj, yj in zip(cost, primal)), Fraction(0))
    return LPSolution(value, tuple(primal), tuple(w), pivots)
