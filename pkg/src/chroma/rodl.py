"""Threshold arithmetic and the left-neighbourhood descent.

``f(x, l) = x * (Gamma(x l^7 + 1) / Gamma(x + 1))^3`` and the tower
``k_0 = x, k_t = f(x, k_{t-1})`` overflow any float almost immediately, so
they are carried as natural logarithms (:class:`LogValue`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .config import CapExceeded
from .fractional import alpha_f_weights, auto_method, chi_f
from .graph import Graph, VertexOrder, cycle, induced, left_neighborhood, mycielskian
from .kneser import kneser

LOG_RTOL = 1e-9
_LGAMMA_DIRECT_MAX = 700.0


@dataclass(frozen=True)
class LogValue:
    """A positive quantity stored as its natural logarithm."""

    log: float
    exact: bool = False
    overflow: bool = False

    @classmethod
    def of(cls, value, exact: bool = True) -> "LogValue":
        return cls(math.log(value), exact=exact)

    @property
    def value(self) -> float:
        return math.exp(self.log) if self.log < 709 else math.inf

    def isclose(self, other: "LogValue | float", rtol: float = LOG_RTOL) -> bool:
        o = other.log if isinstance(other, LogValue) else math.log(other)
        return math.isclose(self.log, o, rel_tol=rtol, abs_tol=rtol)

    def le(self, other: "LogValue", rtol: float = LOG_RTOL) -> bool:
        """``self <= other`` up to the relative tolerance on the logs."""
        return self.log <= other.log + rtol * max(1.0, abs(other.log))

    def to_json(self) -> dict:
        return {"log": self.log if not self.overflow else "overflow", "exact": self.exact}


OVERFLOW = LogValue(math.inf, overflow=True)


def _lgamma1p_of_exp(log_z: float) -> float:
    """``ln Gamma(z + 1)`` given ``ln z``; Stirling's series once ``z`` is huge."""
    if log_z < _LGAMMA_DIRECT_MAX:
        return math.lgamma(math.exp(log_z) + 1)
    z = math.exp(log_z)  # may be inf; caller checks
    return z * (log_z - 1) + 0.5 * (math.log(2 * math.pi) + log_z) + 1 / (12 * z)


def _log_f(x: float, log_l: float) -> LogValue:
    log_arg = math.log(x) + 7 * log_l
    if log_arg >= 709:
        return OVERFLOW
    top = _lgamma1p_of_exp(log_arg)
    val = math.log(x) + 3 * (top - math.lgamma(x + 1))
    if not math.isfinite(val):
        return OVERFLOW
    return LogValue(val)


def f_threshold(x, l) -> LogValue:
    """``ln f(x, l)`` for ``x >= 1``, ``l >= 1``."""
    if x < 1 or l < 1:
        raise ValueError("f(x, l) is defined for x >= 1 and l >= 1")
    return _log_f(float(x), math.log(l))


def recursive_bound_lhs(x: float) -> float:
    return (x + 1) * (1 - 1 / (6 * (x + 1))) ** 7


def recursive_bound_holds(x: float) -> bool:
    """Whether ``(x+1)(1 - 1/(6(x+1)))^7 <= x``, which is what ``f(x,l) >= x(x+1)^2 f(x+1, l')`` reduces to."""
    if x <= 0:
        raise ValueError("x must be positive")
    return recursive_bound_lhs(x) <= x


def shrink_factor(x, i: int) -> Fraction:
    """``1 - 1/(6(x+i))``, the ratio between consecutive descent values."""
    return 1 - 1 / (6 * (Fraction(x) + i))


def descent_sequence(x, l, max_len: int = 200_000) -> list[Fraction]:
    """Exact values ``l_0 = l, l_i = l_{i-1}(1 - 1/(6(x+i)))`` until one drops below 2."""
    if x < 1 or l < 1:
        raise ValueError("need x >= 1 and l >= 1")
    x, cur = Fraction(x), Fraction(l)
    seq = [cur]
    i = 0
    while cur >= 2:
        i += 1
        if i >= max_len:
            raise CapExceeded(f"descent from l={l} at x={x} needs more than {max_len} steps")
        cur = cur * shrink_factor(x, i)
        seq.append(cur)
    return seq


def _log_descent_value(x, l, steps: int) -> mpmath.mpf:
    """``ln l_steps`` from the product formula in high precision."""
    x = mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
    return (
        mpmath.log(mpmath.mpf(Fraction(l).numerator) / Fraction(l).denominator)
        + mpmath.loggamma(x + steps + mpmath.mpf(5) / 6)
        - mpmath.loggamma(x + mpmath.mpf(5) / 6)
        + mpmath.loggamma(x + 1)
        - mpmath.loggamma(x + steps + 1)
    )


def descent_length(x, l, dps: int = 50) -> tuple[int, mpmath.mpf]:
    """Number of steps until the descent value drops below 2, and that final value.

    Uses ``prod_{i<=N} (x+i-1/6)/(x+i) = Gamma(x+N+5/6)Gamma(x+1) / (Gamma(x+5/6)Gamma(x+N+1))``
    so it works for step counts far beyond what can be iterated.
    """
    if x < 1 or l < 1:
        raise ValueError("need x >= 1 and l >= 1")
    if l < 2:
        return 0, mpmath.mpf(Fraction(l).numerator) / Fraction(l).denominator
    with mpmath.workdps(dps):
        log2 = mpmath.log(2)
        hi = 1
        while _log_descent_value(x, l, hi) >= log2:
            hi *= 2
        lo = hi // 2  # value at lo is still >= 2 (or lo == 0)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _log_descent_value(x, l, mid) >= log2:
                lo = mid
            else:
                hi = mid
        return hi, mpmath.exp(_log_descent_value(x, l, hi))


def tower_k(x, t_max: int) -> list[LogValue]:
    """``k_0 .. k_{t_max}`` in log space; entries past float range are tagged overflow."""
    if x < 1 or t_max < 0:
        raise ValueError("need x >= 1 and t_max >= 0")
    out = [LogValue(math.log(x), exact=True)]
    for _ in range(t_max):
        prev = out[-1]
        out.append(OVERFLOW if prev.overflow else _log_f(float(x), prev.log))
    return out


@dataclass(frozen=True)
class Witness:
    name: str
    graph: Graph
    chi_f: Fraction

    @property
    def order(self) -> int:
        return self.graph.n


def _catalog(mycielski_depth: int, kneser_k_max: int, odd_cycle_max: int):
    yield "K1", 1, Fraction(1), lambda: Graph.empty(1)
    for length in range(5, odd_cycle_max + 1, 2):
        k = (length - 1) // 2
        yield f"C{length}", length, 2 + Fraction(1, k), (lambda length=length: cycle(length))
    # chi_f(M(G)) = chi_f(G) + 1/chi_f(G); order 2n+1.
    order, value = 5, Fraction(5, 2)
    for depth in range(1, mycielski_depth + 1):
        order, value = 2 * order + 1, value + 1 / value

        def build(depth=depth):
            g = cycle(5)
            for _ in range(depth):
                g = mycielskian(g)
            return g

        yield f"M^{depth}(C5)", order, value, build
    for k in range(2, kneser_k_max + 1):
        yield f"KG({3 * k - 1},{k})", math.comb(3 * k - 1, k), Fraction(3 * k - 1, k), (lambda k=k: kneser(3 * k - 1, k))


def witness_r_upper(x, mycielski_depth: int = 4, kneser_k_max: int = 4, odd_cycle_max: int = 11) -> Witness | None:
    """Smallest triangle-free catalog graph with ``chi_f >= x``, or ``None``."""
    if x < 1:
        raise ValueError("x must be >= 1")
    best = None
    for name, order, value, build in _catalog(mycielski_depth, kneser_k_max, odd_cycle_max):
        if value >= x and (best is None or order < best[1]):
            best = (name, order, value, build)
    if best is None:
        return None
    name, _, value, build = best
    return Witness(name, build(), value)


@dataclass(frozen=True)
class DescentStep:
    vertices: tuple[int, ...]
    threshold: Fraction
    pivot: int | None
    pivot_chi_f: Fraction | None

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "threshold": self.threshold,
            "pivot": self.pivot,
            "pivot_chi_f": self.pivot_chi_f,
        }


CLIQUE_WITNESS = "clique-witness"
BOUNDED = "bounded-left-chi_f"


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple[DescentStep, ...]
    outcome: str
    pivots: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "pivots": list(self.pivots), "steps": [s.to_json() for s in self.steps]}


def rodl_descent(g: Graph, thresholds: Sequence) -> DescentTrace:
    """Walk into left neighbourhoods whose ``chi_f`` exceeds the current threshold.

    Thresholds are consumed from the last to the first.  At each step the
    current graph is ordered by its optimal ``alpha_f`` weighting (heaviest
    first, ties by index) and the first vertex in that order whose left
    neighbourhood has ``chi_f`` above the threshold becomes the pivot.
    """
    if not thresholds:
        raise ValueError("need at least one threshold")
    levels = [Fraction(t) for t in thresholds]
    current = list(range(g.n))
    steps: list[DescentStep] = []
    pivots: list[int] = []
    for threshold in reversed(levels):
        sub, back = induced(g, current)
        weights, _ = alpha_f_weights(sub, auto_method(sub.n))
        order = VertexOrder.by_weight(weights.w)
        found = None
        for v in order.perm:
            left = left_neighborhood(sub, order, v)
            value = chi_f(induced(sub, left)[0])
            if value > threshold:
                found = (v, left, value)
                break
        if found is None:
            steps.append(DescentStep(tuple(current), threshold, None, None))
            _check_clique(g, pivots)
            return DescentTrace(tuple(steps), BOUNDED, tuple(pivots))
        v, left, value = found
        steps.append(DescentStep(tuple(current), threshold, back[v], value))
        pivots.append(back[v])
        current = sorted(back[u] for u in left)
    _check_clique(g, pivots)
    return DescentTrace(tuple(steps), CLIQUE_WITNESS, tuple(pivots))


def _check_clique(g: Graph, vertices: Sequence[int]) -> None:
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            if not g.has_edge(u, v):
                raise AssertionError(f"descent pivots {u} and {v} are not adjacent")
