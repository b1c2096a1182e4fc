"""Exact fractional chromatic number and the dual vertex weighting.

The covering LP ``min sum_I y_I`` over independent sets ``I`` with every
vertex covered at least once is solved exactly over the rationals.  Its dual
optimum ``w`` packs weight ``chi_f`` onto the vertices with ``w(I) <= 1`` for
every independent set; rescaling ``w`` to total ``n`` gives the weighting that
attains the fractional independence number ``alpha_f = n / chi_f``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .config import CAPS, check_cap
from .graph import Graph
from .lp import solve_covering

ENUMERATE = "enumerate"
COLUMN_GENERATION = "column-generation"


@dataclass(frozen=True)
class VertexWeighting:
    w: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(Fraction(v) for v in self.w))
        if any(v < 0 for v in self.w):
            raise ValueError("vertex weights must be nonnegative")

    @classmethod
    def uniform(cls, n: int, value=1) -> "VertexWeighting":
        return cls(tuple(Fraction(value) for _ in range(n)))

    @cached_property
    def total(self) -> Fraction:
        return sum(self.w, Fraction(0))

    def of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.w[v] for v in vertices), Fraction(0))

    def __getitem__(self, v: int) -> Fraction:
        return self.w[v]

    def __len__(self) -> int:
        return len(self.w)

    def restrict(self, vertices: Sequence[int]) -> "VertexWeighting":
        return VertexWeighting(tuple(self.w[v] for v in vertices))


@dataclass(frozen=True)
class FractionalColoring:
    """Weighted independent sets; a valid one covers each vertex with weight >= 1."""

    entries: tuple[tuple[frozenset[int], Fraction], ...]

    @property
    def total(self) -> Fraction:
        return sum((y for _, y in self.entries), Fraction(0))

    def coverage(self, v: int) -> Fraction:
        return sum((y for s, y in self.entries if v in s), Fraction(0))

    def format(self) -> str:
        """One line per entry: ``w <num>/<den> : v1 v2 ...`` with 1-based vertices."""
        lines = []
        for s, y in self.entries:
            verts = " ".join(str(v + 1) for v in sorted(s))
            lines.append(f"w {y.numerator}/{y.denominator} : {verts}".rstrip())
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def parse(cls, text: str) -> "FractionalColoring":
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            head, sep, tail = line.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] != "w" or "/" not in parts[1]:
                raise ValueError(f"line {lineno}: expected 'w <num>/<den> : vertices'")
            y = Fraction(parts[1])
            verts = frozenset(int(t) - 1 for t in tail.split())
            if any(v < 0 for v in verts):
                raise ValueError(f"line {lineno}: vertices are 1-based")
            entries.append((verts, y))
        return cls(tuple(entries))

    def to_json(self) -> list:
        return [{"weight": y, "set": sorted(s)} for s, y in self.entries]


class InvalidColoring(ValueError):
    def __init__(self, message: str, *, vertex: int | None = None, edge=None, entry: int | None = None):
        super().__init__(message)
        self.vertex = vertex
        self.edge = edge
        self.entry = entry


def verify_fractional_coloring(g: Graph, fc: FractionalColoring) -> Fraction:
    """Total weight of ``fc``; raises :class:`InvalidColoring` at the first violated constraint."""
    for idx, (s, y) in enumerate(fc.entries):
        if y < 0:
            raise InvalidColoring(f"entry {idx} has negative weight {y}", entry=idx)
        for v in s:
            if not 0 <= v < g.n:
                raise InvalidColoring(f"entry {idx} names vertex {v} outside the graph", entry=idx)
        for u in sorted(s):
            for v in g.adj[u]:
                if v > u and v in s:
                    raise InvalidColoring(f"entry {idx} contains edge ({u}, {v})", edge=(u, v), entry=idx)
    for v in range(g.n):
        if fc.coverage(v) < 1:
            raise InvalidColoring(f"vertex {v} covered with weight {fc.coverage(v)} < 1", vertex=v)
    return fc.total


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def enumerate_maximal_independent_sets(g: Graph, cap: int | None = None) -> list[frozenset[int]]:
    """All maximal independent sets (Bron-Kerbosch with pivoting on the complement)."""
    check_cap(g.n, CAPS.mis_enumeration if cap is None else cap, "maximal independent set enumeration")
    if g.n == 0:
        return [frozenset()]
    full = (1 << g.n) - 1
    # Non-neighbours in the complement sense: compatible vertices.
    comp = [full & ~m & ~(1 << v) for v, m in enumerate(g.masks)]
    found: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: bin(p & comp[u]).count("1"))
        for v in _bits(p & ~comp[pivot]):
            bit = 1 << v
            bk(r | bit, p & comp[v], x & comp[v])
            p &= ~bit
            x |= bit

    bk(0, full, 0)
    sets = [frozenset(_bits(r)) for r in found]
    sets.sort(key=lambda s: sorted(s))
    return sets


def max_weight_independent_set(g: Graph, w: VertexWeighting | Sequence) -> tuple[frozenset[int], Fraction]:
    """An independent set of maximum total weight, extended to a maximal one."""
    weights = [Fraction(v) for v in (w.w if isinstance(w, VertexWeighting) else w)]
    if len(weights) != g.n:
        raise ValueError("weight vector length must equal n")
    if g.n == 0:
        return frozenset(), Fraction(0)
    denom = math.lcm(*(q.denominator for q in weights))
    iw = [int(q * denom) for q in weights]
    masks = g.masks
    order = sorted(range(g.n), key=lambda v: (-iw[v], v))
    rank = {v: i for i, v in enumerate(order)}

    best_w = -1
    best_set = 0

    def clique_cover_bound(cand: int) -> int:
        bound = 0
        remaining = [v for v in order if cand >> v & 1]
        while remaining:
            head = remaining[0]
            clique_mask = 1 << head
            rest = []
            for u in remaining[1:]:
                if (masks[u] & clique_mask) == clique_mask:
                    clique_mask |= 1 << u
                else:
                    rest.append(u)
            bound += iw[head]
            remaining = rest
        return bound

    def search(cand: int, cur_w: int, cur_set: int) -> None:
        nonlocal best_w, best_set
        if cur_w > best_w:
            best_w, best_set = cur_w, cur_set
        if not cand:
            return
        if cur_w + sum(iw[v] for v in _bits(cand)) <= best_w:
            return
        if cur_w + clique_cover_bound(cand) <= best_w:
            return
        v = min(_bits(cand), key=rank.__getitem__)
        bit = 1 << v
        search(cand & ~masks[v] & ~bit, cur_w + iw[v], cur_set | bit)
        search(cand & ~bit, cur_w, cur_set)

    positive = 0
    for v in range(g.n):
        if iw[v] > 0:
            positive |= 1 << v
    search(positive, 0, 0)

    chosen = best_set
    for v in range(g.n):
        if not (masks[v] & chosen) and not (chosen >> v & 1):
            chosen |= 1 << v
    return frozenset(_bits(chosen)), Fraction(best_w, denom)


@dataclass(frozen=True)
class _LPResult:
    value: Fraction
    coloring: FractionalColoring
    dual: tuple[Fraction, ...]


def _sift(n: int, universe: list[frozenset[int]], batch: int = 10):
    """Solve the covering LP over ``universe`` by repeatedly pricing the whole list.

    A restricted LP starts from singleton columns; every round adds the
    ``batch`` most violated sets (``w(I) > 1``) until none is left, at which
    point the restricted optimum is optimal for the full column list.
    """
    columns = [frozenset([v]) for v in range(n)]
    present = set(columns)
    while True:
        sol = solve_covering([{v: 1 for v in s} for s in columns], [1] * n, [1] * len(columns))
        denom = math.lcm(*(q.denominator for q in sol.dual))
        iw = [int(q * denom) for q in sol.dual]
        violated = []
        for idx, s in enumerate(universe):
            weight = sum(iw[v] for v in s)
            if weight > denom and s not in present:
                violated.append((-weight, idx))
        if not violated:
            return columns, sol
        violated.sort()
        for _, idx in violated[:batch]:
            columns.append(universe[idx])
            present.add(universe[idx])


@lru_cache(maxsize=4096)
def _solve(g: Graph, method: str, cap: int) -> _LPResult:
    if g.n == 0:
        return _LPResult(Fraction(0), FractionalColoring(()), ())
    if method == ENUMERATE:
        universe = enumerate_maximal_independent_sets(g, cap=cap)
        columns, sol = _sift(g.n, universe)
    elif method == COLUMN_GENERATION:
        check_cap(g.n, cap, "column generation")
        columns = [frozenset([v]) for v in range(g.n)]
        while True:
            sol = solve_covering([{v: 1 for v in s} for s in columns], [1] * g.n, [1] * len(columns))
            new_set, weight = max_weight_independent_set(g, sol.dual)
            if weight <= 1:
                break
            columns.append(new_set)
    else:
        raise ValueError(f"unknown method {method!r}")
    entries = tuple((s, y) for s, y in zip(columns, sol.primal) if y > 0)
    return _LPResult(sol.value, FractionalColoring(entries), sol.dual)


def fractional_chromatic(
    g: Graph, method: str = ENUMERATE, cap: int | None = None
) -> tuple[Fraction, FractionalColoring]:
    """Exact ``chi_f(g)`` and an optimal fractional coloring certifying it."""
    if cap is None:
        cap = CAPS.mis_enumeration if method == ENUMERATE else CAPS.fractional_cg
    res = _solve(g, method, cap)
    return res.value, res.coloring


def alpha_f_weights(
    g: Graph, method: str = ENUMERATE, cap: int | None = None
) -> tuple[VertexWeighting, Fraction]:
    """Weighting with ``w(V) = n`` minimizing the heaviest independent set, and that minimum."""
    if cap is None:
        cap = CAPS.mis_enumeration if method == ENUMERATE else CAPS.fractional_cg
    res = _solve(g, method, cap)
    if g.n == 0:
        return VertexWeighting(()), Fraction(0)
    scale = Fraction(g.n) / res.value
    return VertexWeighting(tuple(v * scale for v in res.dual)), scale


def auto_method(n: int) -> str:
    """Enumeration within its cap, column generation beyond it."""
    return ENUMERATE if n <= CAPS.mis_enumeration else COLUMN_GENERATION


def chi_f(g: Graph) -> Fraction:
    return fractional_chromatic(g, auto_method(g.n))[0]
