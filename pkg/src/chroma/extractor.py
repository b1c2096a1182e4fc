"""Triangle-free extraction under a vertex weighting.

Everything here works relative to an :class:`OrderedWeightedGraph`: vertices
are ranked by non-increasing weight (ties by index) and "the first ``k``
vertices of ``Y``" always means the first ``k`` in that ranking.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import CAPS, check_cap
from .fractional import (
    FractionalColoring,
    VertexWeighting,
    alpha_f_weights,
    auto_method,
    chi_f,
    enumerate_maximal_independent_sets,
    fractional_chromatic,
    max_weight_independent_set,
)
from .graph import Graph, VertexOrder, induced, left_neighborhood, triangles
from .rodl import descent_length, shrink_factor


@dataclass(frozen=True)
class OrderedWeightedGraph:
    g: Graph
    w: VertexWeighting
    ord: VertexOrder = field(init=False)
    _colorings: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.w) != self.g.n:
            raise ValueError("weighting length must equal n")
        if self.w.total <= 0:
            raise ValueError("w(V) must be positive")
        object.__setattr__(self, "ord", VertexOrder.by_weight(self.w.w))
        object.__setattr__(self, "_colorings", {})

    @classmethod
    def unit(cls, g: Graph) -> "OrderedWeightedGraph":
        return cls(g, VertexWeighting.uniform(g.n))

    @classmethod
    def alpha_f(cls, g: Graph) -> "OrderedWeightedGraph":
        """Ordered by the optimal fractional-independence weighting."""
        return cls(g, alpha_f_weights(g, auto_method(g.n))[0])

    @property
    def n(self) -> int:
        return self.g.n

    def sort(self, vertices: Iterable[int]) -> list[int]:
        pos = self.ord.position
        return sorted(set(vertices), key=pos.__getitem__)

    def left(self, v: int, within: Iterable[int] | None = None) -> list[int]:
        """``L_A(v)`` as a vertex list (``A`` defaults to all of ``V``)."""
        nbrs = left_neighborhood(self.g, self.ord, v)
        if within is not None:
            nbrs = nbrs & frozenset(within)
        return sorted(nbrs)

    def left_coloring(self, v: int) -> FractionalColoring:
        """Optimal fractional coloring ``u_v`` of ``L_G(v)``, in original vertex ids."""
        if v not in self._colorings:
            verts = self.left(v)
            sub, back = induced(self.g, verts)
            _, fc = fractional_chromatic(sub, auto_method(sub.n))
            entries = tuple((frozenset(back[i] for i in s), y) for s, y in fc.entries)
            self._colorings[v] = FractionalColoring(entries)
        return self._colorings[v]

    def restrict(self, vertices: Sequence[int]) -> tuple["OrderedWeightedGraph", list[int]]:
        """Induced ordered subgraph; local indices follow ``sorted(vertices)``."""
        sub, back = induced(self.g, vertices)
        return OrderedWeightedGraph(sub, self.w.restrict(back)), back


def prefix(Y: Sequence[int], s) -> list[int]:
    """``Y_s``: the first ``floor(s)`` elements of the ordered list ``Y``."""
    return list(Y[: max(0, math.floor(Fraction(s)))])


def _positions(X: Iterable[int], Y: Sequence[int]) -> list[int]:
    index = {y: i for i, y in enumerate(Y)}
    try:
        return sorted(index[x] + 1 for x in X)
    except KeyError as exc:
        raise ValueError(f"vertex {exc.args[0]} of X is not in Y") from None


def is_principal(X: Iterable[int], Y: Sequence[int], s) -> bool:
    """Nonempty ``X`` with every element among the first ``floor(s|X|)`` of ``Y``."""
    pos = _positions(X, Y)
    if not pos:
        return False
    return pos[-1] <= math.floor(Fraction(s) * len(pos))


def is_sparse(X: Iterable[int], Y: Sequence[int], s) -> bool:
    """No nonempty subset of ``X`` is ``s``-principal in ``Y``.

    The best candidate of size ``j`` is the ``j`` earliest elements of ``X``,
    so it suffices that the ``j``-th earliest sits past position ``floor(sj)``.
    """
    s = Fraction(s)
    return all(p > math.floor(s * j) for j, p in enumerate(_positions(X, Y), start=1))


def sparse_weight_check(X: Iterable[int], Y: Sequence[int], s, w: VertexWeighting | Sequence) -> bool:
    """``w(X) <= w(Y)/s`` for an ``s``-sparse ``X``; a falsification harness for the weight bound."""
    X = list(X)
    if not is_sparse(X, Y, s):
        raise ValueError("X is not s-sparse in Y")
    weights = w.w if isinstance(w, VertexWeighting) else [Fraction(v) for v in w]
    if any(weights[a] < weights[b] for a, b in zip(Y, Y[1:])):
        raise ValueError("Y must be listed in non-increasing weight order")
    wx = sum((weights[v] for v in X), Fraction(0))
    wy = sum((weights[v] for v in Y), Fraction(0))
    return wx <= wy / Fraction(s)


@dataclass(frozen=True)
class ReducibleResult:
    ok: bool
    witness: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def reducible_floor(owg: OrderedWeightedGraph, x) -> Fraction:
    x = Fraction(x)
    return owg.w.total / (x * (x + 1) ** 2)


def is_reducible(owg: OrderedWeightedGraph, A: Iterable[int], x, l) -> ReducibleResult:
    A = frozenset(A)
    if not A:
        raise ValueError("A must be nonempty")
    x, l = Fraction(x), Fraction(l)
    if owg.w.of(A) < reducible_floor(owg, x):
        return ReducibleResult(False, None, "weight")
    limit = l * shrink_factor(x, 1)
    for v in owg.sort(A):
        sub, _ = induced(owg.g, owg.left(v, A))
        if chi_f(sub) > limit:
            return ReducibleResult(False, v, "left-chi_f")
    return ReducibleResult(True)


@dataclass(frozen=True)
class TypePartition:
    A: frozenset[int]
    T1: frozenset[int]
    T2: frozenset[int]
    t: dict[int, Fraction]
    disjoint: dict[int, Fraction]


def classify_types(owg: OrderedWeightedGraph, A: Iterable[int], x) -> TypePartition:
    """Split ``A`` by how much of ``u_v`` lies on independent sets missing ``A``."""
    A = frozenset(A)
    x = Fraction(x)
    t1, t2, ts, dis = set(), set(), {}, {}
    for v in A:
        fc = owg.left_coloring(v)
        t = fc.total
        d = sum((y for s, y in fc.entries if not (s & A)), Fraction(0))
        ts[v], dis[v] = t, d
        (t1 if d <= t / (6 * (x + 1)) else t2).add(v)
    return TypePartition(A, frozenset(t1), frozenset(t2), ts, dis)


def is_dense(owg: OrderedWeightedGraph, A: Iterable[int], Rbar: Iterable[int], x) -> bool:
    A = frozenset(A)
    rbar = owg.sort(Rbar)
    if not A:
        raise ValueError("A must be nonempty")
    if not A <= frozenset(rbar):
        raise ValueError("A must lie inside Rbar")
    x = Fraction(x)
    if not is_principal(A, rbar, x + 1):
        return False
    return len(classify_types(owg, A, x).T2) * (x + 1) <= len(A)


def _pick(rng: random.Random, entries) -> frozenset[int]:
    """One set, chosen with probability proportional to its (rational) weight."""
    den = math.lcm(*(y.denominator for _, y in entries))
    ints = [y.numerator * (den // y.denominator) for _, y in entries]
    r = rng.randrange(sum(ints))
    for (s, _), k in zip(entries, ints):
        if r < k:
            return s
        r -= k
    raise AssertionError("unreachable")


def random_attachment(owg: OrderedWeightedGraph, R: Iterable[int], H0: Graph, seed) -> Graph:
    """Join every vertex outside ``R`` to one independent set of its left neighbourhood.

    ``H0`` is a spanning graph whose edges lie inside ``R``.  Each vertex draws
    from its own stream seeded by ``(seed, v)``, so the result does not depend
    on the order in which vertices are processed.
    """
    R = frozenset(R)
    if H0.n != owg.n:
        raise ValueError("H0 must be spanning (same vertex count as G)")
    for u, v in H0.edges():
        if u not in R or v not in R or not owg.g.has_edge(u, v):
            raise ValueError(f"H0 edge ({u}, {v}) must be an edge of G inside R")
    edges = list(H0.edges())
    for v in owg.ord.perm:
        if v in R:
            continue
        fc = owg.left_coloring(v)
        entries = [(s, y) for s, y in fc.entries if y > 0]
        if not entries:
            continue
        chosen = _pick(random.Random(f"{seed}/{v}"), entries)
        edges.extend((u, v) for u in chosen)
    h = Graph.from_edges(owg.n, edges)
    if triangles(h):
        raise AssertionError("random attachment produced a triangle")
    return h


def dense_probability_base(x) -> float:
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    return math.e * 6 ** (-x / (x + 1)) * (x + 1) ** (1 / (x + 1))


def dense_bound_holds(x) -> bool:
    return dense_probability_base(x) < 0.5


def dense_count_bound_holds(k: int, x) -> bool:
    """``C(floor(k(x+1)), k) < e^k (x+1)^k``, compared in log space."""
    x = Fraction(x)
    top = math.floor(k * (x + 1))
    lhs = math.lgamma(top + 1) - math.lgamma(k + 1) - math.lgamma(top - k + 1)
    return lhs < k * (1 + math.log(x + 1))


def step_integral(weights: Sequence, lo, hi) -> Fraction:
    """``int_lo^hi f(z) dz`` with ``f(z) = weights[ceil(z) - 1]``.

    This is the reading of a sum whose bounds are not integers: whole terms
    for the integer part and a proportional share of the boundary terms.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo <= hi <= len(weights):
        raise ValueError("need 0 <= lo <= hi <= len(weights)")
    total = Fraction(0)
    z = lo
    while z < hi:
        idx = math.floor(z)  # f is weights[idx] on (idx, idx+1]
        nxt = min(hi, Fraction(idx + 1))
        total += (nxt - z) * Fraction(weights[idx])
        z = nxt
    return total


@dataclass(frozen=True)
class ExtractionCertificate:
    H: Graph
    triangle_free: bool
    max_independent_weight: Fraction
    max_independent_set: frozenset[int]
    target: Fraction
    accepted: bool
    attempts: int
    family: tuple[frozenset[int], ...] = ()
    x: Fraction = Fraction(0)
    l: Fraction = Fraction(0)

    def check(self, owg: OrderedWeightedGraph) -> bool:
        """Recompute every field from ``H`` and ``owg``."""
        if self.H.n != owg.n or any(not owg.g.has_edge(u, v) for u, v in self.H.edges()):
            return False
        _, best = max_weight_independent_set(self.H, owg.w)
        return (
            (not triangles(self.H)) == self.triangle_free
            and best == self.max_independent_weight
            and owg.w.of(self.max_independent_set) == best
            and self.H.is_independent(self.max_independent_set)
            and self.target == owg.w.total / self.x
            and self.accepted == (best <= self.target)
        )

    def to_json(self) -> dict:
        return {
            "n": self.H.n,
            "edges": [list(e) for e in self.H.edges()],
            "triangle_free": self.triangle_free,
            "max_independent_weight": self.max_independent_weight,
            "max_independent_set": sorted(self.max_independent_set),
            "target": self.target,
            "accepted": self.accepted,
            "attempts": self.attempts,
            "family": [sorted(a) for a in self.family],
            "family_search": "greedy over neighbourhood prefixes (not exhaustive)",
            "x": self.x,
            "l": self.l,
        }


def _certify(owg, h, x, l, attempts, family) -> ExtractionCertificate:
    mis, best = max_weight_independent_set(h, owg.w)
    target = owg.w.total / x
    return ExtractionCertificate(
        h, not triangles(h), best, mis, target, best <= target, attempts, tuple(family), x, l
    )


def candidate_pool(owg: OrderedWeightedGraph, used: frozenset[int] = frozenset()) -> list[list[int]]:
    """Weight-order prefixes of each closed neighbourhood among unused vertices, largest first."""
    pool = []
    for v in owg.ord.perm:
        if v in used:
            continue
        closed = owg.sort(u for u in (*owg.g.adj[v], v) if u not in used)
        pool.extend(closed[:k] for k in range(len(closed), 0, -1))
    return pool


def reducible_family(
    owg: OrderedWeightedGraph, x, l, extra: Sequence[Iterable[int]] = ()
) -> list[frozenset[int]]:
    """Greedy pairwise-disjoint family of reducible sets.

    Caller-supplied sets are tried first, then the neighbourhood-prefix pool
    rebuilt over the vertices not yet covered.
    """
    family: list[frozenset[int]] = []
    used: frozenset[int] = frozenset()
    for cand in extra:
        a = frozenset(cand)
        if a and not (a & used) and is_reducible(owg, a, x, l):
            family.append(a)
            used |= a
    progress = True
    while progress:
        progress = False
        for cand in candidate_pool(owg, used):
            a = frozenset(cand)
            if is_reducible(owg, a, x, l):
                family.append(a)
                used |= a
                progress = True
                break
    return family


def extract_triangle_free(
    owg: OrderedWeightedGraph,
    x,
    l,
    budget: int = 100,
    seed=0,
    extra_sets: Sequence[Iterable[int]] = (),
    _depth: int = 0,
    _max_depth: int | None = None,
) -> ExtractionCertificate:
    """Search for a triangle-free spanning ``H`` with every independent set of weight ``<= w(V)/x``.

    Reducible sets are handled recursively with ``(x+1, l(1 - 1/(6(x+1))))``
    and their union forms ``H0``; the remaining vertices are attached at
    random.  Up to ``budget`` attachments are tried and the first one meeting
    the target is returned; otherwise the best one seen, with ``accepted``
    false.
    """
    x, l = Fraction(x), Fraction(l)
    if x < 1 or l < 1:
        raise ValueError("need x >= 1 and l >= 1")
    if l < 2 and not triangles(owg.g):
        return _certify(owg, owg.g, x, l, 0, ())
    if _max_depth is None:
        _max_depth = descent_length(x, l)[0]
    if _depth > _max_depth:
        raise AssertionError("recursion deeper than the descent sequence")

    family = reducible_family(owg, x, l, extra_sets)
    h0_edges = []
    for idx, a in enumerate(family):
        sub, back = owg.restrict(sorted(a))
        inner = extract_triangle_free(
            sub, x + 1, l * shrink_factor(x, 1), budget, f"{seed}/A{idx}", (), _depth + 1, _max_depth
        )
        h0_edges.extend((back[u], back[v]) for u, v in inner.H.edges())
    R = frozenset().union(*family) if family else frozenset()
    h0 = Graph.from_edges(owg.n, h0_edges)

    if budget <= 0:
        return _certify(owg, h0, x, l, 0, family)
    best = None
    for attempt in range(budget):
        h = random_attachment(owg, R, h0, f"{seed}/{attempt}")
        cert = _certify(owg, h, x, l, attempt + 1, family)
        if cert.accepted:
            return cert
        if best is None or cert.max_independent_weight < best.max_independent_weight:
            best = cert
    return ExtractionCertificate(**{**best.__dict__, "attempts": budget})


def h0_union_bound_check(
    parts: Sequence[tuple[Sequence[int], Graph, Fraction]], w: VertexWeighting | Sequence, cap: int | None = None
) -> bool:
    """Every maximal independent set of the disjoint union weighs at most the sum of part bounds.

    Each part is ``(A, H_A, bound)`` where ``H_A`` has local vertex ``i``
    standing for ``sorted(A)[i]``.
    """
    weights = w.w if isinstance(w, VertexWeighting) else [Fraction(v) for v in w]
    seen: set[int] = set()
    verts: list[int] = []
    edges: list[tuple[int, int]] = []
    total_bound = Fraction(0)
    for a, h, bound in parts:
        a = sorted(a)
        if seen & set(a):
            raise ValueError("parts must be pairwise disjoint")
        if h.n != len(a):
            raise ValueError("H_A must have one vertex per element of A")
        seen |= set(a)
        edges.extend((a[u], a[v]) for u, v in h.edges())
        verts.extend(a)
        total_bound += Fraction(bound)
    union, back = induced(Graph.from_edges(max(verts, default=-1) + 1, edges), verts)
    check_cap(union.n, CAPS.mis_enumeration if cap is None else cap, "union enumeration")
    for s in enumerate_maximal_independent_sets(union, cap=cap):
        if sum((weights[back[i]] for i in s), Fraction(0)) > total_bound:
            return False
    return True
