"""Kneser graphs, blow-ups, and embeddings of blow-ups into larger Kneser graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .config import CAPS, check_cap
from .graph import Graph


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of ``range(n)`` in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda s: s[::-1])


def colex_rank(subset: Sequence[int]) -> int:
    return sum(math.comb(v, i + 1) for i, v in enumerate(sorted(subset)))


def subset_label(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(subset)) + "}"


def kneser(n: int, k: int, cap: int | None = None) -> Graph:
    """KG(n, k): vertex ``i`` is the ``i``-th k-subset in colex order; edges join disjoint sets."""
    if not 0 < k <= n:
        raise ValueError("need 0 < k <= n")
    check_cap(math.comb(n, k), CAPS.kneser_vertices if cap is None else cap, f"KG({n},{k})")
    subsets = colex_subsets(n, k)
    masks = [sum(1 << v for v in s) for s in subsets]
    edges = [
        (i, j)
        for i in range(len(masks))
        for j in range(i + 1, len(masks))
        if not masks[i] & masks[j]
    ]
    return Graph.from_edges(len(masks), edges)


def kneser_labels(n: int, k: int) -> list[str]:
    return [subset_label(s) for s in colex_subsets(n, k)]


@dataclass(frozen=True)
class BlowupEmbedding:
    """Classes of host vertices, one per base vertex, each of size ``power``."""

    base: Graph
    host: Graph
    classes: tuple[tuple[int, ...], ...]
    power: int

    def format(self) -> str:
        """``class <base-vertex> : <host vertices...>``, 1-based like DIMACS."""
        return "".join(
            f"class {b + 1} : {' '.join(str(h + 1) for h in cls)}\n" for b, cls in enumerate(self.classes)
        )

    @staticmethod
    def parse_classes(text: str) -> list[tuple[int, ...]]:
        classes: dict[int, tuple[int, ...]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            head, sep, tail = line.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] != "class":
                raise ValueError(f"line {lineno}: expected 'class <v> : <hosts>'")
            classes[int(parts[1]) - 1] = tuple(int(t) - 1 for t in tail.split())
        return [classes[b] for b in sorted(classes)]


def blow_up(g: Graph, m: int) -> tuple[Graph, BlowupEmbedding]:
    """``g^(m)``: vertex ``v`` becomes ``v*m .. v*m+m-1``; each edge becomes ``K_{m,m}``."""
    if m < 1:
        raise ValueError("power must be >= 1")
    edges = [(u * m + a, v * m + b) for u, v in g.edges() for a in range(m) for b in range(m)]
    host = Graph.from_edges(g.n * m, edges)
    classes = tuple(tuple(range(v * m, v * m + m)) for v in range(g.n))
    return host, BlowupEmbedding(g, host, classes, m)


def kgbu_power(k: int, t: int, x: int) -> int:
    if x < t:
        return math.comb(k * t, x)
    if x == t:
        return math.comb(k * t, x) - k
    return math.comb(k * (t - 1), x)


def kgbu_embedding(n: int, k: int, t: int, x: int, cap: int | None = None) -> BlowupEmbedding:
    """Blow-up of KG(n, k) inside KG(nt, kt - x).

    The ground set ``range(n*t)`` is cut into ``n`` blocks of ``t``.  A base
    vertex ``S`` owns the union of its ``k`` blocks and its class is every
    way of deleting ``x`` elements from it: only from the first ``t-1``
    positions of each block when ``x > t``, from anywhere when ``x < t``, and
    from anywhere except a whole block when ``x == t``.  Disjoint base sets own
    disjoint blocks, so every cross pair is disjoint in the host.
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if t < 1 or x < 0 or x >= k * t:
        raise ValueError("need t >= 1 and 0 <= x < k*t")
    power = kgbu_power(k, t, x)
    if power < 1:
        raise ValueError(f"parameters (k={k}, t={t}, x={x}) give an empty class")
    host_k = k * t - x
    check_cap(math.comb(n * t, host_k), CAPS.kneser_vertices if cap is None else cap, f"KG({n * t},{host_k})")
    base = kneser(n, k)
    host = kneser(n * t, host_k, cap=cap)

    classes = []
    for s in colex_subsets(n, k):
        blocks = [list(range(b * t, b * t + t)) for b in s]
        owned = [e for blk in blocks for e in blk]
        if x > t:
            removable = [e for blk in blocks for e in blk[:-1]]
        else:
            removable = owned
        members = []
        for removed in combinations(removable, x):
            if x == t and any(set(blk) == set(removed) for blk in blocks):
                continue
            gone = set(removed)
            members.append(colex_rank([e for e in owned if e not in gone]))
        classes.append(tuple(sorted(members)))
    return BlowupEmbedding(base, host, tuple(classes), power)


class Violation(NamedTuple):
    kind: str
    detail: str
    witness: tuple


def verify_blowup_containment(e: BlowupEmbedding) -> Violation | None:
    """``None`` if the classes form a blow-up of ``e.base`` inside ``e.host``; else the first violation."""
    if len(e.classes) != e.base.n:
        return Violation("classes", f"{len(e.classes)} classes for {e.base.n} base vertices", ())
    owner: dict[int, int] = {}
    for b, cls in enumerate(e.classes):
        if len(cls) != e.power or len(set(cls)) != len(cls):
            return Violation("size", f"class {b} has {len(set(cls))} distinct members, expected {e.power}", (b,))
        for h in cls:
            if not 0 <= h < e.host.n:
                return Violation("range", f"host vertex {h} out of range", (b, h))
            if h in owner:
                return Violation("overlap", f"host vertex {h} in classes {owner[h]} and {b}", (owner[h], b, h))
            owner[h] = b
    for a, b in e.base.edges():
        for u in e.classes[a]:
            for v in e.classes[b]:
                if not e.host.has_edge(u, v):
                    return Violation("missing-edge", f"base edge ({a}, {b}) lacks host edge ({u}, {v})", (a, b, u, v))
    return None


@dataclass(frozen=True)
class KneserEHParams:
    """Parameter check for finding a sparse high-girth subgraph in KG(2n, n-2x).

    Large quantities are natural logarithms.
    """

    k: int
    g: int
    x: int
    n: int
    t: int
    z: float
    log_delta: float
    log_power: float
    log_power_needed: float
    rounded: bool
    branch: bool
    ineq_ratio: bool
    ineq_linear: bool
    ineq_girth: bool

    @property
    def power_sufficient(self) -> bool:
        return self.log_power > self.log_power_needed

    def to_json(self) -> dict:
        return dict(self.__dict__, power_sufficient=self.power_sufficient)


def eh_kneser_params(k: int, g: int, x: int, n: int) -> KneserEHParams:
    """Evaluate the sufficient conditions for KG(2n, n-2x) with target (k, g).

    Non-integral ``x/k`` and the derived binomial argument are rounded down,
    which only shrinks the available power and inflates the degree bound.
    """
    if min(k, g, x, n) < 1:
        raise ValueError("k, g, x, n must be positive integers")
    rounded = x % k != 0
    t = max(1, x // k)
    z = n / (2 * x) - 1
    top_exact = (n - x) * (t - 1) / t
    rounded = rounded or top_exact != int(top_exact)
    top = math.floor(top_exact)
    # Degree of KG(2n/t, (n-x)/t) is at most ((n+x)/t)^(2x/t).
    log_delta = (2 * x / t) * math.log((n + x) / t)
    log_power = _log_comb(top, x) if top >= x else -math.inf
    log_power_needed = math.log(k) + (2 * g - 4) * (math.log(k) + log_delta)

    branch = n > x / (0.5 - 1 / (2 * k)) if k > 1 else False
    log1z = math.log1p(z) if z > -1 else -math.inf
    ineq_ratio = (n - x) / x * (t - 1) / t >= 1 + z
    ineq_linear = math.log(3 + 2 * z) < x / 2 * log1z if z > 0 else False
    ineq_girth = 2 * g * (2 * k + 1) * math.log(k) < x / 2 * log1z if z > 0 else False
    return KneserEHParams(
        k, g, x, n, t, z, log_delta, log_power, log_power_needed, rounded, branch, ineq_ratio, ineq_linear, ineq_girth
    )


def _log_comb(a: float, b: float) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)
