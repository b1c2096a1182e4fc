"""Simple undirected graphs on dense integer vertices, plus exact structure routines.

Vertices are always ``0..n-1``.  Graphs are immutable; every routine here is a
pure function of its inputs.
"""
from __future__ import annotations

import hashlib
import io
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .config import CAPS, check_cap


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbors of {v} must be sorted and duplicate-free")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in self._adjset[u]:
                    raise ValueError(f"asymmetric adjacency {v}-{u}")

    @cached_property
    def _adjset(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhood bitmasks, bit ``u`` of ``masks[v]`` set iff ``uv`` is an edge."""
        out = []
        for nbrs in self.adj:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            out.append(mask)
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all(not (self.masks[v] & mask) for v in vs)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexOrder:
    """A linear order ``perm[0] < perm[1] < ...`` of the vertices."""

    perm: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation of 0..n-1")
        pos = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            pos[v] = i
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls(tuple(range(n)))

    @classmethod
    def by_weight(cls, weights: Sequence) -> "VertexOrder":
        """Non-increasing weight, ties broken by ascending vertex index."""
        return cls(tuple(sorted(range(len(weights)), key=lambda v: (-weights[v], v))))

    def before(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def __len__(self) -> int:
        return len(self.perm)


def left_neighborhood(g: Graph, order: VertexOrder, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    pv = order.position[v]
    return frozenset(u for u in g.adj[v] if order.position[u] < pv)


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced on ``vertices``; returns it with the map new index -> old index."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(sorted(index[u] for u in g.adj[v] if u in index)) for v in keep)
    return Graph(len(keep), adj), keep


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or ``math.inf`` for a forest."""
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in g.adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    masks = g.masks
    for u in range(g.n):
        for v in g.adj[u]:
            if v <= u:
                continue
            common = masks[u] & masks[v] & ~((1 << (v + 1)) - 1)
            while common:
                low = common & -common
                out.append((u, v, low.bit_length() - 1))
                common ^= low
    return out


def max_clique(g: Graph) -> list[int]:
    """A maximum clique by simple branch and bound on bitmasks."""
    masks = g.masks
    best: list[int] = []

    def expand(current: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(current) > len(best):
                best = current[:]
            return
        if len(current) + bin(cand).count("1") <= len(best):
            return
        while cand:
            if len(current) + bin(cand).count("1") <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            current.append(v)
            expand(current, cand & masks[v])
            current.pop()

    expand([], (1 << g.n) - 1)
    return sorted(best)


def chromatic_number(g: Graph, cap: int | None = None) -> tuple[int, list[int]]:
    """Exact chromatic number with a certificate coloring (colors ``0..chi-1``).

    DSATUR branch and bound; a maximum clique is precolored and gives the
    lower bound.
    """
    check_cap(g.n, CAPS.exact_chi if cap is None else cap, "chromatic_number")
    n = g.n
    if n == 0:
        return 0, []
    if g.m == 0:
        return 1, [0] * n

    clique = max_clique(g)
    lower = len(clique)
    best_coloring = _dsatur_greedy(g)
    best = max(best_coloring) + 1
    if best == lower:
        return best, best_coloring

    colors = [-1] * n
    counts = [[0] * n for _ in range(n)]
    sat = [0] * n
    uncolored_deg = [g.degree(v) for v in range(n)]

    def assign(v: int, c: int) -> None:
        colors[v] = c
        for u in g.adj[v]:
            counts[u][c] += 1
            if counts[u][c] == 1:
                sat[u] += 1
            uncolored_deg[u] -= 1

    def unassign(v: int) -> None:
        c = colors[v]
        colors[v] = -1
        for u in g.adj[v]:
            counts[u][c] -= 1
            if counts[u][c] == 0:
                sat[u] -= 1
            uncolored_deg[u] += 1

    for c, v in enumerate(clique):
        assign(v, c)

    def search(n_colored: int, used: int) -> bool:
        nonlocal best, best_coloring
        if n_colored == n:
            best = used
            best_coloring = colors[:]
            return best == lower
        v = -1
        key = (-1, -1)
        for u in range(n):
            if colors[u] < 0:
                k = (sat[u], uncolored_deg[u])
                if k > key:
                    key, v = k, u
        row = counts[v]
        for c in range(used + 1):
            if c >= best - 1:
                break
            if row[c]:
                continue
            assign(v, c)
            done = search(n_colored + 1, max(used, c + 1))
            unassign(v)
            if done:
                return True
        return False

    search(len(clique), lower)
    return best, best_coloring


def _dsatur_greedy(g: Graph) -> list[int]:
    colors = [-1] * g.n
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colors[u] < 0),
            key=lambda u: (len({colors[w] for w in g.adj[u] if colors[w] >= 0}), g.degree(u), -u),
        )
        taken = {colors[w] for w in g.adj[v]}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    return len(colors) == g.n and all(colors[u] != colors[v] for u, v in g.edges())


# --- generators -------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def mycielskian(base: Graph) -> Graph:
    """Vertices ``0..n-1`` copy the base, ``n..2n-1`` are shadows, ``2n`` is the apex."""
    n = base.n
    edges = list(base.edges())
    for u, v in base.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + v, 2 * n) for v in range(n))
    return Graph.from_edges(2 * n + 1, edges)


def grotzsch() -> Graph:
    return mycielskian(cycle(5))


def random_graph(n: int, p: float, seed: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph.from_edges(n, (e for e in combinations(range(n), 2) if rng.random() < p))


def generate(kind: str, **params) -> Graph:
    makers = {
        "cycle": lambda: cycle(params["n"]),
        "complete": lambda: complete(params["n"]),
        "path": lambda: path(params["n"]),
        "mycielskian": lambda: mycielskian(params["base"]),
        "random": lambda: random_graph(params["n"], params["p"], params["seed"]),
    }
    if kind not in makers:
        raise ValueError(f"unknown graph kind {kind!r}")
    try:
        return makers[kind]()
    except KeyError as exc:
        raise ValueError(f"missing parameter {exc} for {kind}") from None


# --- DIMACS -----------------------------------------------------------------

class DimacsError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise DimacsError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(lineno, f"malformed problem line {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"non-integer counts in {line!r}") from None
            if n < 0 or m < 0:
                raise DimacsError(lineno, "negative counts")
        elif parts[0] == "e":
            if n is None:
                raise DimacsError(lineno, "edge line before problem line")
            if len(parts) != 3:
                raise DimacsError(lineno, f"malformed edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsError(lineno, f"non-integer endpoint in {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(lineno, f"endpoint out of range 1..{n}")
            if u == v:
                raise DimacsError(lineno, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DimacsError(lineno, f"duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(lineno, f"unknown line type {parts[0]!r}")
    if n is None:
        raise DimacsError(0, "missing problem line")
    if len(edges) != m:
        raise DimacsError(0, f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_dimacs(g: Graph, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"c {c}\n")
    buf.write(f"p edge {g.n} {g.m}\n")
    for u, v in g.edges():
        buf.write(f"e {u + 1} {v + 1}\n")
    return buf.getvalue()


def read_dimacs(path: str | Path) -> Graph:
    return parse_dimacs(Path(path).read_text())


def write_dimacs(g: Graph, path: str | Path, comments: Sequence[str] = ()) -> None:
    from .report import atomic_write_text

    atomic_write_text(path, format_dimacs(g, comments))


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(format_dimacs(g).encode()).hexdigest()
