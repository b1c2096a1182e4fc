"""Random sparsification of blow-ups, and the local-lemma bookkeeping behind it.

A blow-up ``G^(m)`` keeps each edge independently with probability
``p = s^(lambda - 1)`` where ``s = m/x`` and ``lambda = 1/(4g)``.  The bad
events are short cycles surviving and some ``K_{s,s}`` inside an edge's
blow-up losing all its edges.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import mpmath

from .config import CAPS, CapExceeded
from .graph import Graph, chromatic_number, girth
from .kneser import BlowupEmbedding, blow_up
from .report import RunReport

_DPS = 30


@dataclass(frozen=True)
class ButParams:
    x: int
    g: int
    delta: int
    m: int
    s: Fraction
    lam: Fraction
    p: float
    valid: bool
    log_bound: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def but_parameters(x: int, delta: int, g: int, m: int) -> ButParams:
    """``s = m/x``, ``lambda = 1/(4g)``, ``p = s^(lambda-1)``; ``valid`` iff ``m > x (x delta)^(2g-4)``."""
    if x == 2:
        raise ValueError("x = 2 is excluded: a long odd cycle in the blow-up already settles it")
    if x < 1 or delta < 1 or g < 3 or m < 1:
        raise ValueError("need x >= 1, delta >= 1, g >= 3, m >= 1")
    s = Fraction(m, x)
    lam = Fraction(1, 4 * g)
    p = 1.0 if s == 1 else math.exp((float(lam) - 1) * math.log(s))
    p = min(p, 1.0)
    # Python integers are exact at any size, so the comparison needs no logs.
    valid = m > x * (x * delta) ** (2 * g - 4)
    log_bound = math.log(x) + (2 * g - 4) * math.log(x * delta)
    return ButParams(x, g, delta, m, s, lam, p, valid, log_bound)


def sparsify(host: Graph, p: float, seed) -> Graph:
    """Keep each host edge independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph.from_edges(host.n, [e for e in host.edges() if rng.random() < p])


def _mpf(v) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def _log_sum(logs: Sequence) -> mpmath.mpf:
    finite = [v for v in logs if v != -mpmath.inf]
    if not finite:
        return -mpmath.inf
    top = max(finite)
    return top + mpmath.log(mpmath.fsum(mpmath.exp(v - top) for v in finite))


def _log_binomial(a, b) -> mpmath.mpf:
    return mpmath.loggamma(a + 1) - mpmath.loggamma(b + 1) - mpmath.loggamma(a - b + 1)


@dataclass(frozen=True)
class LLLInequalities:
    """Both sides of the two sufficient inequalities, as natural logs."""

    ineq3: bool
    ineq4: bool
    log_lhs3: float
    log_rhs3: float
    log_lhs4: float
    log_rhs4: float
    log_cycle_sum4: float
    binomial_mode: str

    def __iter__(self):
        return iter((self.ineq3, self.ineq4))

    def to_json(self) -> dict:
        return dict(self.__dict__)


def lll_inequalities_hold(x, delta, g: int, s) -> LLLInequalities:
    """Evaluate

    ineq3  0.9 lam (1-lam) ln s >= sum_j s^((2lam-1)j) (s x delta)^(j-2) + e^(-s^(1+lam)/2) C(sx, s)^2
    ineq4  0.4 s^(1+lam)       >= sum_j s^((2lam-1)j) s^2 (s x delta)^(j-2) + e^(-s^(1+lam)/2) C(sx, s)^2

    with ``j`` over ``3..g`` and ``lam = 1/(4g)``, all in log space.  The
    binomial is exact through log-gamma; past the working range it is replaced
    by the upper bound ``(ex)^(2s)`` and the mode says so.
    """
    with mpmath.workdps(_DPS):
        x, delta, s = _mpf(x), _mpf(delta), _mpf(s)
        if s <= 0:
            raise ValueError("s must be positive")
        lam = mpmath.mpf(1) / (4 * g)
        ls = mpmath.log(s)
        lsxd = ls + mpmath.log(x) + mpmath.log(delta)
        cyc3 = [(2 * lam - 1) * j * ls + (j - 2) * lsxd for j in range(3, g + 1)]
        cyc4 = [c + 2 * ls for c in cyc3]
        if s * x < 1e300:
            binom = -s ** (1 + lam) / 2 + 2 * _log_binomial(s * x, s)
            mode = "exact"
        else:
            binom = -s ** (1 + lam) / 2 + 2 * s * (1 + mpmath.log(x))
            mode = "bound-(ex)^2s"
        inner = 0.9 * lam * (1 - lam) * ls
        log_lhs3 = mpmath.log(inner) if inner > 0 else -mpmath.inf
        log_lhs4 = mpmath.log(0.4) + (1 + lam) * ls
        log_rhs3 = _log_sum(cyc3 + [binom])
        log_rhs4 = _log_sum(cyc4 + [binom])
        return LLLInequalities(
            bool(log_lhs3 >= log_rhs3),
            bool(log_lhs4 >= log_rhs4),
            float(log_lhs3),
            float(log_rhs3),
            float(log_lhs4),
            float(log_rhs4),
            float(_log_sum(cyc4)),
            mode,
        )


@dataclass(frozen=True)
class LLLEvent:
    probability: float | Fraction
    y: float | Fraction
    deps: tuple[int, ...] = ()


@dataclass(frozen=True)
class LLLInstance:
    events: tuple[LLLEvent, ...]

    def __post_init__(self):
        n = len(self.events)
        for i, e in enumerate(self.events):
            if not 0 <= e.probability <= 1:
                raise ValueError(f"event {i}: probability outside [0, 1]")
            if not 0 < e.y < 1:
                raise ValueError(f"event {i}: y must lie in (0, 1)")
            for j in e.deps:
                if not 0 <= j < n or j == i:
                    raise ValueError(f"event {i}: bad dependency {j}")
                if i not in self.events[j].deps:
                    raise ValueError(f"dependency {i} -> {j} is not symmetric")


@dataclass(frozen=True)
class LLLResult:
    ok: bool
    margins: tuple
    avoidance_lower_bound: float | Fraction

    def __bool__(self) -> bool:
        return self.ok


def asymmetric_lll_check(inst: LLLInstance) -> LLLResult:
    """``Pr(A) <= y(A) prod_{B in Gamma(A)} (1 - y(B))`` for every event.

    ``margins[i]`` is right side minus left side; the avoidance bound is
    ``prod (1 - y(A))``.
    """
    margins = []
    for e in inst.events:
        rhs = e.y
        for j in e.deps:
            rhs = rhs * (1 - inst.events[j].y)
        margins.append(rhs - e.probability)
    bound = 1
    for e in inst.events:
        bound = bound * (1 - e.y)
    return LLLResult(all(m >= 0 for m in margins), tuple(margins), bound)


def _log_neg_log1m(log_y: mpmath.mpf) -> mpmath.mpf:
    """``ln(-ln(1 - y))`` from ``ln y``, stable for tiny ``y``."""
    if log_y < -40:
        return log_y  # -ln(1-y) = y (1 + y/2 + ...) and y < e^-40
    return mpmath.log(-mpmath.log1p(-mpmath.exp(log_y)))


@dataclass(frozen=True)
class EventClassCheck:
    """Local-lemma verdict for the event classes of the sparsification, one row per class."""

    ok: bool
    margins: dict
    probability_mode: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def lll_event_system_check(x, delta, g: int, s) -> EventClassCheck:
    """Asymmetric LLL on the sparsification's event classes, without the simplifying steps.

    Classes: a surviving cycle of length ``j`` (``3 <= j <= g``) with
    ``y_j = Pr^(1-lam)``, and an emptied ``K_{s,s}`` with
    ``y_0 = e^(-s^(1+lam)/2)``.  Dependency counts follow the degree bound
    ``m delta = s x delta`` of the blow-up: a cycle ``C`` meets at most
    ``|C| (s x delta)^(j-2)`` cycles of length ``j`` and ``|C| C(m, s)^2``
    bicliques; a biclique meets ``s^2 (s x delta)^(j-2)`` and ``C(m, s)^2``.
    ``Pr`` of an emptied biclique is ``(1-p)^(s^2)`` evaluated exactly.
    """
    with mpmath.workdps(_DPS):
        x, delta, s = _mpf(x), _mpf(delta), _mpf(s)
        lam = mpmath.mpf(1) / (4 * g)
        ls = mpmath.log(s)
        lsxd = ls + mpmath.log(x) + mpmath.log(delta)
        log_p = (lam - 1) * ls
        m = s * x
        log_pairs = 2 * _log_binomial(m, s)
        log_y0 = -s ** (1 + lam) / 2
        p = mpmath.exp(log_p)
        if p < 1:
            log_pr_b = s * s * mpmath.log1p(-p)
        else:
            log_pr_b = -mpmath.inf
        log_y = {j: (1 - lam) * j * log_p for j in range(3, g + 1)}
        nl = {j: _log_neg_log1m(log_y[j]) for j in log_y}
        nl0 = _log_neg_log1m(log_y0)

        margins = {}
        for c in range(3, g + 1):
            # ln rhs = ln y_c - sum count * (-ln(1 - y))
            penalty = [mpmath.log(c) + (j - 2) * lsxd + nl[j] for j in log_y]
            penalty.append(mpmath.log(c) + log_pairs + nl0)
            rhs = log_y[c] - mpmath.exp(_log_sum(penalty))
            margins[f"cycle-{c}"] = float(rhs - c * log_p)
        penalty = [2 * ls + (j - 2) * lsxd + nl[j] for j in log_y]
        penalty.append(log_pairs + nl0)
        rhs = log_y0 - mpmath.exp(_log_sum(penalty))
        margins["biclique"] = float(rhs - log_pr_b) if log_pr_b != -mpmath.inf else math.inf
        return EventClassCheck(all(v >= 0 for v in margins.values()), margins, "exact-(1-p)^(s^2)")


@dataclass(frozen=True)
class KSSResult:
    ok: bool
    mode: str
    counterexample: tuple | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        ce = None
        if self.counterexample:
            a, b, X, Y = self.counterexample
            ce = {"edge": [a, b], "X": list(X), "Y": list(Y)}
        return {"ok": self.ok, "mode": self.mode, "counterexample": ce, "checked": self.checked}


def kss_property_check(
    h: Graph,
    embedding: BlowupEmbedding,
    s,
    mode: str = "auto",
    trials: int = 1000,
    seed=0,
    budget: int | None = None,
) -> KSSResult:
    """Every ``X``, ``Y`` of size ``>= s`` in the classes of a base edge have an ``h``-edge between them.

    Only sets of size ``ceil(s)`` matter.  For each ``X`` the check looks at
    the vertices of the other class with no neighbour in ``X``; a failing
    ``Y`` exists iff there are at least ``ceil(s)`` of them.  Exhaustive mode
    runs over every ``X`` and needs ``C(m, ceil(s))^2`` per edge within
    ``budget``; sampled mode draws ``trials`` random ``X`` per edge and side.
    """
    k = max(1, math.ceil(Fraction(s)))
    m = embedding.power
    if h.n != embedding.host.n:
        raise ValueError("h must be a spanning subgraph of the embedding host")
    budget = CAPS.kss_exhaustive if budget is None else budget
    if k > m:
        return KSSResult(True, "exhaustive", None, 0)
    per_edge = math.comb(m, k) ** 2
    if mode == "auto":
        mode = "exhaustive" if per_edge <= budget else "sampled"
    if mode == "exhaustive" and per_edge > budget:
        raise CapExceeded(f"exhaustive check needs {per_edge} pairs per edge, budget {budget}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    adj = h._adjset
    rng = random.Random(seed)
    checked = 0

    def failing_y(X, other):
        hit = set()
        for u in X:
            hit |= adj[u]
        free = [v for v in other if v not in hit]
        return tuple(free[:k]) if len(free) >= k else None

    for a, b in embedding.base.edges():
        ca, cb = embedding.classes[a], embedding.classes[b]
        if mode == "exhaustive":
            xs = combinations(ca, k)
        else:
            xs = (tuple(sorted(rng.sample(ca, k))) for _ in range(trials))
        for X in xs:
            checked += 1
            Y = failing_y(X, cb)
            if Y is not None:
                return KSSResult(False, mode, (a, b, X, Y), checked)
        if mode == "sampled":
            # sample from the other side too, since the draw is not symmetric
            for _ in range(trials):
                Y = tuple(sorted(rng.sample(cb, k)))
                checked += 1
                X = failing_y(Y, ca)
                if X is not None:
                    return KSSResult(False, mode, (a, b, X, Y), checked)
    return KSSResult(True, mode, None, checked)


def short_cycles(h: Graph, g: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every cycle of length ``<= g``, each once: it starts at its smallest
    vertex and its second vertex is smaller than its last."""
    if g < 3:
        raise ValueError("g must be >= 3")
    cap = CAPS.cycle_enumeration if cap is None else cap
    adj = h.adj
    out: list[tuple[int, ...]] = []

    for start in range(h.n):
        path = [start]
        on_path = {start}

        def dfs(v: int) -> None:
            for u in adj[v]:
                if u == start and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                    if len(out) > cap:
                        raise CapExceeded(f"more than {cap} cycles of length <= {g}")
                elif u > start and u not in on_path and len(path) < g:
                    path.append(u)
                    on_path.add(u)
                    dfs(u)
                    path.pop()
                    on_path.discard(u)

        dfs(start)
    out.sort(key=lambda c: (len(c), c))
    return out


def _cycle_edges(c: Sequence[int]) -> list[tuple[int, int]]:
    return [tuple(sorted((c[i], c[(i + 1) % len(c)]))) for i in range(len(c))]


REJECTION = "rejection"
RESAMPLE = "resample"
RESAMPLE_CYCLES = "resample-cycles"


def _bad_events(host: Graph, g: int, emb: BlowupEmbedding, s, with_bicliques: bool) -> list[tuple[bool, tuple[int, ...]]]:
    """Events as ``(is_cycle, host edge indices)``: a cycle is bad when all its
    edges survive, a biclique when none does."""
    index = {e: i for i, e in enumerate(host.edges())}
    events = [(True, tuple(index[e] for e in _cycle_edges(c))) for c in short_cycles(host, g)]
    if with_bicliques:
        k = max(1, math.ceil(Fraction(s)))
        if math.comb(emb.power, k) ** 2 * emb.base.m > CAPS.kss_exhaustive:
            raise CapExceeded("too many biclique events to resample")
        for a, b in emb.base.edges():
            for X in combinations(emb.classes[a], k):
                for Y in combinations(emb.classes[b], k):
                    events.append((False, tuple(index[tuple(sorted((u, v)))] for u in X for v in Y)))
    return events


def _resample(keep: list[bool], p: float, events, rng: random.Random, rounds: int) -> int:
    """Redraw the edges of one violated event, chosen at random, until none is left.

    Returns the number of redraws; equal to ``rounds`` if it gave up.
    """
    for r in range(rounds):
        bad = [
            ev for is_cycle, ev in events
            if (all(keep[i] for i in ev) if is_cycle else not any(keep[i] for i in ev))
        ]
        if not bad:
            return r
        for i in rng.choice(bad):
            keep[i] = rng.random() < p
    return rounds


def but_pipeline(
    base: Graph,
    x: int,
    g: int,
    m: int,
    seed=0,
    budget: int = 100,
    p: float | None = None,
    strategy: str = REJECTION,
    resample_rounds: int = 2000,
    stop_on_success: bool = False,
    record_edges: bool = False,
) -> RunReport:
    """Sample sparsified blow-ups of ``base`` and score them for girth ``> g`` and ``chi > x``.

    ``rejection`` keeps every independent draw as is.  ``resample`` then
    redraws the edges of violated events (short cycles and emptied
    bicliques) one event at a time; ``resample-cycles`` does the same with
    cycle events only.  Both resampling strategies change the distribution
    away from plain independent sampling and are recorded in ``modes``.
    With ``record_edges`` every sample also carries its edge list.
    """
    chi_base, _ = chromatic_number(base)
    if chi_base <= x:
        raise ValueError(f"chi(base) = {chi_base} is not larger than x = {x}")
    delta = base.max_degree
    params = but_parameters(x, max(delta, 1), g, m)
    prob = params.p if p is None else float(p)
    faithful = p is None and params.valid
    host, emb = blow_up(base, m)
    if strategy not in (REJECTION, RESAMPLE, RESAMPLE_CYCLES):
        raise ValueError(f"unknown strategy {strategy!r}")
    events = _bad_events(host, g, emb, params.s, strategy == RESAMPLE) if strategy != REJECTION else []
    host_edges = list(host.edges())
    exact_chi = host.n <= CAPS.exact_chi

    samples = []
    successes = girth_ok = chi_ok = 0
    for attempt in range(budget):
        sub_seed = f"{seed}/{attempt}"
        h = sparsify(host, prob, sub_seed)
        rounds = 0
        if strategy != REJECTION:
            present = set(h.edges())
            keep = [e in present for e in host_edges]
            rounds = _resample(keep, prob, events, random.Random(sub_seed + "/resample"), resample_rounds)
            h = Graph.from_edges(host.n, [e for e, k in zip(host_edges, keep) if k])
        gi = girth(h)
        cycles = short_cycles(h, g)
        if (len(cycles) == 0) != (gi > g):
            raise AssertionError("short-cycle enumeration disagrees with girth")
        chi = chromatic_number(h)[0] if exact_chi else None
        g_ok = gi > g
        c_ok = chi is not None and chi > x
        girth_ok += g_ok
        chi_ok += c_ok
        successes += g_ok and c_ok
        samples.append(
            {"attempt": attempt, "edges": h.m, "girth": gi, "short_cycles": len(cycles), "chi": chi,
             "girth_ok": g_ok, "chi_ok": c_ok, "resample_rounds": rounds,
             "resample_converged": strategy == REJECTION or rounds < resample_rounds}
        )
        if record_edges:
            samples[-1]["edge_list"] = [list(e) for e in h.edges()]
        if stop_on_success and g_ok and c_ok:
            break

    lll = lll_inequalities_hold(x, max(delta, 1), g, params.s) if params.s > 1 else None
    return RunReport(
        command=["but_pipeline"],
        seed=seed if isinstance(seed, int) else None,
        modes={
            "parameters": "faithful" if faithful else "override",
            "strategy": strategy,
            "chi": "exact" if exact_chi else "skipped",
        },
        results={
            "base": {"n": base.n, "m": base.m, "chi": chi_base, "max_degree": delta},
            "x": x,
            "g": g,
            "m": m,
            "p": prob,
            "params": params,
            "host": {"n": host.n, "m": host.m},
            "samples": samples,
            "summary": {
                "samples": len(samples),
                "girth_ok": girth_ok,
                "chi_ok": chi_ok,
                "successes": successes,
            },
            "lll": lll,
        },
    )
