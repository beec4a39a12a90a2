"""Greedy fault-tolerant spanner constructions.

``exact_greedy`` decides each edge by enumerating fault sets (exponential).
``modified_greedy_unweighted`` and ``modified_greedy_weighted`` replace that
test with the length-bounded-cut gap decision on the partial spanner, which
costs at most f+1 BFS runs per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import GuardExceeded
from .graph import FaultSet, Graph, Mode, dijkstra
from .lbc import LbcInstance, lbc_gap_decide


@dataclass(frozen=True)
class SpannerParams:
    k: int
    f: int
    mode: Mode = Mode.VERTEX

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.f < 0:
            raise ValueError("f must be >= 0")

    @property
    def t(self) -> int:
        return 2 * self.k - 1


@dataclass(frozen=True)
class Limits:
    """Sanity caps. The exact construction refuses instances beyond them."""

    exact_max_n: int = 14
    exact_max_f: int = 2
    max_k: int = 64
    max_f: int = 64

    def check(self, p: SpannerParams) -> None:
        if p.k > self.max_k or p.f > self.max_f:
            raise GuardExceeded(f"k={p.k}, f={p.f} exceed caps k<={self.max_k}, f<={self.max_f}")


DEFAULT_LIMITS = Limits()


@dataclass
class SpannerStats:
    edges_kept: int = 0
    lbc_calls: int = 0
    bfs_runs: int = 0
    edge_order: list[int] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "edges_kept": self.edges_kept,
            "lbc_calls": self.lbc_calls,
            "bfs_runs": self.bfs_runs,
            "edge_order": list(self.edge_order),
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class SpannerResult:
    spanner_edge_ids: frozenset[int]
    stats: SpannerStats


class PartialSpanner:
    """Growing subgraph H of ``g`` on the same vertex set, O(1) edge insertion."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self._bits = [0] * g.n
        self.kept: set[int] = set()

    def add(self, eid: int) -> None:
        e = self.g.edges[eid]
        self._bits[e.u] |= 1 << e.v
        self._bits[e.v] |= 1 << e.u
        self.kept.add(eid)

    def adjacency_bits(self) -> list[int]:
        return self._bits

    def edge_between(self, u: int, v: int) -> int | None:
        eid = self.g.edge_between(u, v)
        return eid if eid in self.kept else None


def weight_order(g: Graph) -> list[int]:
    """Edge ids by nondecreasing weight, ties by ascending id."""
    return sorted(range(g.m), key=lambda i: (g.edges[i].w, i))


def _violating_fault_set_exists(g: Graph, h: PartialSpanner, eid: int, p: SpannerParams) -> tuple[bool, int]:
    e = g.edges[eid]
    bound = p.t * e.w
    if p.mode is Mode.VERTEX:
        cands = [x for x in range(g.n) if x != e.u and x != e.v]
    else:
        cands = sorted(h.kept)
    # more faults never shrink distances, so maximal sets suffice
    size = min(p.f, len(cands))
    runs = 0
    allowed = frozenset(h.kept)
    for combo in combinations(cands, size):
        runs += 1
        dist = dijkstra(g, e.u, FaultSet(p.mode, frozenset(combo)), target=e.v, allowed=allowed, bound=bound)
        if e.v not in dist:
            return True, runs
    return False, runs


def exact_greedy(g: Graph, p: SpannerParams, limits: Limits = DEFAULT_LIMITS) -> SpannerResult:
    """Classic fault-tolerant greedy: keep an edge iff some fault set of size <= f stretches it."""
    limits.check(p)
    if g.n > limits.exact_max_n or p.f > limits.exact_max_f:
        raise GuardExceeded(
            f"exact greedy limited to n<={limits.exact_max_n}, f<={limits.exact_max_f}; got n={g.n}, f={p.f}"
        )
    order = weight_order(g)
    h = PartialSpanner(g)
    stats = SpannerStats(edge_order=order)
    for eid in order:
        add, runs = _violating_fault_set_exists(g, h, eid, p)
        stats.bfs_runs += runs
        if add:
            h.add(eid)
    stats.edges_kept = len(h.kept)
    return SpannerResult(frozenset(h.kept), stats)


def modified_greedy_in_order(g: Graph, p: SpannerParams, order: Sequence[int]) -> SpannerResult:
    """The LBC-driven greedy loop over an explicit edge order.

    Any order is sound for unit weights. With general weights only a
    nondecreasing weight order guarantees the stretch; other orders are
    accepted so that failure can be demonstrated.
    """
    order = resolve_order(g, order)
    h = PartialSpanner(g)
    stats = SpannerStats(edge_order=list(order))
    for eid in order:
        e = g.edges[eid]
        verdict = lbc_gap_decide(LbcInstance(h, e.u, e.v, p.t, p.f, p.mode))
        stats.lbc_calls += 1
        stats.bfs_runs += verdict.iterations_used
        if verdict.answer:
            h.add(eid)
    stats.edges_kept = len(h.kept)
    return SpannerResult(frozenset(h.kept), stats)


def resolve_order(g: Graph, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return list(range(g.m))
    order = [int(i) for i in order]
    if sorted(order) != list(range(g.m)):
        raise ValueError("order must be a permutation of the edge ids")
    return order


def modified_greedy_unweighted(
    g: Graph, p: SpannerParams, order: Sequence[int] | None = None, limits: Limits = DEFAULT_LIMITS
) -> SpannerResult:
    """Polynomial greedy for unit-weight graphs; any edge order is valid (default: by id)."""
    limits.check(p)
    if not g.is_unit_weight():
        raise ValueError("modified_greedy_unweighted requires all weights equal to 1")
    return modified_greedy_in_order(g, p, resolve_order(g, order))


def modified_greedy_weighted(g: Graph, p: SpannerParams, limits: Limits = DEFAULT_LIMITS) -> SpannerResult:
    """Polynomial greedy for weighted graphs: unweighted LBC tests in nondecreasing weight order."""
    limits.check(p)
    return modified_greedy_in_order(g, p, weight_order(g))


ALGORITHMS = {
    "exact": exact_greedy,
    "greedy-unweighted": modified_greedy_unweighted,
    "greedy-weighted": modified_greedy_weighted,
}
