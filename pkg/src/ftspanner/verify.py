"""Brute-force ground truth: fault-tolerant spanner checks, girth, size audit."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import GuardExceeded
from .graph import INF, FaultSet, Graph, Mode, dijkstra
from .greedy import SpannerParams

DEFAULT_ENUMERATION_LIMIT = 2_000_000


@dataclass(frozen=True)
class Counterexample:
    fault_set: FaultSet
    u: int
    v: int
    spanner_dist: float
    required: float

    def to_json(self) -> dict:
        return {
            "fault_set": sorted(self.fault_set.members),
            "mode": self.fault_set.mode.value,
            "u": self.u,
            "v": self.v,
            "spanner_dist": None if self.spanner_dist == INF else self.spanner_dist,
            "required": self.required,
        }


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    counterexample: Counterexample | None
    fault_sets_checked: int

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
            "fault_sets_checked": self.fault_sets_checked,
        }


def count_fault_sets(universe: int, f: int) -> int:
    return sum(math.comb(universe, i) for i in range(min(f, universe) + 1))


def fault_sets(g: Graph, p: SpannerParams, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[FaultSet]:
    """All fault sets of size <= f, by size then lexicographically."""
    universe = g.n if p.mode is Mode.VERTEX else g.m
    total = count_fault_sets(universe, p.f)
    if total > limit:
        raise GuardExceeded(f"{total} fault sets exceed the enumeration limit {limit}")
    for size in range(min(p.f, universe) + 1):
        for combo in combinations(range(universe), size):
            yield FaultSet(p.mode, frozenset(combo))


def _check_subset(g: Graph, h: Iterable[int]) -> frozenset[int]:
    h = frozenset(h)
    bad = [i for i in h if not 0 <= i < g.m]
    if bad:
        raise ValueError(f"spanner edge ids {sorted(bad)[:5]} are not edges of the graph")
    return h


def verify_ft_spanner(
    g: Graph, h: Iterable[int], p: SpannerParams, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> VerifyReport:
    """Exhaustively check the f-fault-tolerant (2k-1)-spanner property.

    Uses the edge-endpoint reduction: only edges {u,v} of G minus F that are
    shortest paths themselves need d_{H-F}(u,v) <= t*w(u,v). Edges of H that
    survive F satisfy this trivially and are skipped.
    """
    h = _check_subset(g, h)
    t = p.t
    missing = [e for e in g.edges if e.id not in h]
    checked = 0
    for faults in fault_sets(g, p, limit):
        checked += 1
        dead = faults.members
        for e in missing:
            if p.mode is Mode.VERTEX:
                if e.u in dead or e.v in dead:
                    continue
            elif e.id in dead:
                continue
            required = t * e.w
            d_h = dijkstra(g, e.u, faults, target=e.v, allowed=h, bound=required).get(e.v, INF)
            if d_h <= required:
                continue
            d_g = dijkstra(g, e.u, faults, target=e.v).get(e.v, INF)
            if d_g == e.w:
                # the bounded search stopped early; report the true spanner distance
                d_h = dijkstra(g, e.u, faults, target=e.v, allowed=h).get(e.v, INF)
                return VerifyReport(False, Counterexample(faults, e.u, e.v, d_h, required), checked)
    return VerifyReport(True, None, checked)


def verify_definition(
    g: Graph, h: Iterable[int], p: SpannerParams, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> VerifyReport:
    """Slow check of the raw definition over all surviving vertex pairs."""
    h = _check_subset(g, h)
    t = p.t
    checked = 0
    for faults in fault_sets(g, p, limit):
        checked += 1
        dead_v = faults.members if p.mode is Mode.VERTEX else frozenset()
        for u in range(g.n):
            if u in dead_v:
                continue
            dg = dijkstra(g, u, faults)
            dh = dijkstra(g, u, faults, allowed=h)
            for v in range(u + 1, g.n):
                if v in dead_v or v not in dg:
                    continue
                d_h = dh.get(v, INF)
                if d_h > t * dg[v]:
                    return VerifyReport(False, Counterexample(faults, u, v, d_h, t * dg[v]), checked)
    return VerifyReport(True, None, checked)


def girth_at_most(g: Graph, bound: int) -> list[int] | None:
    """A shortest cycle of ``g`` if its length is at most ``bound``, else None."""
    if bound < 3:
        raise ValueError("bound must be >= 3")
    best_len = bound + 1
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent: dict[int, int | None] = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best_len:
                break
            for y, _, _ in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x] and parent[y] != x:
                    length = dist[x] + dist[y] + 1
                    if length < best_len:
                        best_len = length
                        best = (x, y, parent)
    if best is None:
        return None
    x, y, parent = best

    def up(z):
        chain = []
        while z is not None:
            chain.append(z)
            z = parent[z]
        return chain

    px, py = up(x), up(y)
    return px[::-1] + py[:-1]


def size_bound(n: int, k: int, f: int) -> float:
    """k * f^(1-1/k) * n^(1+1/k); falls back to n^(1+1/k) when f = 0."""
    if f == 0:
        return float(n) ** (1 + 1 / k)
    return k * float(f) ** (1 - 1 / k) * float(n) ** (1 + 1 / k)


def size_audit(g: Graph, h: Iterable[int], p: SpannerParams) -> dict:
    edges = len(frozenset(h))
    bound_value = size_bound(g.n, p.k, p.f)
    ratio = edges / bound_value if bound_value else 0.0
    return {"edges": edges, "bound_value": bound_value, "ratio": ratio}
