"""Length-bounded cut: the greedy hitting-set gap decision and an exact oracle.

A length-t cut for terminals u, v is a set of non-terminal vertices (or of
edges) whose deletion leaves no u-v path with at most t hops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections import deque
from itertools import combinations
from typing import Protocol, Sequence

from .errors import GuardExceeded
from .graph import FaultSet, Mode, short_hop_path

EXACT_GUARD = 25


class HopGraph(Protocol):
    n: int

    def adjacency_bits(self) -> Sequence[int]: ...

    def edge_between(self, u: int, v: int) -> int | None: ...


@dataclass(frozen=True)
class LbcInstance:
    graph: HopGraph
    u: int
    v: int
    t: int
    alpha: int = 0
    mode: Mode = Mode.VERTEX

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        n = self.graph.n
        if not (0 <= self.u < n and 0 <= self.v < n):
            raise ValueError(f"terminal out of range 0..{n - 1}")
        if self.u == self.v:
            raise ValueError("terminals must differ")
        if self.t < 1:
            raise ValueError("hop bound t must be positive")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")


@dataclass(frozen=True)
class LbcVerdict:
    answer: bool
    witness_cut: FaultSet | None
    iterations_used: int

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"

    def to_json(self) -> dict:
        return {
            "answer": self.label,
            "witness": None if self.witness_cut is None else sorted(self.witness_cut.members),
            "iterations": self.iterations_used,
        }


def lbc_gap_decide(inst: LbcInstance) -> LbcVerdict:
    """Decide LBC(t, alpha) with at most alpha+1 BFS runs.

    YES is guaranteed when a cut of size <= alpha exists, NO when every cut
    exceeds alpha*t. A YES carries the accumulated cut.
    """
    g, u, v, t = inst.graph, inst.u, inst.v, inst.t
    edge_mode = inst.mode is Mode.EDGE
    adj = list(g.adjacency_bits()) if edge_mode else g.adjacency_bits()
    alive = (1 << g.n) - 1
    cut: set[int] = set()
    for i in range(inst.alpha + 1):
        path = short_hop_path(adj, alive, u, v, t)
        if path is None:
            return LbcVerdict(True, FaultSet(inst.mode, frozenset(cut)), i + 1)
        if edge_mode:
            for a, b in zip(path, path[1:]):
                cut.add(g.edge_between(a, b))
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
        else:
            for x in path[1:-1]:
                cut.add(x)
                alive &= ~(1 << x)
    return LbcVerdict(False, None, inst.alpha + 1)


def _neighbor_sets(adj: Sequence[int]) -> list[set[int]]:
    out = []
    for bits in adj:
        nbrs = set()
        while bits:
            low = bits & -bits
            nbrs.add(low.bit_length() - 1)
            bits ^= low
        out.append(nbrs)
    return out


def _bfs_hops(nbrs, source, depth, dead_v=frozenset(), dead_e=frozenset()):
    # plain queue BFS, deliberately independent of the bitset kernel
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if dist[x] == depth:
            continue
        for y in nbrs[x]:
            if y in dist or y in dead_v or (min(x, y), max(x, y)) in dead_e:
                continue
            dist[y] = dist[x] + 1
            queue.append(y)
    return dist


def lbc_exact(inst: LbcInstance, guard: int = EXACT_GUARD) -> tuple[float, FaultSet | None]:
    """Minimum length-t cut by exhaustive subset enumeration (``alpha`` is ignored).

    Only vertices/edges lying on some u-v path of at most t hops are
    candidates; the guard applies to that pruned set. Returns ``(inf, None)``
    when no vertex cut exists because u and v are adjacent.
    """
    g, u, v, t = inst.graph, inst.u, inst.v, inst.t
    nbrs = _neighbor_sets(g.adjacency_bits())
    du = _bfs_hops(nbrs, u, t)
    dv = _bfs_hops(nbrs, v, t)
    big = t + 1
    if inst.mode is Mode.VERTEX:
        if v in nbrs[u]:
            return math.inf, None
        cands = [x for x in range(g.n) if x not in (u, v) and du.get(x, big) + dv.get(x, big) <= t]
    else:
        cands = []
        for a in range(g.n):
            for b in nbrs[a]:
                if a < b and min(du.get(a, big) + 1 + dv.get(b, big), du.get(b, big) + 1 + dv.get(a, big)) <= t:
                    cands.append((a, b))
    if len(cands) > guard:
        raise GuardExceeded(f"{len(cands)} cut candidates exceed the enumeration guard {guard}")

    for size in range(len(cands) + 1):
        for combo in combinations(cands, size):
            if inst.mode is Mode.VERTEX:
                reach = _bfs_hops(nbrs, u, t, dead_v=frozenset(combo))
                members = combo
            else:
                reach = _bfs_hops(nbrs, u, t, dead_e=frozenset(combo))
                members = tuple(g.edge_between(a, b) for a, b in combo)
            if v not in reach:
                return size, FaultSet(inst.mode, frozenset(members))
    # deleting every candidate always blocks, so the loop returns above
    raise AssertionError("unreachable")
