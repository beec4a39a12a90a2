"""Padded decompositions from exponentially shifted BFS clusterings.

Each partition is computed independently: every vertex c draws a shift
delta_c ~ Exp(beta), truncated so cluster radii stay below the hop cap, and
every vertex x joins the center minimizing (dist(c, x) - delta_c, c).
All partitions run in parallel, so the LOCAL round count is that of one.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from ..graph import Graph
from .network import LOCAL, Network, SimConfig, SimTrace, lg, node_rng

DECOMPOSITION_STREAM = 1


@dataclass
class ClusterDecomposition:
    partitions: list[list[int]]  # partition j: vertex -> cluster id
    centers: dict[int, int]  # cluster id -> center vertex
    hop_radius: dict[int, int]  # cluster id -> max tree depth from its center
    parents: list[list[int | None]]  # partition j: BFS-tree parent inside the cluster
    radius_cap: int
    diameter_bound: float

    @property
    def count(self) -> int:
        return len(self.partitions)

    def clusters(self, j: int) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x, cid in enumerate(self.partitions[j]):
            out.setdefault(cid, []).append(x)
        return out

    def uncovered_edges(self, g: Graph) -> list[int]:
        return [
            e.id for e in g.edges
            if not any(part[e.u] == part[e.v] for part in self.partitions)
        ]

    def problems(self, g: Graph) -> list[str]:
        """Type-invariant violations; empty when the decomposition is sound."""
        issues = []
        for j, part in enumerate(self.partitions):
            if len(part) != g.n:
                issues.append(f"partition {j} does not cover every vertex")
                continue
            for cid, members in self.clusters(j).items():
                center = self.centers.get(cid)
                if center is None or part[center] != cid:
                    issues.append(f"cluster {cid} lacks its center")
                    continue
                inside = set(members)
                ecc = _eccentricity(g, center, inside)
                if len(ecc) != len(inside):
                    issues.append(f"cluster {cid} is disconnected")
                    continue
                radius = max(ecc.values())
                if radius > self.hop_radius[cid] or self.hop_radius[cid] > self.radius_cap:
                    issues.append(f"cluster {cid} radius {radius} exceeds its bound")
                diam = max(max(_eccentricity(g, x, inside).values()) for x in members)
                if diam > self.diameter_bound:
                    issues.append(f"cluster {cid} diameter {diam} exceeds {self.diameter_bound}")
        return issues


def _eccentricity(g: Graph, source: int, inside: set[int]) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, _, _ in g.neighbors(x):
            if y in inside and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def decompose(net: Network, cfg: SimConfig, attempt: int = 0) -> ClusterDecomposition:
    g = net.g
    n = g.n
    count = max(1, math.ceil(cfg.partition_factor * math.log2(n))) if n > 1 else 1
    diameter_bound = cfg.diameter_factor * lg(n)
    cap = diameter_bound / 2
    flood_rounds = math.floor(cap)

    shifts = []
    for x in range(n):
        rng = node_rng(cfg.seed, DECOMPOSITION_STREAM, attempt, x)
        shifts.append([min(float(s), cap) for s in rng.exponential(1.0 / cfg.beta, size=count)])

    # best[x][j] = (key, center, shift, dist); parent[x][j] = neighbor it came from
    best = [[(-shifts[x][j], x, shifts[x][j], 0) for j in range(count)] for x in range(n)]
    parent: list[list[int | None]] = [[None] * count for _ in range(n)]
    changed = [list(range(count)) for _ in range(n)]

    with net.phase("decomposition"):
        for _ in range(flood_rounds):
            for x in range(n):
                if not changed[x]:
                    continue
                payload = tuple((j, best[x][j][1], best[x][j][2], best[x][j][3]) for j in changed[x])
                for y, _, _ in g.neighbors(x):
                    net.send(x, y, payload)
            changed = [[] for _ in range(n)]
            for dst, msgs in net.deliver().items():
                mine = best[dst]
                touched = set()
                for src, payload in msgs:
                    for j, center, shift, dist in payload:
                        d = dist + 1
                        key = d - shift
                        cur = mine[j]
                        if (key, center) < (cur[0], cur[1]):
                            mine[j] = (key, center, shift, d)
                            parent[dst][j] = src
                            touched.add(j)
                changed[dst] = sorted(touched)

    partitions = [[j * n + best[x][j][1] for x in range(n)] for j in range(count)]
    centers: dict[int, int] = {}
    hop_radius: dict[int, int] = {}
    for j in range(count):
        for x in range(n):
            cid = partitions[j][x]
            centers[cid] = best[x][j][1]
            hop_radius[cid] = max(hop_radius.get(cid, 0), best[x][j][3])
    parents = [[parent[x][j] for x in range(n)] for j in range(count)]
    return ClusterDecomposition(partitions, centers, hop_radius, parents, math.floor(cap), diameter_bound)


def padded_decomposition(g: Graph, cfg: SimConfig, attempt: int = 0) -> tuple[ClusterDecomposition, SimTrace]:
    """Build ceil(c * log2 n) low-diameter partitions in the LOCAL model."""
    if cfg.model != LOCAL:
        raise ValueError("padded_decomposition runs in the LOCAL model")
    net = Network(g, cfg)
    decomp = decompose(net, cfg, attempt)
    return decomp, net.trace
