"""Cluster-greedy fault-tolerant spanners in the LOCAL model."""

from __future__ import annotations

from ..errors import SimulationError
from ..graph import Graph
from ..greedy import SpannerParams, SpannerResult, SpannerStats, exact_greedy, modified_greedy_weighted
from .decomposition import ClusterDecomposition, decompose
from .network import LOCAL, Network, SimConfig, SimTrace

LOCAL_ALGORITHMS = {"greedy-weighted": modified_greedy_weighted, "exact": exact_greedy}


def _heights(parents: list[int | None]) -> list[int]:
    n = len(parents)
    children: list[list[int]] = [[] for _ in range(n)]
    for x, p in enumerate(parents):
        if p is not None:
            children[p].append(x)
    height = [0] * n
    order = []
    stack = [x for x in range(n) if parents[x] is None]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(children[x])
    for x in reversed(order):
        if children[x]:
            height[x] = 1 + max(height[c] for c in children[x])
    return height


def _exchange_cluster_ids(net: Network, decomp: ClusterDecomposition) -> None:
    g = net.g
    with net.phase("cluster-ids"):
        for x in range(g.n):
            ids = tuple(part[x] for part in decomp.partitions)
            for y, _, _ in g.neighbors(x):
                net.send(x, y, ids)
        net.deliver()


def _gather(net: Network, decomp: ClusterDecomposition) -> dict[tuple[int, int], tuple]:
    """Convergecast each cluster's induced edges to its center.

    Returns the flat ``(u, v, w, ...)`` edge tuple held by every center,
    keyed by ``(partition, cluster id)``.
    """
    g = net.g
    heights = [_heights(parents) for parents in decomp.parents]
    held: list[list[list[int]]] = []
    for j, part in enumerate(decomp.partitions):
        per_vertex = []
        for x in range(g.n):
            own = []
            for y, w, _ in g.neighbors(x):
                if x < y and part[y] == part[x]:
                    own.extend((x, y, w))
            per_vertex.append(own)
        held.append(per_vertex)
    rounds = max((max(h) for h in heights), default=0)
    with net.phase("gather"):
        for r in range(rounds):
            outgoing: dict[tuple[int, int], list] = {}
            for j, parents in enumerate(decomp.parents):
                hj = heights[j]
                for x in range(g.n):
                    p = parents[x]
                    if p is not None and hj[x] == r:
                        outgoing.setdefault((x, p), []).append((j, tuple(held[j][x])))
            for (x, p), bundle in sorted(outgoing.items()):
                net.send(x, p, tuple(bundle))
            for dst, msgs in net.deliver().items():
                for _, bundle in msgs:
                    for j, edges in bundle:
                        held[j][dst].extend(edges)
    out = {}
    for j, part in enumerate(decomp.partitions):
        for x in range(g.n):
            if decomp.parents[j][x] is None:
                out[(j, part[x])] = tuple(held[j][x])
    return out


def _broadcast(net: Network, decomp: ClusterDecomposition, chosen: dict[tuple[int, int], set[int]]) -> None:
    """Push each center's selection down its tree; a child receives the edges touching its subtree."""
    g = net.g
    plans = []
    for j, parents in enumerate(decomp.parents):
        children: list[list[int]] = [[] for _ in range(g.n)]
        for x, p in enumerate(parents):
            if p is not None:
                children[p].append(x)
        depth = [0] * g.n
        order = [x for x in range(g.n) if parents[x] is None]
        for x in order:  # grows while iterating: BFS over the forest
            for c in children[x]:
                depth[c] = depth[x] + 1
                order.append(c)
        below = [{x} for x in range(g.n)]
        for x in reversed(order):
            if parents[x] is not None:
                below[parents[x]] |= below[x]
        plans.append((children, depth, below))
    rounds = max(decomp.hop_radius.values(), default=0)
    with net.phase("broadcast"):
        for r in range(rounds):
            outgoing: dict[tuple[int, int], list] = {}
            for j, (children, depth, below) in enumerate(plans):
                part = decomp.partitions[j]
                for x in range(g.n):
                    if depth[x] != r or not children[x]:
                        continue
                    sel = chosen[(j, part[x])]
                    for c in children[x]:
                        mine = below[c]
                        ids = tuple(sorted(e for e in sel if g.edges[e].u in mine or g.edges[e].v in mine))
                        outgoing.setdefault((x, c), []).append((j, ids))
            for (x, c), bundle in sorted(outgoing.items()):
                net.send(x, c, tuple(bundle))
            net.deliver()


def _cluster_spanner(g: Graph, triples, center: int, p: SpannerParams, algo) -> set[int]:
    """What a center computes from its gathered view of G[C]; returns global edge ids."""
    verts = sorted({center}.union(*((u, v) for u, v, _ in triples)))
    local = {x: i for i, x in enumerate(verts)}
    sub = Graph(len(verts), [(local[u], local[v], w) for u, v, w in triples])
    picked = algo(sub, p).spanner_edge_ids
    return {g.edge_between(verts[sub.edges[i].u], verts[sub.edges[i].v]) for i in picked}


def _local_attempt(g: Graph, p: SpannerParams, cfg: SimConfig, attempt: int):
    net = Network(g, cfg)
    decomp = decompose(net, cfg, attempt)
    _exchange_cluster_ids(net, decomp)
    if decomp.uncovered_edges(g):
        return None, decomp, net.trace
    gathered = _gather(net, decomp)

    algo = LOCAL_ALGORITHMS[cfg.local_algo]
    memo: dict[tuple, set[int]] = {}
    chosen: dict[tuple[int, int], set[int]] = {}
    for (j, cid), flat in gathered.items():
        triples = tuple(sorted(zip(flat[0::3], flat[1::3], flat[2::3])))
        if triples not in memo:
            memo[triples] = _cluster_spanner(g, triples, decomp.centers[cid], p, algo)
        chosen[(j, cid)] = memo[triples]
    _broadcast(net, decomp, chosen)
    spanner: set[int] = set().union(*chosen.values()) if chosen else set()
    return spanner, decomp, net.trace


def local_ft_spanner(g: Graph, p: SpannerParams, cfg: SimConfig) -> tuple[SpannerResult, SimTrace]:
    """Union of per-cluster greedy spanners over a padded decomposition.

    Retries with fresh randomness when some edge lies in no cluster.
    """
    if cfg.model != LOCAL:
        raise ValueError("local_ft_spanner requires the LOCAL model")
    if cfg.local_algo not in LOCAL_ALGORITHMS:
        raise ValueError(f"unknown local algorithm {cfg.local_algo!r}")
    for attempt in range(cfg.retries + 1):
        spanner, decomp, trace = _local_attempt(g, p, cfg, attempt)
        if spanner is not None:
            stats = SpannerStats(
                edges_kept=len(spanner),
                edge_order=sorted(spanner),
                extra={"attempts": attempt + 1, "partitions": decomp.count, "local_algo": cfg.local_algo},
            )
            return SpannerResult(frozenset(spanner), stats), trace
    raise SimulationError(f"some edge stayed uncovered after {cfg.retries + 1} decomposition attempts")
