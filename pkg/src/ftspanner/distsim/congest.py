"""CONGEST constructions: Baswana-Sen clustering and its sampled fault-tolerant union.

Protocols are generators: each ``yield`` hands the engine the messages of
one logical round as ``(src, dst, payload)`` triples and receives the inbox
``{dst: [(src, payload), ...]}`` back. Nodes act only on their own state,
their inbox and their own random stream.
"""

from __future__ import annotations

import math
from typing import Generator

import numpy as np

from ..errors import SimulationError
from ..graph import Graph, Mode
from ..greedy import SpannerParams, SpannerResult, SpannerStats
from .network import CONGEST, CongestionOverflow, Multiplexer, Network, SimConfig, SimTrace, lg, message_bits, node_rng

SAMPLE, CLUSTER, DECIDE, ADD, SELECTION = range(5)
BS_STREAM = 2
DK_STREAM = 3

Outbox = list[tuple[int, int, tuple]]
Protocol = Generator[Outbox, dict, None]


def baswana_sen_rounds(k: int) -> int:
    """Logical rounds used by one run: phase i costs (i-1) tree rounds + 2, the last phase 1."""
    return sum(i + 1 for i in range(1, k)) + 1


class BaswanaSenRun:
    """One randomized (2k-1)-spanner computation.

    ``adj`` maps each participating node to the ``(neighbor, weight, edge id)``
    triples it knows to be participating too.
    """

    def __init__(self, adj: dict[int, list[tuple[int, int, int]]], k: int, rngs: dict[int, np.random.Generator], n_global: int):
        self.nodes = sorted(adj)
        self.adj = adj
        self.k = k
        self.rngs = rngs
        self.p_sample = n_global ** (-1.0 / k)
        self.none = n_global  # wire sentinel for "unclustered"
        self.selected: set[int] = set()

    def protocol(self) -> Protocol:
        nodes = self.nodes
        cluster: dict[int, int | None] = {x: x for x in nodes}
        children: dict[int, list[int]] = {x: [] for x in nodes}
        remaining = {x: {y: (w, eid) for y, w, eid in self.adj[x]} for x in nodes}
        # neighbors start in singleton clusters named by their ids
        ncl = {x: {y: y for y in remaining[x]} for x in nodes}

        for phase in range(1, self.k):
            sampled: dict[int, bool] = {}
            for x in nodes:
                if cluster[x] == x:
                    sampled[x] = bool(self.rngs[x].random() < self.p_sample)
            frontier = sorted(sampled)
            for _ in range(phase - 1):
                out = [(x, c, (SAMPLE, int(sampled[x]))) for x in frontier for c in children[x]]
                inbox = yield out
                frontier = []
                for dst, msgs in sorted(inbox.items()):
                    for _, (_, flag) in msgs:
                        sampled[dst] = bool(flag)
                    frontier.append(dst)

            out = [
                (x, y, (CLUSTER, cluster[x], int(sampled[x])))
                for x in nodes if cluster[x] is not None
                for y in sorted(remaining[x])
            ]
            inbox = yield out
            nsampled: dict[int, dict[int, bool]] = {x: {} for x in nodes}
            for dst, msgs in inbox.items():
                for src, (_, c, flag) in msgs:
                    ncl[dst][src] = c
                    nsampled[dst][src] = bool(flag)

            new_cluster: dict[int, int | None] = {}
            joined_via: dict[int, int] = {}
            discard: dict[int, set[int]] = {x: set() for x in nodes}
            added: dict[int, set[int]] = {x: set() for x in nodes}
            for x in nodes:
                if cluster[x] is None:
                    new_cluster[x] = None
                    continue
                if sampled[x]:
                    new_cluster[x] = cluster[x]
                    continue
                least: dict[int, tuple[int, int, int]] = {}
                for y, (w, eid) in remaining[x].items():
                    c = ncl[x][y]
                    key = (w, eid, y)
                    if c not in least or key < least[c]:
                        least[c] = key
                near_sampled = [c for c, key in least.items() if nsampled[x][key[2]]]
                if not near_sampled:
                    added[x].update(key[2] for key in least.values())
                    discard[x] = set(remaining[x])
                    new_cluster[x] = None
                    continue
                target = min(near_sampled, key=least.__getitem__)
                best = least[target]
                new_cluster[x] = target
                joined_via[x] = best[2]
                added[x].add(best[2])
                drop = {target} | {c for c, key in least.items() if key < best}
                for c in drop - {target}:
                    added[x].add(least[c][2])
                discard[x] = {y for y in remaining[x] if ncl[x][y] in drop}

            out = []
            for x in nodes:
                nc = new_cluster[x]
                for y in sorted(remaining[x]):
                    out.append((x, y, (
                        DECIDE,
                        self.none if nc is None else nc,
                        int(y in discard[x]),
                        int(joined_via.get(x) == y),
                    )))
            inbox = yield out

            for x in nodes:
                for y in added[x]:
                    self.selected.add(remaining[x][y][1])
                if not (cluster[x] is not None and sampled[x]):
                    children[x] = []
            for dst, msgs in inbox.items():
                for src, (_, nc, dropped, join) in msgs:
                    ncl[dst][src] = None if nc == self.none else nc
                    if dropped:
                        remaining[dst].pop(src, None)
                    if join:
                        children[dst].append(src)
            for x in nodes:
                for y in discard[x]:
                    remaining[x].pop(y, None)
            cluster = new_cluster
            for x in nodes:
                mine = cluster[x]
                for y in list(remaining[x]):
                    if mine is None or ncl[x][y] is None or ncl[x][y] == mine:
                        del remaining[x][y]

        out = []
        for x in nodes:
            least = {}
            for y, (w, eid) in remaining[x].items():
                c = ncl[x][y]
                key = (w, eid, y)
                if c not in least or key < least[c]:
                    least[c] = key
            for w, eid, y in sorted(least.values()):
                self.selected.add(eid)
                out.append((x, y, (ADD,)))
        yield out


def _drive(run: BaswanaSenRun, net: Network) -> None:
    proto = run.protocol()
    out = next(proto)
    while True:
        for src, dst, payload in out:
            net.send(src, dst, payload)
        inbox = net.deliver()
        try:
            out = proto.send(inbox)
        except StopIteration:
            return


def baswana_sen(g: Graph, k: int, cfg: SimConfig, attempt: int = 0) -> tuple[SpannerResult, SimTrace]:
    """Randomized (2k-1)-spanner in O(k^2) CONGEST rounds."""
    if cfg.model != CONGEST:
        raise ValueError("baswana_sen requires the CONGEST model")
    if k < 1:
        raise ValueError("k must be >= 1")
    net = Network(g, cfg)
    rngs = {x: node_rng(cfg.seed, BS_STREAM, attempt, x) for x in range(g.n)}
    run = BaswanaSenRun({x: list(g.neighbors(x)) for x in range(g.n)}, k, rngs, g.n)
    with net.phase("baswana-sen"):
        _drive(run, net)
    stats = SpannerStats(edges_kept=len(run.selected), edge_order=sorted(run.selected))
    return SpannerResult(frozenset(run.selected), stats), net.trace


def dk_iterations(n: int, f: int, cfg: SimConfig) -> int:
    return math.ceil(cfg.dk_iterations_factor * f**3 * lg(n))


def _pack(indices: list[int], budget: int) -> list[tuple]:
    """Split an iteration list into messages ``(SELECTION, last, i1, i2, ...)`` within budget."""
    chunks: list[tuple] = []
    current: list[int] = []
    for i in indices:
        if current and message_bits((SELECTION, 0, *current, i)) > budget:
            chunks.append((SELECTION, 0, *current))
            current = []
        current.append(i)
    chunks.append((SELECTION, 1, *current))
    return chunks


def _dk_attempt(g: Graph, p: SpannerParams, cfg: SimConfig, attempt: int):
    n = g.n
    iterations = dk_iterations(n, p.f, cfg)
    prob = 1.0 / p.f
    net = Network(g, cfg)
    rngs = {x: node_rng(cfg.seed, DK_STREAM, attempt, x) for x in range(n)}
    chosen = {x: np.flatnonzero(rngs[x].random(iterations) < prob).tolist() for x in range(n)}

    # phase 1: everyone tells its neighbors where it participates
    heard: dict[int, dict[int, set[int]]] = {x: {} for x in range(n)}
    chunks = {x: _pack(chosen[x], net.budget) for x in range(n)}
    with net.phase("selection"):
        for r in range(max((len(c) for c in chunks.values()), default=0)):
            for x in range(n):
                if r < len(chunks[x]):
                    for y, _, _ in g.neighbors(x):
                        net.send(x, y, chunks[x][r])
            for dst, msgs in net.deliver().items():
                for src, (_, _, *idx) in msgs:
                    heard[dst].setdefault(src, set()).update(idx)

    selected: set[int] = set()
    if g.m:
        slots = cfg.slot_factor * p.f * lg(n)
        mux = Multiplexer(net, slots)
        members: dict[int, list[int]] = {}
        for x in range(n):
            for i in chosen[x]:
                members.setdefault(i, []).append(x)
        runs = {}
        for i in sorted(members):
            # a node keeps only the neighbors it heard participate in iteration i
            adj = {x: [(y, w, eid) for y, w, eid in g.neighbors(x) if i in heard[x].get(y, ())] for x in members[i]}
            runs[i] = BaswanaSenRun(adj, p.k, rngs, n)
        protos = {i: run.protocol() for i, run in runs.items()}
        outs = {i: next(proto) for i, proto in protos.items()}
        with net.phase("spanners"):
            while protos:
                for i in sorted(outs):
                    for src, dst, payload in outs[i]:
                        mux.send(src, dst, i, payload)
                delivered = mux.deliver()
                outs = {}
                for i in sorted(protos):
                    try:
                        outs[i] = protos[i].send(delivered.get(i, {}))
                    except StopIteration:
                        del protos[i]
        for run in runs.values():
            selected |= run.selected
    return selected, net.trace, iterations


def dk_congest_ft_spanner(g: Graph, p: SpannerParams, cfg: SimConfig) -> tuple[SpannerResult, SimTrace]:
    """Union of Baswana-Sen spanners over randomly sampled vertex subsets, multiplexed in CONGEST."""
    if cfg.model != CONGEST:
        raise ValueError("dk_congest_ft_spanner requires the CONGEST model")
    if p.f < 1:
        raise ValueError("the sampled construction needs f >= 1; use baswana_sen for f = 0")
    if p.mode is not Mode.VERTEX:
        raise ValueError("the sampled construction handles vertex faults only")
    last: Exception | None = None
    for attempt in range(cfg.retries + 1):
        try:
            selected, trace, iterations = _dk_attempt(g, p, cfg, attempt)
        except CongestionOverflow as exc:
            last = exc
            continue
        stats = SpannerStats(
            edges_kept=len(selected),
            edge_order=sorted(selected),
            extra={"attempts": attempt + 1, "iterations": iterations},
        )
        return SpannerResult(frozenset(selected), stats), trace
    raise SimulationError(f"congestion overflow persisted after {cfg.retries + 1} attempts: {last}")
