"""Slow, independent reference computations used as test oracles.

Nothing here imports the traversal code under test: distances come from
Floyd-Warshall on a dense matrix and cycles from explicit DFS enumeration.
"""

from __future__ import annotations

import itertools
import math
import random

from ftspanner.graph import Graph

INF = math.inf


def floyd_warshall(n, edges, dead_vertices=(), dead_edges=()):
    """All-pairs distances over ``(u, v, w, id)`` tuples with the given deletions."""
    dead_vertices = set(dead_vertices)
    dead_edges = set(dead_edges)
    dist = [[INF] * n for _ in range(n)]
    for x in range(n):
        dist[x][x] = 0
    for u, v, w, eid in edges:
        if eid in dead_edges or u in dead_vertices or v in dead_vertices:
            continue
        if w < dist[u][v]:
            dist[u][v] = dist[v][u] = w
    for mid in range(n):
        if mid in dead_vertices:
            continue
        row_mid = dist[mid]
        for a in range(n):
            dam = dist[a][mid]
            if dam == INF:
                continue
            row_a = dist[a]
            for b in range(n):
                if dam + row_mid[b] < row_a[b]:
                    row_a[b] = dam + row_mid[b]
    return dist


def spanner_is_ft(g: Graph, h, k: int, f: int, mode: str) -> bool:
    """Raw definition: every surviving pair keeps stretch 2k-1 under every fault set of size <= f."""
    t = 2 * k - 1
    h = set(h)
    sub = [e for e in g.edges if e.id in h]
    universe = range(g.n) if mode == "vertex" else range(g.m)
    for size in range(f + 1):
        for faults in itertools.combinations(universe, size):
            if mode == "vertex":
                dg = floyd_warshall(g.n, g.edges, dead_vertices=faults)
                dh = floyd_warshall(g.n, sub, dead_vertices=faults)
            else:
                dg = floyd_warshall(g.n, g.edges, dead_edges=faults)
                dh = floyd_warshall(g.n, sub, dead_edges=faults)
            for a in range(g.n):
                for b in range(a + 1, g.n):
                    if mode == "vertex" and (a in faults or b in faults):
                        continue
                    if dh[a][b] > t * dg[a][b]:
                        return False
    return True


def shortest_cycle_length(n, pairs) -> float:
    """Girth by enumerating simple cycles with DFS from their smallest vertex."""
    adj = {x: set() for x in range(n)}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    best = INF

    def walk(start, x, visited, length):
        nonlocal best
        for y in adj[x]:
            if y == start and length >= 3:
                best = min(best, length)
            elif y > start and y not in visited and length + 1 < best:
                visited.add(y)
                walk(start, y, visited, length + 1)
                visited.remove(y)

    for s in range(n):
        walk(s, s, {s}, 1)
    return best


def all_hop_paths(n, pairs, u, v, t, dead_vertices=(), dead_edges=()):
    """Every simple u-v path of at most t hops, as vertex tuples."""
    dead_vertices = set(dead_vertices)
    dead = {frozenset(e) for e in dead_edges}
    adj = {x: set() for x in range(n)}
    for a, b in pairs:
        if a in dead_vertices or b in dead_vertices or frozenset((a, b)) in dead:
            continue
        adj[a].add(b)
        adj[b].add(a)
    out = []

    def walk(path):
        x = path[-1]
        if x == v:
            out.append(tuple(path))
            return
        if len(path) - 1 == t:
            return
        for y in sorted(adj[x]):
            if y not in path:
                path.append(y)
                walk(path)
                path.pop()

    if u not in dead_vertices:
        walk([u])
    return out


def min_cut_bruteforce(n, pairs, u, v, t, mode):
    """Smallest vertex or edge set hitting every short u-v path, over all subsets."""
    if mode == "vertex":
        universe = [x for x in range(n) if x not in (u, v)]
    else:
        universe = [tuple(sorted(p)) for p in pairs]
    for size in range(len(universe) + 1):
        for cut in itertools.combinations(universe, size):
            if mode == "vertex":
                left = all_hop_paths(n, pairs, u, v, t, dead_vertices=cut)
            else:
                left = all_hop_paths(n, pairs, u, v, t, dead_edges=cut)
            if not left:
                return size
    return INF


def classic_greedy(g: Graph, k: int) -> set[int]:
    """Non-fault-tolerant greedy: keep an edge iff the current spanner stretches it beyond 2k-1."""
    t = 2 * k - 1
    kept: list = []
    for e in sorted(g.edges, key=lambda e: (e.w, e.id)):
        d = floyd_warshall(g.n, kept)[e.u][e.v]
        if d > t * e.w:
            kept.append(e)
    return {e.id for e in kept}


def connected(n, pairs) -> bool:
    if n <= 1:
        return True
    adj = {x: [] for x in range(n)}
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def all_connected_graphs(max_n: int):
    """Every connected labeled simple graph on 1..max_n vertices, unit weights."""
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if connected(n, chosen):
                yield Graph(n, [(a, b, 1) for a, b in chosen])


def random_connected_graph(rng: random.Random, n: int, weighted: bool, density: float = 0.5) -> Graph:
    """A random spanning tree plus independent extra edges, optionally with weights in 1..5."""
    pairs = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        pairs.add((min(a, b), max(a, b)))
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < density:
            pairs.add((a, b))
    pairs = sorted(pairs)
    rng.shuffle(pairs)
    return Graph(n, [(a, b, rng.randint(1, 5) if weighted else 1) for a, b in pairs])
