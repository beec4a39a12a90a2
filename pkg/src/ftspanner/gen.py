"""Deterministic seeded graph families."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph

FAMILIES = ("complete", "cycle", "path", "star", "grid", "erdos-renyi", "random-geometric", "theta")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    seed: int = 0
    weights: tuple[int, int] | None = None  # None: unit weights; else UniformInt(lo, hi)
    p: float = 0.0
    radius: float = 0.0
    paths: int = 3
    hops: int = 2
    rows: int | None = None
    largest_component: bool = False

    def to_json(self) -> dict:
        out = asdict(self)
        out["weights"] = None if self.weights is None else list(self.weights)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GenSpec":
        data = dict(data)
        if data.get("weights") is not None:
            data["weights"] = tuple(data["weights"])
        return cls(**data)


def _pairs_complete(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _structure(spec: GenSpec, rng: np.random.Generator) -> tuple[int, list[tuple[int, int]]]:
    n, fam = spec.n, spec.family
    if fam == "complete":
        return n, _pairs_complete(n)
    if fam == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    if fam == "path":
        return n, [(i, i + 1) for i in range(n - 1)]
    if fam == "star":
        return n, [(0, i) for i in range(1, n)]
    if fam == "grid":
        rows = spec.rows or math.isqrt(n)
        if rows < 1 or n % rows:
            raise ValueError(f"grid: n={n} is not divisible by rows={rows}")
        cols = n // rows
        edges = []
        for r in range(rows):
            for c in range(cols):
                x = r * cols + c
                if c + 1 < cols:
                    edges.append((x, x + 1))
                if r + 1 < rows:
                    edges.append((x, x + cols))
        return n, edges
    if fam == "erdos-renyi":
        if not 0.0 <= spec.p <= 1.0:
            raise ValueError("erdos-renyi: p must lie in [0, 1]")
        pairs = _pairs_complete(n)
        keep = rng.random(len(pairs)) < spec.p
        return n, [pq for pq, k in zip(pairs, keep) if k]
    if fam == "random-geometric":
        if spec.radius < 0:
            raise ValueError("random-geometric: radius must be nonnegative")
        pts = rng.random((n, 2))
        r2 = spec.radius * spec.radius
        edges = []
        for i in range(n):
            d2 = ((pts[i + 1:] - pts[i]) ** 2).sum(axis=1)
            edges.extend((i, i + 1 + int(j)) for j in np.nonzero(d2 <= r2)[0])
        return n, edges
    if fam == "theta":
        if spec.paths < 1 or spec.hops < 1 or (spec.hops == 1 and spec.paths > 1):
            raise ValueError("theta: needs paths >= 1, hops >= 1, and hops >= 2 for several paths")
        edges = []
        nxt = 2
        for _ in range(spec.paths):
            prev = 0
            for _ in range(spec.hops - 1):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            edges.append((prev, 1))
        return nxt, edges
    raise ValueError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


def _largest_component(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    sizes: dict[int, int] = {}
    for x in range(n):
        r = find(x)
        sizes[r] = sizes.get(r, 0) + 1
    if not sizes:
        return 0, []
    # dicts keep first-seen order, so ties go to the component with the smallest vertex
    best = max(sizes, key=sizes.get)
    keep = [x for x in range(n) if find(x) == best]
    relabel = {x: i for i, x in enumerate(keep)}
    return len(keep), [(relabel[u], relabel[v]) for u, v in edges if u in relabel]


def generate(spec: GenSpec) -> Graph:
    if spec.n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(spec.seed)
    n, edges = _structure(spec, rng)
    if spec.largest_component:
        n, edges = _largest_component(n, edges)
    if spec.weights is None:
        weights = [1] * len(edges)
    else:
        lo, hi = spec.weights
        if not 0 <= lo <= hi:
            raise ValueError("weights: need 0 <= lo <= hi")
        weights = [int(w) for w in rng.integers(lo, hi + 1, size=len(edges))]
    return Graph(n, [(u, v, w) for (u, v), w in zip(edges, weights)])
