"""Weighted undirected simple graphs, fault-masked traversal and edge-list I/O.

Adjacency is kept twice: as sorted ``(neighbor, weight, edge_id)`` lists for
weighted shortest paths, and as Python-int bitsets for the hop-bounded BFS
that sits in the inner loop of every spanner construction.
"""

from __future__ import annotations

import heapq
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, NamedTuple, Sequence

INF = math.inf
MAX_WEIGHT = 2**63 - 1


class Mode(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based, 0 when not line-specific."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Edge(NamedTuple):
    u: int
    v: int
    w: int
    id: int


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable weighted undirected simple graph on vertices ``0..n-1``.

    Edge ids are positions in ``edges`` and never change.
    """

    __slots__ = ("n", "edges", "_adj", "_bits", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        built: list[Edge] = []
        index: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        bits = [0] * n
        for eid, e in enumerate(edges):
            if len(e) == 2:
                u, v, w = e[0], e[1], 1
            else:
                u, v, w = e[0], e[1], e[2]
            u, v, w = int(u), int(v), int(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid}: vertex id out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge {eid}: self-loop at {u}")
            if w < 0 or w > MAX_WEIGHT:
                raise ValueError(f"edge {eid}: weight {w} outside 0..2^63-1")
            key = _pair(u, v)
            if key in index:
                raise ValueError(f"edge {eid}: duplicate of edge {index[key]} on {key}")
            index[key] = eid
            built.append(Edge(u, v, w, eid))
            adj[u].append((v, w, eid))
            adj[v].append((u, w, eid))
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        for lst in adj:
            lst.sort()
        self.edges: tuple[Edge, ...] = tuple(built)
        self._adj = tuple(tuple(lst) for lst in adj)
        self._bits = tuple(bits)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, x: int) -> tuple[tuple[int, int, int], ...]:
        """Incident ``(neighbor, weight, edge_id)`` triples in ascending neighbor order."""
        return self._adj[x]

    def adjacency_bits(self) -> tuple[int, ...]:
        return self._bits

    def edge_between(self, u: int, v: int) -> int | None:
        return self._index.get(_pair(u, v))

    def degree(self, x: int) -> int:
        return len(self._adj[x])

    def is_unit_weight(self) -> bool:
        return all(e.w == 1 for e in self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Induced subgraph relabelled to ``0..|C|-1``.

        Returns ``(sub, local_to_global_vertex, local_to_global_edge)``.
        Local edge ids follow ascending global edge id.
        """
        order = sorted(set(vertices))
        local = {x: i for i, x in enumerate(order)}
        kept = [e for e in self.edges if e.u in local and e.v in local]
        sub = Graph(len(order), [(local[e.u], local[e.v], e.w) for e in kept])
        return sub, order, [e.id for e in kept]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FaultSet:
    mode: Mode
    members: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def vertices(cls, members: Iterable[int] = ()) -> "FaultSet":
        return cls(Mode.VERTEX, frozenset(members))

    @classmethod
    def edges(cls, members: Iterable[int] = ()) -> "FaultSet":
        return cls(Mode.EDGE, frozenset(members))

    @classmethod
    def empty(cls, mode: Mode = Mode.VERTEX) -> "FaultSet":
        return cls(Mode(mode), frozenset())

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def validate(self, g: Graph) -> None:
        limit = g.n if self.mode is Mode.VERTEX else g.m
        for x in self.members:
            if not 0 <= x < limit:
                raise ValueError(f"fault {x} out of range for {self.mode.value} mode")


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    weight: int

    @property
    def hops(self) -> int:
        return len(self.edges)


# --------------------------------------------------------------------------
# Bitset BFS kernel
# --------------------------------------------------------------------------

def _expand(adj: Sequence[int], frontier: int) -> int:
    acc = 0
    while frontier:
        low = frontier & -frontier
        acc |= adj[low.bit_length() - 1]
        frontier ^= low
    return acc


def short_hop_path(adj: Sequence[int], alive: int, u: int, v: int, t: int) -> list[int] | None:
    """Lexicographically-first shortest u-v vertex sequence with at most ``t`` hops.

    ``adj`` holds neighbor bitsets, ``alive`` the bitset of usable vertices
    (terminals are always usable). Bidirectional layered BFS; the smaller
    frontier is expanded first.
    """
    if u == v:
        return [u]
    ubit, vbit = 1 << u, 1 << v
    alive |= ubit | vbit
    lu, lv = [ubit], [vbit]
    seen_u, seen_v = ubit, vbit
    while len(lu) + len(lv) - 2 < t:
        if lu[-1].bit_count() <= lv[-1].bit_count():
            nxt = _expand(adj, lu[-1]) & alive & ~seen_u
            if not nxt:
                return None
            lu.append(nxt)
            seen_u |= nxt
            meet = nxt & seen_v
        else:
            nxt = _expand(adj, lv[-1]) & alive & ~seen_v
            if not nxt:
                return None
            lv.append(nxt)
            seen_v |= nxt
            meet = nxt & seen_u
        if meet:
            break
    else:
        return None

    du, dv = len(lu) - 1, len(lv) - 1
    d = du + dv
    # on_path[i]: vertices at u-distance i lying on some shortest u-v path
    on_path = [0] * (d + 1)
    on_path[du] = lu[du] & lv[dv]
    for i in range(du - 1, -1, -1):
        on_path[i] = lu[i] & _expand(adj, on_path[i + 1])
    for j in range(dv - 1, -1, -1):
        on_path[d - j] = lv[j] & _expand(adj, on_path[d - j - 1])
    path = [u]
    x = u
    for i in range(1, d + 1):
        cand = adj[x] & on_path[i]
        x = (cand & -cand).bit_length() - 1
        path.append(x)
    return path


def _check_vertex(g: Graph, x: int) -> None:
    if not 0 <= x < g.n:
        raise ValueError(f"invalid vertex id {x} (n={g.n})")


def fault_masks(g: Graph, faults: FaultSet | None) -> tuple[Sequence[int], int]:
    """Adjacency bitsets and alive-vertex mask for ``g`` with ``faults`` deleted."""
    adj: Sequence[int] = g.adjacency_bits()
    alive = (1 << g.n) - 1
    if faults is None or not faults.members:
        return adj, alive
    if faults.mode is Mode.VERTEX:
        for x in faults.members:
            alive &= ~(1 << x)
    else:
        adj = list(adj)
        for eid in faults.members:
            e = g.edges[eid]
            adj[e.u] &= ~(1 << e.v)
            adj[e.v] &= ~(1 << e.u)
    return adj, alive


def _path_from_vertices(g: Graph, verts: list[int]) -> Path:
    eids = []
    weight = 0
    for a, b in zip(verts, verts[1:]):
        eid = g.edge_between(a, b)
        eids.append(eid)
        weight += g.edges[eid].w
    return Path(tuple(verts), tuple(eids), weight)


def hop_bounded_path(g: Graph, u: int, v: int, t: int, faults: FaultSet | None = None) -> Path | None:
    """Shortest-hop u-v path of at most ``t`` hops in ``g`` minus ``faults``; weights ignored."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ValueError("terminals must differ")
    if t < 1:
        raise ValueError("hop bound must be positive")
    if faults is not None:
        faults.validate(g)
        if faults.mode is Mode.VERTEX and (u in faults or v in faults):
            raise ValueError("terminal inside the fault set")
    adj, alive = fault_masks(g, faults)
    verts = short_hop_path(adj, alive, u, v, t)
    return None if verts is None else _path_from_vertices(g, verts)


# --------------------------------------------------------------------------
# Weighted distances
# --------------------------------------------------------------------------

def dijkstra(
    g: Graph,
    source: int,
    faults: FaultSet | None = None,
    target: int | None = None,
    allowed: frozenset[int] | set[int] | None = None,
    bound: float = INF,
) -> dict[int, int]:
    """Settled distances from ``source``; stops early at ``target`` or past ``bound``.

    ``allowed`` restricts traversal to a subset of edge ids (a spanner view).
    """
    dead_v: frozenset[int] = frozenset()
    dead_e: frozenset[int] = frozenset()
    if faults is not None:
        if faults.mode is Mode.VERTEX:
            dead_v = faults.members
        else:
            dead_e = faults.members
    dist: dict[int, int] = {}
    heap = [(0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if x in dist:
            continue
        if d > bound:
            break
        dist[x] = d
        if x == target:
            break
        for y, w, eid in g.neighbors(x):
            if y in dist or y in dead_v or eid in dead_e:
                continue
            if allowed is not None and eid not in allowed:
                continue
            heapq.heappush(heap, (d + w, y))
    return dist


def distance(g: Graph, u: int, v: int, faults: FaultSet | None = None) -> float:
    """Weighted u-v distance in ``g`` with ``faults`` deleted; ``inf`` when disconnected."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if faults is not None:
        faults.validate(g)
        if faults.mode is Mode.VERTEX and (u in faults or v in faults):
            raise ValueError("endpoint inside the fault set")
    if u == v:
        return 0
    return dijkstra(g, u, faults, target=v).get(v, INF)


# --------------------------------------------------------------------------
# Edge-list format
# --------------------------------------------------------------------------

def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"{what} {token!r} is not an integer", line) from None


def loads(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError("expected header 'n m'", lineno)
            n, m = (_parse_int(p, "header field", lineno) for p in parts)
            if n < 0 or m < 0:
                raise GraphFormatError("negative header field", lineno)
            header = (n, m)
            continue
        if len(parts) not in (2, 3):
            raise GraphFormatError("expected 'u v [w]'", lineno)
        if len(edges) == header[1]:
            raise GraphFormatError(f"more than m={header[1]} edge lines", lineno)
        u = _parse_int(parts[0], "vertex", lineno)
        v = _parse_int(parts[1], "vertex", lineno)
        w = _parse_int(parts[2], "weight", lineno) if len(parts) == 3 else 1
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if w < 0:
            raise GraphFormatError(f"negative weight {w}", lineno)
        if w > MAX_WEIGHT:
            raise GraphFormatError(f"weight {w} exceeds 64-bit range", lineno)
        key = _pair(u, v)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((u, v, w))
    if header is None:
        raise GraphFormatError("missing header 'n m'", lineno)
    if len(edges) != header[1]:
        raise GraphFormatError(f"expected {header[1]} edges, found {len(edges)}", lineno)
    return Graph(header[0], edges)


def load_graph(source: IO[bytes] | IO[str] | bytes | str) -> Graph:
    """Read the edge-list format from a byte/text stream or an in-memory buffer."""
    if isinstance(source, (bytes, bytearray)):
        return loads(source.decode("utf-8"))
    if isinstance(source, str):
        return loads(source)
    data = source.read()
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    return loads(data)


def dumps(g: Graph, edge_ids: Iterable[int] | None = None) -> str:
    """Serialize ``g`` (or the spanning subgraph on ``edge_ids``) in edge-id order."""
    if edge_ids is None:
        chosen = g.edges
    else:
        chosen = tuple(g.edges[i] for i in sorted(set(edge_ids)))
    buf = io.StringIO()
    buf.write(f"{g.n} {len(chosen)}\n")
    for e in chosen:
        buf.write(f"{e.u} {e.v} {e.w}\n")
    return buf.getvalue()


def dump_graph(g: Graph, fp: IO[str], edge_ids: Iterable[int] | None = None) -> None:
    fp.write(dumps(g, edge_ids))


def match_edges(g: Graph, sub: Graph) -> set[int]:
    """Map the edges of ``sub`` (same vertex ids) onto edge ids of ``g``."""
    if sub.n != g.n:
        raise ValueError(f"subgraph has n={sub.n}, graph has n={g.n}")
    ids = set()
    for e in sub.edges:
        eid = g.edge_between(e.u, e.v)
        if eid is None or g.edges[eid].w != e.w:
            raise ValueError(f"edge ({e.u}, {e.v}, {e.w}) is not an edge of the graph")
        ids.add(eid)
    return ids
