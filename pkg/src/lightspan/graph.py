"""Exact-weight undirected graphs, spanning forests and shortest paths.

Weights are ``fractions.Fraction``.  Algorithms that add many weights
(Dijkstra, the greedy spanner) run on an integer image of the graph: every
weight is multiplied by the lcm of the denominators, which keeps the
arithmetic exact while avoiding Fraction overhead in the inner loops.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Union

from .errors import InputError

Edge = tuple[int, int]
WeightLike = Union[int, Fraction, str]

INF = math.inf


def edge_key(u: int, v: int) -> Edge:
    """Canonical (smaller, larger) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


def as_weight(x: WeightLike) -> Fraction:
    if isinstance(x, float):
        raise InputError(f"floating point weight {x!r} is not exact; use a Fraction")
    try:
        w = Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {x!r}") from exc
    if w < 0:
        raise InputError(f"negative weight {w}")
    return w


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)


class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with exact weights.

    Instances are treated as immutable; derived graphs are new objects.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int, WeightLike]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._w: dict[Edge, Fraction] = {}
        self._adj: list[dict[int, Fraction]] = [{} for _ in range(n)]
        for u, v, w in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = edge_key(u, v)
            if e in self._w:
                raise InputError(f"duplicate edge {e[0]}-{e[1]}")
            wt = as_weight(w)
            self._w[e] = wt
            self._adj[u][v] = wt
            self._adj[v][u] = wt

    def _check_vertex(self, u: int) -> None:
        if not isinstance(u, int) or not 0 <= u < self.n:
            raise InputError(f"vertex id {u!r} out of range 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self._w == other._w

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._w.items())))

    @property
    def m(self) -> int:
        return len(self._w)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """All edges in (smaller endpoint, larger endpoint) order."""
        return tuple(sorted(self._w))

    def weighted_edges(self) -> Iterator[tuple[int, int, Fraction]]:
        for u, v in self.edges:
            yield u, v, self._w[(u, v)]

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self._w[edge_key(u, v)]
        except KeyError:
            raise InputError(f"no edge {u}-{v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._w

    def neighbors(self, u: int) -> dict[int, Fraction]:
        self._check_vertex(u)
        return self._adj[u]

    def total_weight(self, edges: Iterable[Edge] | None = None) -> Fraction:
        if edges is None:
            return sum(self._w.values(), Fraction(0))
        return sum((self.weight(u, v) for u, v in edges), Fraction(0))

    def sorted_edges(self) -> list[Edge]:
        """Edges by (weight, smaller endpoint, larger endpoint)."""
        return sorted(self._w, key=lambda e: (self._w[e], e))

    def edge_subgraph(self, edges: Iterable[Edge]) -> WeightedGraph:
        """Spanning subgraph (same vertex set) keeping only ``edges``."""
        keep = {edge_key(*e) for e in edges}
        missing = keep - self._w.keys()
        if missing:
            u, v = min(missing)
            raise InputError(f"edge {u}-{v} is not in the graph")
        return WeightedGraph(self.n, ((u, v, self._w[(u, v)]) for u, v in sorted(keep)))

    def with_edges(self, extra: Iterable[tuple[int, int, WeightLike]]) -> WeightedGraph:
        return WeightedGraph(self.n, [*self.weighted_edges(), *extra])

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    # --- integer image -------------------------------------------------

    @cached_property
    def scale(self) -> int:
        """lcm of all weight denominators."""
        return math.lcm(1, *(w.denominator for w in self._w.values()))

    @cached_property
    def int_adj(self) -> list[list[tuple[int, int]]]:
        s = self.scale
        return [
            [(v, int(w * s)) for v, w in sorted(nbrs.items())] for nbrs in self._adj
        ]


@dataclass(frozen=True)
class SpanningTree:
    """A spanning forest of ``graph`` (one tree per connected component)."""

    graph: WeightedGraph
    edges: frozenset[Edge]

    @property
    def weight(self) -> Fraction:
        return self.graph.total_weight(self.edges)

    def __contains__(self, e: Edge) -> bool:
        return edge_key(*e) in self.edges

    def __len__(self) -> int:
        return len(self.edges)


def components(g: WeightedGraph) -> list[list[int]]:
    uf = UnionFind(range(g.n))
    for u, v in g.edges:
        uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for x in range(g.n):
        groups.setdefault(uf.find(x), []).append(x)
    return sorted(groups.values())


def mst(g: WeightedGraph) -> SpanningTree:
    """Kruskal with (weight, smaller endpoint, larger endpoint) tie-break."""
    uf = UnionFind(range(g.n))
    chosen = [e for e in g.sorted_edges() if uf.union(*e)]
    return SpanningTree(g, frozenset(chosen))


def _dijkstra_int(
    adj: list[list[tuple[int, int]]],
    src: int,
    *,
    target: int | None = None,
    bound: int | None = None,
    skip: Edge | None = None,
) -> dict[int, int]:
    """Integer Dijkstra; settled distances only.

    With ``bound`` set, vertices at distance >= bound are never settled.
    """
    dist = {src: 0}
    done: set[int] = set()
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        if bound is not None and d >= bound:
            break
        done.add(x)
        if x == target:
            break
        for y, w in adj[x]:
            if skip is not None and (x, y) in (skip, skip[::-1]):
                continue
            nd = d + w
            if y not in done and nd < dist.get(y, nd + 1):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return {x: dist[x] for x in done}


def shortest_dist(g: WeightedGraph, u: int, v: int) -> Fraction | float:
    """Exact d_G(u, v); ``math.inf`` when disconnected."""
    g._check_vertex(u)
    g._check_vertex(v)
    d = _dijkstra_int(g.int_adj, u, target=v).get(v)
    return INF if d is None else Fraction(d, g.scale)


def single_source(g: WeightedGraph, u: int) -> list[Fraction | float]:
    g._check_vertex(u)
    settled = _dijkstra_int(g.int_adj, u)
    return [Fraction(settled[x], g.scale) if x in settled else INF for x in range(g.n)]


def all_pairs(g: WeightedGraph) -> list[list[Fraction | float]]:
    return [single_source(g, u) for u in range(g.n)]


def induced_subgraph(g: WeightedGraph, s: Iterable[int]) -> WeightedGraph:
    """G[s], with the vertices of ``s`` relabelled 0.. in ascending order."""
    verts = sorted(set(s))
    for x in verts:
        g._check_vertex(x)
    index = {x: i for i, x in enumerate(verts)}
    return WeightedGraph(
        len(verts),
        (
            (index[a], index[b], g.weight(a, b))
            for a, b in combinations(verts, 2)
            if g.has_edge(a, b)
        ),
    )


class TreePaths:
    """Path queries on a spanning forest given by its edge set."""

    def __init__(self, n: int, edges: Iterable[Edge]):
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        self.parent = [-1] * n
        self.depth = [0] * n
        self.root = list(range(n))
        seen = [False] * n
        for r in range(n):
            if seen[r]:
                continue
            seen[r] = True
            stack = [r]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        self.parent[y] = x
                        self.depth[y] = self.depth[x] + 1
                        self.root[y] = r
                        stack.append(y)

    def connected(self, u: int, v: int) -> bool:
        return self.root[u] == self.root[v]

    def vertex_path(self, u: int, v: int) -> list[int]:
        if not self.connected(u, v):
            raise InputError(f"vertices {u} and {v} are in different trees")
        left, right = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            right.append(b)
        while a != b:
            a, b = self.parent[a], self.parent[b]
            left.append(a)
            right.append(b)
        right.pop()
        return left + right[::-1]

    def path(self, u: int, v: int) -> list[Edge]:
        """Tree edges on the u-to-v path, in order from u."""
        vs = self.vertex_path(u, v)
        return [edge_key(a, b) for a, b in zip(vs, vs[1:])]


# --- text format --------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> WeightedGraph:
    """Parse ``n m`` followed by ``u v p [q]`` lines (weight p/q)."""
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty graph file")
    lineno, header = lines[0]
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise InputError(f"line {lineno}: expected 'n m', got {header!r}") from None
    if len(lines) - 1 != m:
        raise InputError(f"header declares {m} edges but file has {len(lines) - 1}")
    edges = []
    for lineno, line in lines[1:]:
        toks = line.split()
        try:
            if len(toks) == 4:
                w = Fraction(int(toks[2]), int(toks[3]))
            elif len(toks) == 3:
                w = Fraction(toks[2])
            else:
                raise ValueError
            edges.append((int(toks[0]), int(toks[1]), w))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"line {lineno}: expected 'u v p [q]', got {line!r}") from None
    try:
        return WeightedGraph(n, edges)
    except InputError as exc:
        raise InputError(f"invalid graph: {exc}") from None


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator} {w.denominator}"


def format_graph(g: WeightedGraph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v} {format_weight(w)}" for u, v, w in g.weighted_edges())
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> WeightedGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
