"""Charging schemes: data model, verification, and two constructions.

A charging scheme assigns each non-tree edge e = uv of a spanner a path
P(e) from u to v inside the spanner.  Edge f is *charged* by e when f lies
on P(e).  Paths are stored as edge tuples in walking order from the
smaller endpoint of e to the larger one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import CertificateRefused, InputError, LightspanError, StructuralError
from .graph import Edge, WeightedGraph, _content_lines, edge_key
from .spanner import Spanner


def walk_vertices(start: int, edges: Sequence[Edge]) -> list[int]:
    """Vertex sequence of the walk that starts at ``start`` and follows ``edges``."""
    seq = [start]
    for a, b in edges:
        x = seq[-1]
        if x == a:
            seq.append(b)
        elif x == b:
            seq.append(a)
        else:
            raise StructuralError(f"edge {a}-{b} does not continue a walk at vertex {x}")
    return seq


def edges_of(vertices: Sequence[int]) -> tuple[Edge, ...]:
    return tuple(edge_key(a, b) for a, b in zip(vertices, vertices[1:]))


def loop_erase(vertices: Sequence[int]) -> list[int]:
    """Chronological loop erasure: the result is a simple path with the same ends."""
    out: list[int] = []
    pos: dict[int, int] = {}
    for x in vertices:
        if x in pos:
            for y in out[pos[x] + 1 :]:
                del pos[y]
            del out[pos[x] + 1 :]
        else:
            pos[x] = len(out)
            out.append(x)
    return out


@dataclass
class ChargingScheme:
    """Charging pairs of a host graph relative to a spanning tree ``tree``."""

    graph: WeightedGraph
    tree: frozenset[Edge]
    pairs: dict[Edge, tuple[Edge, ...]]

    def __post_init__(self):
        self.tree = frozenset(edge_key(*e) for e in self.tree)
        self.pairs = {
            edge_key(*e): tuple(edge_key(*f) for f in path) for e, path in self.pairs.items()
        }

    def charges(self) -> Counter:
        """How often each edge appears on a charging path."""
        return Counter(f for path in self.pairs.values() for f in path)

    def digraph(self) -> dict[Edge, set[Edge]]:
        """Arc e -> f whenever the non-tree edge f lies on P(e)."""
        return {
            e: {f for f in path if f not in self.tree} for e, path in self.pairs.items()
        }

    def path_weight(self, e: Edge) -> Fraction:
        return self.graph.total_weight(self.pairs[edge_key(*e)])


@dataclass
class SimplicityReport:
    k: int
    counts: dict[Edge, int]
    max_tree: int
    max_nontree: int
    acyclic: bool
    strong: bool
    tree_weight: Fraction
    spanner_weight: Fraction
    cycle: list[Edge] | None = None
    weak_pairs: list[Edge] = field(default_factory=list)

    @property
    def k_simple(self) -> bool:
        return self.max_nontree <= 1 and self.max_tree <= self.k

    @property
    def verdict(self) -> bool:
        return self.k_simple and self.acyclic and self.strong


def _find_cycle(arcs: Mapping[Edge, set[Edge]]) -> list[Edge] | None:
    try:
        tuple(TopologicalSorter(arcs).static_order())
    except CycleError as exc:
        return list(exc.args[1])
    return None


def check_structure(graph: WeightedGraph, cs: ChargingScheme) -> None:
    """Raise StructuralError unless every pair is a simple path in ``graph``
    joining the endpoints of its edge, and the pairs cover exactly the
    non-tree edges."""
    for e in cs.tree:
        if not graph.has_edge(*e):
            raise StructuralError(f"tree edge {e[0]}-{e[1]} is not a spanner edge")
    expected = set(graph.edges) - cs.tree
    got = set(cs.pairs)
    if got != expected:
        extra = sorted(got - expected)
        missing = sorted(expected - got)
        if extra:
            raise StructuralError(f"pair for {extra[0]} which is not a non-tree spanner edge")
        raise StructuralError(f"non-tree edge {missing[0]} has no charging pair")
    for e, path in cs.pairs.items():
        where = f"pair {e[0]}-{e[1]}"
        for f in path:
            if not graph.has_edge(*f):
                raise StructuralError(f"{where}: path edge {f[0]}-{f[1]} is not in the spanner")
        if e in path:
            raise StructuralError(f"{where}: path uses the edge itself")
        try:
            seq = walk_vertices(e[0], path)
        except StructuralError as exc:
            raise StructuralError(f"{where}: {exc}") from None
        if seq[-1] != e[1]:
            raise StructuralError(f"{where}: path ends at {seq[-1]}, not {e[1]}")
        if len(set(seq)) != len(seq):
            raise StructuralError(f"{where}: path is not simple")


def analyze_scheme(
    graph: WeightedGraph, cs: ChargingScheme, k: int, eps: Fraction | None
) -> SimplicityReport:
    """Counts, acyclicity and (when ``eps`` is given) the per-pair path inequality."""
    check_structure(graph, cs)
    counts = {e: 0 for e in graph.edges}
    counts.update(cs.charges())
    max_tree = max((counts[e] for e in cs.tree), default=0)
    max_nontree = max((counts[e] for e in cs.pairs), default=0)
    cycle = _find_cycle(cs.digraph())
    weak = []
    if eps is not None:
        factor = 1 + eps
        weak = [e for e in sorted(cs.pairs) if factor * graph.weight(*e) > cs.path_weight(e)]
    return SimplicityReport(
        k=k,
        counts=counts,
        max_tree=max_tree,
        max_nontree=max_nontree,
        acyclic=cycle is None,
        strong=eps is not None and not weak,
        tree_weight=graph.total_weight(cs.tree),
        spanner_weight=graph.total_weight(),
        cycle=cycle,
        weak_pairs=weak,
    )


def verify_scheme(s: Spanner, cs: ChargingScheme, k: int) -> SimplicityReport:
    return analyze_scheme(s.as_graph(), cs, k, s.eps)


def lightness_certificate(s: Spanner, report: SimplicityReport, k: int) -> Fraction:
    """The factor 1 + k/eps bounding w(S) / w(T) for a qualifying scheme."""
    if report.k != k:
        raise CertificateRefused(f"report was computed for k={report.k}, not k={k}")
    if not report.verdict:
        why = [
            name
            for name, ok in (
                ("k-simple", report.k_simple),
                ("acyclic", report.acyclic),
                ("strong", report.strong),
            )
            if not ok
        ]
        raise CertificateRefused("scheme is not " + " and not ".join(why))
    bound = 1 + Fraction(k) / s.eps
    if s.weight > bound * report.tree_weight:
        raise LightspanError(
            f"weight {s.weight} exceeds {bound} * {report.tree_weight} for a qualifying scheme"
        )
    return bound


# --- outer-planar construction -----------------------------------------


def _check_boundary_order(g: WeightedGraph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise InputError("outer-face order must list every vertex exactly once")
    if g.n < 3:
        raise InputError("an outer-planar face structure needs at least 3 vertices")
    for a, b in zip(order, [*order[1:], order[0]]):
        if not g.has_edge(a, b):
            raise InputError(f"boundary edge {a}-{b} is missing from the graph")


def outerplanar_charging(
    g: WeightedGraph, order: Sequence[int], tree: Iterable[Edge]
) -> ChargingScheme:
    """Acyclic 1-simple scheme of a 2-connected outer-planar graph to a
    boundary path.

    ``order`` is the cyclic order of the outer face and ``tree`` must be the
    boundary cycle minus one boundary edge.  Every internal face is bounded
    by one edge above it (towards the excluded boundary edge) and a run of
    edges below it; the edge above charges the run.  Faces are emitted
    innermost first.
    """
    _check_boundary_order(g, order)
    tree = frozenset(edge_key(*e) for e in tree)
    n = g.n
    cycle = [edge_key(a, b) for a, b in zip(order, [*order[1:], order[0]])]
    outside = [e for e in cycle if e not in tree]
    if len(outside) != 1 or len(tree) != n - 1 or not tree <= set(cycle):
        raise InputError("tree must be the outer boundary cycle minus exactly one edge")
    (excluded,) = outside
    # rotate so the boundary path runs from position 0 to n-1
    cut = cycle.index(excluded) + 1
    seq = [*order[cut:], *order[:cut]]
    pos = {v: i for i, v in enumerate(seq)}
    spans: dict[tuple[int, int], Edge] = {}
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        spans[(a, b)] = (u, v)
    ordered = sorted(spans, key=lambda ab: (ab[0], -ab[1]))
    stack: list[tuple[int, int]] = []
    for a, b in ordered:
        while stack and stack[-1][1] <= a:
            stack.pop()
        if stack and b > stack[-1][1]:
            raise InputError(
                f"edges {spans[stack[-1]]} and {spans[(a, b)]} cross in the given embedding"
            )
        stack.append((a, b))
    reach: dict[int, list[int]] = {}
    for a, b in spans:
        reach.setdefault(a, []).append(b)
    pairs: dict[Edge, tuple[Edge, ...]] = {}

    def tiles(a: int, b: int) -> list[int]:
        stops = [a]
        c = a
        while c != b:
            c = max(x for x in reach[c] if x <= b and (c, x) != (a, b))
            stops.append(c)
        return stops

    # innermost faces first: shorter spans are nested inside longer ones
    for a, b in sorted((ab for ab in spans if ab[1] - ab[0] > 1), key=lambda ab: (ab[1] - ab[0], ab)):
        stops = tiles(a, b)
        e = spans[(a, b)]
        verts = [seq[x] for x in stops]
        if verts[0] != e[0]:
            verts.reverse()
        pairs[e] = edges_of(verts)
    return ChargingScheme(g, tree, pairs)


@dataclass(frozen=True)
class BlockTree:
    edges: frozenset[Edge]
    blocks: tuple[tuple[int, ...], ...]


def outerplanar_block_tree(s: WeightedGraph, order: Sequence[int]) -> BlockTree:
    """Spanning forest made of, per 2-connected block, its boundary cycle
    minus the heaviest boundary edge; bridges are kept."""
    if sorted(order) != list(range(s.n)):
        raise InputError("outer-face order must list every vertex exactly once")
    rank = {v: i for i, v in enumerate(order)}
    h = nx.Graph()
    h.add_nodes_from(range(s.n))
    h.add_edges_from(s.edges)
    tree: set[Edge] = set()
    blocks = []
    for comp in nx.biconnected_components(h):
        verts = sorted(comp, key=rank.__getitem__)
        if len(verts) == 2:
            tree.add(edge_key(*verts))
            continue
        ring = [edge_key(a, b) for a, b in zip(verts, [*verts[1:], verts[0]])]
        for e in ring:
            if not s.has_edge(*e):
                raise InputError(f"block on {verts} has no boundary edge {e}; not outer-planar in this order")
        drop = max(ring, key=lambda e: (s.weight(*e), e))
        tree.update(e for e in ring if e != drop)
        blocks.append(tuple(verts))
    return BlockTree(frozenset(tree), tuple(sorted(blocks)))


def outerplanar_block_charging(s: WeightedGraph, order: Sequence[int]) -> ChargingScheme:
    """Outer-planar scheme for a graph whose vertices all lie on the outer
    face in ``order`` but which need not be 2-connected."""
    bt = outerplanar_block_tree(s, order)
    pairs: dict[Edge, tuple[Edge, ...]] = {}
    for verts in bt.blocks:
        index = {v: i for i, v in enumerate(verts)}
        inner = [(index[a], index[b]) for a, b in s.edges if a in index and b in index]
        sub = WeightedGraph(len(verts), [(a, b, s.weight(verts[a], verts[b])) for a, b in inner])
        sub_tree = [
            (index[a], index[b]) for a, b in bt.edges if a in index and b in index
        ]
        local = outerplanar_charging(sub, list(range(len(verts))), sub_tree)
        for (a, b), path in local.pairs.items():
            e = edge_key(verts[a], verts[b])
            seq = [verts[x] for x in walk_vertices(a, path)]
            if seq[0] != e[0]:
                seq.reverse()
            pairs[e] = edges_of(seq)
    return ChargingScheme(s, bt.edges, pairs)


# --- weak schemes --------------------------------------------------------


def splice(path: Sequence[Edge], start: int, removed: Edge, detour: Sequence[Edge]) -> tuple[Edge, ...]:
    """Replace ``removed`` on the walk by ``detour`` and loop-erase."""
    verts = walk_vertices(start, path)
    det = walk_vertices(removed[0], detour)
    out = [verts[0]]
    for a, b in zip(verts, verts[1:]):
        if edge_key(a, b) == removed:
            out.extend((det if a == removed[0] else det[::-1])[1:])
        else:
            out.append(b)
    return edges_of(loop_erase(out))


def strengthen_weak_scheme(s: Spanner, super_cs: ChargingScheme) -> ChargingScheme:
    """Remove the edges of the supergraph that are not in ``s`` one at a time,
    heaviest first, splicing each one's path into the paths that use it."""
    host = super_cs.graph
    real = s.edges
    for e in real:
        if not host.has_edge(*e) or host.weight(*e) != s.graph.weight(*e):
            raise StructuralError(f"spanner edge {e} is not an edge of the supergraph")
    if not super_cs.tree <= real:
        raise StructuralError("tree edges must all belong to the spanner")
    pairs = dict(super_cs.pairs)
    extra = sorted((e for e in host.edges if e not in real), key=lambda e: (host.weight(*e), e), reverse=True)
    users: dict[Edge, set[Edge]] = {}
    for e, path in pairs.items():
        for f in path:
            users.setdefault(f, set()).add(e)
    for gone in extra:
        detour = pairs.pop(gone)
        for f in detour:
            users[f].discard(gone)
        for e in sorted(users.pop(gone, ())):
            old = pairs[e]
            new = splice(old, e[0], gone, detour)
            if not new or walk_vertices(e[0], new)[-1] != e[1]:
                raise StructuralError(f"splicing {gone} disconnects the path of {e}")
            for f in old:
                if f != gone:
                    users[f].discard(e)
            for f in new:
                users.setdefault(f, set()).add(e)
            pairs[e] = new
    return ChargingScheme(s.as_graph(), super_cs.tree, pairs)


# --- file format ---------------------------------------------------------


def format_scheme(cs: ChargingScheme) -> str:
    lines = []
    for e in sorted(cs.pairs):
        flat = " ".join(f"{a} {b}" for a, b in cs.pairs[e])
        lines.append(f"{e[0]} {e[1]} : {flat}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")


def parse_scheme(text: str, graph: WeightedGraph, tree: Iterable[Edge] | None = None) -> ChargingScheme:
    """Read pairs; the tree defaults to the graph edges that own no pair."""
    pairs: dict[Edge, tuple[Edge, ...]] = {}
    for lineno, line in _content_lines(text):
        head, sep, tail = line.partition(":")
        try:
            if not sep:
                raise ValueError
            u, v = (int(t) for t in head.split())
            flat = [int(t) for t in tail.split()]
            if len(flat) % 2:
                raise ValueError
        except ValueError:
            raise InputError(f"line {lineno}: expected 'u v : a1 b1 a2 b2 ...'") from None
        e = edge_key(u, v)
        if e in pairs:
            raise InputError(f"line {lineno}: second pair for edge {u}-{v}")
        pairs[e] = tuple(edge_key(a, b) for a, b in zip(flat[::2], flat[1::2]))
    if tree is None:
        tree = [e for e in graph.edges if e not in pairs]
    return ChargingScheme(graph, frozenset(tree), pairs)


def read_scheme(path: str | Path, graph: WeightedGraph, tree: Iterable[Edge] | None = None) -> ChargingScheme:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_scheme(text, graph, tree)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


__all__ = [
    "ChargingScheme",
    "SimplicityReport",
    "analyze_scheme",
    "check_structure",
    "verify_scheme",
    "lightness_certificate",
    "outerplanar_charging",
    "outerplanar_block_tree",
    "outerplanar_block_charging",
    "strengthen_weak_scheme",
    "splice",
    "loop_erase",
    "format_scheme",
    "parse_scheme",
    "read_scheme",
]
