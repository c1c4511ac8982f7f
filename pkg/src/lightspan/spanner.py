"""Greedy (1+eps)-spanners and verifiers for their defining properties."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InputError
from .graph import (
    INF,
    Edge,
    WeightedGraph,
    _dijkstra_int,
    all_pairs,
    edge_key,
    mst,
)


def as_epsilon(eps) -> Fraction:
    if isinstance(eps, float):
        raise InputError(f"epsilon {eps!r} must be exact (use a Fraction or 'p/q')")
    try:
        e = Fraction(eps)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad epsilon {eps!r}") from None
    if e <= 0:
        raise InputError(f"epsilon must be positive, got {e}")
    return e


@dataclass(frozen=True)
class Spanner:
    graph: WeightedGraph
    edges: frozenset[Edge]
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", as_epsilon(self.eps))
        object.__setattr__(self, "edges", frozenset(edge_key(*e) for e in self.edges))
        for u, v in self.edges:
            if not self.graph.has_edge(u, v):
                raise InputError(f"spanner edge {u}-{v} is not in the parent graph")

    @property
    def weight(self) -> Fraction:
        return self.graph.total_weight(self.edges)

    def as_graph(self) -> WeightedGraph:
        return self.graph.edge_subgraph(self.edges)


def _threshold(w_scaled: int, eps: Fraction) -> int:
    # smallest integer D with D >= (1+eps) * w_scaled
    p, q = eps.numerator, eps.denominator
    return -((-(q + p) * w_scaled) // q)


def greedy_spanner(g: WeightedGraph, eps) -> Spanner:
    """Scan edges by (weight, endpoints); keep uv iff (1+eps)w(uv) <= d_S(u, v)."""
    eps = as_epsilon(eps)
    s = g.scale
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    kept = []
    for u, v in g.sorted_edges():
        w = int(g.weight(u, v) * s)
        bound = _threshold(w, eps)
        if v not in _dijkstra_int(adj, u, target=v, bound=bound):
            kept.append((u, v))
            adj[u].append((v, w))
            adj[v].append((u, w))
    return Spanner(g, frozenset(kept), eps)


@dataclass
class StretchReport:
    eps: Fraction
    violations: list[tuple[int, int, Fraction | float, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_stretch(g: WeightedGraph, s: Spanner) -> StretchReport:
    """Exact all-pairs check of d_S <= (1+eps) d_G; lists (u, v, d_S, d_G) violations."""
    for u, v in s.edges:
        if not g.has_edge(u, v) or g.weight(u, v) != s.graph.weight(u, v):
            raise InputError(f"spanner edge {u}-{v} is absent from the graph")
    dg = all_pairs(g)
    ds = all_pairs(s.as_graph())
    factor = 1 + s.eps
    report = StretchReport(s.eps)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if dg[u][v] == INF:
                continue
            if ds[u][v] > factor * dg[u][v]:
                report.violations.append((u, v, ds[u][v], dg[u][v]))
    return report


@dataclass
class EdgePathReport:
    eps: Fraction
    violations: list[tuple[Edge, Fraction, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_edge_path_property(s: Spanner) -> EdgePathReport:
    """Check (1+eps) w(e) <= d_{S - e}(u, v) for every spanner edge e = uv.

    The shortest path in S - e is the strongest witness, so this covers every
    u-to-v path.  Violations are (e, (1+eps) w(e), d_{S-e}).
    """
    h = s.as_graph()
    adj = h.int_adj
    scale = h.scale
    report = EdgePathReport(s.eps)
    for u, v in sorted(s.edges):
        w = int(h.weight(u, v) * scale)
        bound = _threshold(w, s.eps)
        settled = _dijkstra_int(adj, u, target=v, bound=bound, skip=(u, v))
        if v in settled:
            report.violations.append(
                ((u, v), (1 + s.eps) * h.weight(u, v), Fraction(settled[v], scale))
            )
    return report


def verify_hereditary(s: Spanner, h: Iterable[Edge]) -> bool:
    """True iff the greedy spanner of the subgraph ``h`` is ``h`` itself."""
    sub = frozenset(edge_key(*e) for e in h)
    if not sub <= s.edges:
        raise InputError("edge subset is not contained in the spanner")
    return greedy_spanner(s.graph.edge_subgraph(sub), s.eps).edges == sub


class ZeroMSTWeight(InputError):
    pass


def lightness(g: WeightedGraph, s: Spanner) -> Fraction:
    w_mst = mst(g).weight
    if w_mst == 0:
        raise ZeroMSTWeight("lightness is undefined for a zero-weight MST")
    return s.weight / w_mst


def planar_lightness_bound(eps: Fraction) -> Fraction:
    """Weight bound 1 + 2/eps of greedy spanners of planar graphs."""
    return 1 + 2 / as_epsilon(eps)


__all__ = [
    "Spanner",
    "StretchReport",
    "EdgePathReport",
    "ZeroMSTWeight",
    "as_epsilon",
    "greedy_spanner",
    "verify_stretch",
    "verify_edge_path_property",
    "verify_hereditary",
    "lightness",
    "planar_lightness_bound",
]
