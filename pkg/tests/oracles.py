"""Reference computations that share no code with the package.

Everything here works on plain ``(n, [(u, v, Fraction)])`` data and uses
either brute force or networkx, so agreement with the package is evidence
rather than tautology.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx

INF = float("inf")


def nx_graph(n: int, edges) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for u, v, w in edges:
        h.add_edge(u, v, weight=Fraction(w))
    return h


def count_components(n: int, edges) -> int:
    return nx.number_connected_components(nx_graph(n, edges))


def is_forest(n: int, chosen) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v, _ in chosen:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def brute_force_forest_weight(n: int, edges) -> Fraction:
    """Minimum weight over every acyclic edge subset of size n - components."""
    size = n - count_components(n, edges)
    best = None
    for chosen in combinations(edges, size):
        if is_forest(n, chosen):
            w = sum((Fraction(c[2]) for c in chosen), Fraction(0))
            if best is None or w < best:
                best = w
    return best if best is not None else Fraction(0)


def floyd_warshall(n: int, edges) -> list[list]:
    d = [[INF] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = Fraction(0)
    for u, v, w in edges:
        w = Fraction(w)
        if w < d[u][v]:
            d[u][v] = d[v][u] = w
    for k in range(n):
        for i in range(n):
            if d[i][k] == INF:
                continue
            for j in range(n):
                alt = d[i][k] + d[k][j]
                if alt < d[i][j]:
                    d[i][j] = alt
    return d


def nx_distances(n: int, edges) -> list[list]:
    h = nx_graph(n, edges)
    out = [[INF] * n for _ in range(n)]
    for s, dist in nx.all_pairs_dijkstra_path_length(h, weight="weight"):
        for t, x in dist.items():
            out[s][t] = Fraction(x)
    return out


def naive_greedy(n: int, edges, eps: Fraction) -> set[tuple[int, int]]:
    """Greedy spanner straight from its definition, with networkx distances."""
    h = nx.Graph()
    h.add_nodes_from(range(n))
    kept = set()
    for u, v, w in sorted(((min(a, b), max(a, b), Fraction(w)) for a, b, w in edges), key=lambda t: (t[2], t[0], t[1])):
        try:
            d = nx.dijkstra_path_length(h, u, v, weight="weight")
        except nx.NetworkXNoPath:
            d = INF
        if (1 + eps) * w <= d:
            h.add_edge(u, v, weight=w)
            kept.add((u, v))
    return kept


def random_edges(rng: random.Random, n: int, p: float, lo: int = 1, hi: int = 20) -> list:
    return [
        (u, v, Fraction(rng.randint(lo, hi), rng.randint(1, 3)))
        for u, v in combinations(range(n), 2)
        if rng.random() < p
    ]
