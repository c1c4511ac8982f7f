"""Random instance families beyond k-paths."""

from __future__ import annotations

import random
from itertools import combinations

from .errors import InputError
from .graph import WeightedGraph, edge_key
from .pathdec import _draw_weight


def random_graph(n: int, p: float, seed: int, weight_dist: str = "uniform") -> WeightedGraph:
    """G(n, p) with independent random weights; may be disconnected."""
    if n < 0 or not 0 <= p <= 1:
        raise InputError(f"bad random graph parameters n={n}, p={p}")
    rng = random.Random(seed)
    pairs = [e for e in combinations(range(n), 2) if rng.random() < p]
    return WeightedGraph(n, [(a, b, _draw_weight(rng, weight_dist)) for a, b in pairs])


def _triangulate(poly: list[int], rng: random.Random, out: list) -> None:
    # split the polygon on its first-last side at a random apex
    while len(poly) > 3:
        k = rng.randrange(1, len(poly) - 1)
        if k > 1:
            out.append((poly[0], poly[k]))
        if k < len(poly) - 2:
            out.append((poly[k], poly[-1]))
        left, right = poly[: k + 1], poly[k:]
        if len(left) < len(right):
            _triangulate(left, rng, out)
            poly = right
        else:
            _triangulate(right, rng, out)
            poly = left


def random_outerplanar(
    n: int, seed: int, keep: float = 0.5, weight_dist: str = "uniform"
) -> tuple[WeightedGraph, list[int]]:
    """Random triangulated polygon keeping each chord with probability ``keep``.

    Returns the graph and its outer-face vertex order.  Vertex labels are a
    random permutation of the polygon positions.
    """
    if n < 3:
        raise InputError(f"outer-planar instances need n >= 3, got {n}")
    rng = random.Random(seed)
    chords: list[tuple[int, int]] = []
    _triangulate(list(range(n)), rng, chords)
    label = list(range(n))
    rng.shuffle(label)
    boundary = [(i, (i + 1) % n) for i in range(n)]
    kept = boundary + sorted(c for c in chords if rng.random() < keep)
    edges = sorted({edge_key(label[a], label[b]) for a, b in kept})
    g = WeightedGraph(n, [(a, b, _draw_weight(rng, weight_dist)) for a, b in edges])
    return g, label
