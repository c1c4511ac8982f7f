"""Single-fault mutations of a charging forest, for checker sensitivity tests."""

from __future__ import annotations

import copy
import random

from lightspan.forest import BOLD, DASHED, ChargingForest, ForestEdge


def inject(f: ChargingForest, rng: random.Random) -> list[ChargingForest]:
    """One copy with a bold or mixed edge removed, one with a stray bold edge."""
    nodes = sorted(f.adj)
    solid = [(p, q) for p in nodes for q, r in f.adj[p].items() if p < q and r.kind != DASHED]
    out = []
    if solid:
        p, q = rng.choice(solid)
        h = copy.deepcopy(f)
        del h.adj[p][q], h.adj[q][p]
        out.append(h)
    free = [(p, q) for p in nodes for q in nodes if p < q and q not in f.adj[p]]
    if free:
        p, q = rng.choice(free)
        h = copy.deepcopy(f)
        rec = ForestEdge(BOLD, 0, f.bag)
        h.adj[p][q] = h.adj[q][p] = rec
        out.append(h)
    return out
