"""Charging forest over a k-path and the charging scheme it induces.

The forest lives on the line graph of a k-path: its nodes ("phi-vertices")
are the edges of the k-path and the nodes that are spanning-tree edges are
the roots.  Bags are processed left to right.  Forest edges carry one of
three labels:

* bold: added by the triangle rule, ((x, y), (x, z)) with yz a tree edge;
* dashed: provisional, mirroring the contracted forest when a vertex with
  no tree edge inside its bag is introduced;
* mixed: a dashed edge that was kept.

A dashed-free tree is a maximal subtree without dashed edges.  Each bag also
keeps a contracted forest: the tree connectivity among the bag's vertices
with one rank per edge, equal to the smallest tree-edge rank on the
underlying tree path.

Vertices of the normalized graph are not materialised.  A tree edge belongs
to the bag of the normalized graph given by ``edge_bag``, and "the tree
restricted to bags j..i" means the tree edges whose bag lies in that range.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .charging import ChargingScheme, edges_of
from .errors import ForestConstructionError, InputError
from .graph import Edge, TreePaths, UnionFind, edge_key
from .pathdec import NormalizedGraph, SmoothPathDecomposition

BOLD = "bold"
DASHED = "dashed"
MIXED = "mixed"


@dataclass
class ForestEdge:
    kind: str
    rank: int
    bag: int


def charge_bound(pw: int) -> int:
    """Per-tree-edge charge budget 2(pw-2) + 4 pw^2 (never negative)."""
    return max(0, 2 * (pw - 2) + 4 * pw * pw)


class ChargingForest:
    """Mutable construction state; ``bag`` is the last processed bag."""

    def __init__(self, ng: NormalizedGraph, tree: Iterable[Edge], *, old_tree_triangles: bool = False):
        self.graph = ng.original
        self.dec: SmoothPathDecomposition = ng.decomposition
        self.edge_bag = ng.edge_bag
        self.tree = frozenset(edge_key(*e) for e in tree)
        for e in self.tree:
            if e not in self.edge_bag:
                raise InputError(f"tree edge {e} is not an edge of the k-path")
        self.old_tree_triangles = old_tree_triangles
        self.adj: dict[Edge, dict[Edge, ForestEdge]] = {}
        self.df = UnionFind()
        self.df_rooted: dict[Edge, bool] = {}
        self.df_members: dict[Edge, list[Edge]] = {}
        self.comp = UnionFind()
        self.comp_roots: dict[Edge, int] = {}
        self.lam: dict[int, dict[int, int]] = {}
        self.rank: dict[Edge, int] = {}
        self.max_rank = 0
        self.bag = -1
        self.stats = {"bold": 0, "dashed": 0, "converted": 0, "deleted": 0, "two_root_merges": 0}

    # --- primitive updates -------------------------------------------

    @property
    def n_bags(self) -> int:
        return len(self.dec)

    def add_phi(self, e: Edge) -> None:
        if e in self.adj:
            return
        self.adj[e] = {}
        rooted = e in self.tree
        self.df.add(e)
        self.df_rooted[e] = rooted
        self.df_members[e] = [e]
        self.comp.add(e)
        self.comp_roots[e] = int(rooted)

    def _merge_df(self, p: Edge, q: Edge) -> None:
        a, b = self.df.find(p), self.df.find(q)
        if a == b:
            return
        self.df.union(a, b)
        keep = self.df.find(a)
        lose = b if keep == a else a
        self.df_rooted[keep] = self.df_rooted[keep] or self.df_rooted.pop(lose)
        self.df_members[keep].extend(self.df_members.pop(lose))

    def _merge_comp(self, p: Edge, q: Edge) -> None:
        a, b = self.comp.find(p), self.comp.find(q)
        if a == b:
            return
        self.comp.union(a, b)
        keep = self.comp.find(a)
        lose = b if keep == a else a
        self.comp_roots[keep] += self.comp_roots.pop(lose)

    def _rebuild_components(self) -> None:
        # a deletion split a component; union-find cannot undo merges
        self.comp = UnionFind(self.adj)
        self.comp_roots = {}
        for p, nb in self.adj.items():
            for q in nb:
                self.comp.union(p, q)
        for p in self.adj:
            c = self.comp.find(p)
            self.comp_roots[c] = self.comp_roots.get(c, 0) + (p in self.tree)

    def add_edge(self, p: Edge, q: Edge, kind: str, rank: int, bag: int) -> None:
        rec = ForestEdge(kind, rank, bag)
        self.adj[p][q] = rec
        self.adj[q][p] = rec
        self._merge_comp(p, q)
        if kind != DASHED:
            self._merge_df(p, q)
        self.stats[kind] = self.stats.get(kind, 0) + 1

    def convert(self, p: Edge, q: Edge) -> None:
        rec = self.adj[p][q]
        if rec.kind != DASHED:
            raise ForestConstructionError(f"edge {p}-{q} is {rec.kind}, not dashed")
        rec.kind = MIXED
        self._merge_df(p, q)
        self.stats["converted"] += 1

    def delete_dashed(self, p: Edge, q: Edge) -> None:
        if self.adj[p][q].kind != DASHED:
            raise ForestConstructionError(f"only dashed edges may be deleted, not {p}-{q}")
        del self.adj[p][q]
        del self.adj[q][p]
        self.stats["deleted"] += 1

    def df_root(self, p: Edge) -> Edge:
        return self.df.find(p)

    def is_rooted_df(self, p: Edge) -> bool:
        return self.df_rooted[self.df.find(p)]

    def forest_path(self, p: Edge, q: Edge) -> list[tuple[Edge, Edge]]:
        """Forest edges on the p-to-q path (p, q in one component)."""
        prev: dict[Edge, Edge | None] = {p: None}
        queue = deque([p])
        while queue:
            x = queue.popleft()
            if x == q:
                break
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        if q not in prev:
            raise ForestConstructionError(f"{p} and {q} are not connected")
        out = []
        x = q
        while prev[x] is not None:
            out.append((prev[x], x))
            x = prev[x]
        return out[::-1]

    def path_to_root(self, p: Edge) -> list[tuple[Edge, Edge]]:
        """Forest edges from p to the root of its component."""
        prev: dict[Edge, Edge | None] = {p: None}
        queue = deque([p])
        while queue:
            x = queue.popleft()
            if x in self.tree:
                out = []
                while prev[x] is not None:
                    out.append((prev[x], x))
                    x = prev[x]
                return out[::-1]
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        raise ForestConstructionError(f"the component of {p} has no root")

    def is_active(self, e: Edge, i: int) -> bool:
        """Both endpoints survive into bag i+1."""
        if i + 1 >= self.n_bags:
            return False
        nxt = self.dec[i + 1]
        return e[0] in nxt and e[1] in nxt

    # --- triangle rule ---------------------------------------------------

    def try_triangle(self, p: Edge, q: Edge, bag: int) -> bool:
        """Add the bold edge p-q if the triangle rule admits it."""
        dp, dq = self.df.find(p), self.df.find(q)
        if dp == dq or (self.df_rooted[dp] and self.df_rooted[dq]):
            return False
        cp, cq = self.comp.find(p), self.comp.find(q)
        if cp == cq:
            cycle = self.forest_path(p, q)
        elif self.comp_roots[cp] and self.comp_roots[cq]:
            # both roots hang off one virtual node, so this closes a cycle too
            cycle = self.path_to_root(p) + self.path_to_root(q)
            self.stats["two_root_merges"] += 1
        else:
            cycle = None
        if cycle is not None:
            dashed = [
                (self.adj[a][b].bag, self.adj[a][b].rank, edge_key_phi(a, b), a, b)
                for a, b in cycle
                if self.adj[a][b].kind == DASHED
            ]
            if not dashed:
                raise ForestConstructionError(f"cycle through {p}, {q} without a dashed edge")
            *_, a, b = max(dashed)
            self.delete_dashed(a, b)
            if cp != cq:
                self._rebuild_components()
        self.add_edge(p, q, BOLD, 0, bag)
        return True

    def greedy_triangles(self, candidates: list[tuple[Edge, Edge]], bag: int) -> None:
        candidates = sorted({(min(p, q), max(p, q)) for p, q in candidates})
        changed = True
        while changed:
            changed = False
            for p, q in candidates:
                if q not in self.adj[p] and self.try_triangle(p, q, bag):
                    changed = True

    # --- dashed-to-mixed conversion ---------------------------------------

    def convert_dashed(self, i: int) -> int:
        """Grow every unrooted dashed-free tree without an active phi-vertex.

        Dashed edges leaving the tree are taken earliest bag first, then
        highest rank.  After the last bag nothing is active, so trees grow
        until they reach a root.  Returns the number of conversions.
        """
        count = 0
        heads = sorted({self.df.find(p) for p in self.adj})
        for h in heads:
            while True:
                h = self.df.find(h)
                if self.df_rooted[h]:
                    break
                members = self.df_members[h]
                if any(self.is_active(p, i) for p in members):
                    break
                best = None
                for p in members:
                    for q, rec in self.adj[p].items():
                        if rec.kind == DASHED:
                            key = (rec.bag, -rec.rank, edge_key_phi(p, q))
                            if best is None or key < best[0]:
                                best = (key, p, q)
                if best is None:
                    raise ForestConstructionError(
                        f"bag {i}: dashed-free tree of {min(members)} cannot reach an active phi-vertex"
                    )
                self.convert(best[1], best[2])
                count += 1
        return count

    # --- contracted forest -------------------------------------------------

    def lam_add_edge(self, a: int, b: int, r: int) -> None:
        self.lam.setdefault(a, {})[b] = r
        self.lam.setdefault(b, {})[a] = r

    def lam_forget(self, v: int) -> None:
        """Delete v and chain its neighbours in rank order."""
        nbrs = sorted(self.lam.pop(v, {}).items(), key=lambda t: t[1])
        for w, _ in nbrs:
            del self.lam[w][v]
        for (a, r), (b, _) in zip(nbrs, nbrs[1:]):
            self.lam_add_edge(a, b, r)

    def lam_edges(self) -> dict[Edge, int]:
        return {edge_key(a, b): r for a, nb in self.lam.items() for b, r in nb.items()}


def edge_key_phi(p: Edge, q: Edge) -> tuple[Edge, Edge]:
    return (p, q) if p < q else (q, p)


def init_forest(ng: NormalizedGraph, tree: Iterable[Edge], **options) -> ChargingForest:
    """Process bag 0: bold edges only, ranks 1..m and the first contracted forest."""
    f = ChargingForest(ng, tree, **options)
    x = sorted(f.dec[0])
    for a, b in combinations(x, 2):
        if not f.graph.has_edge(a, b):
            raise InputError(f"first bag is not a clique: {a}-{b} missing")
        f.add_phi((a, b))
    inside = sorted(e for e in f.tree if e[0] in f.dec[0] and e[1] in f.dec[0])
    cands = []
    for y, z in inside:
        for s in x:
            if s != y and s != z:
                cands.append((edge_key(s, y), edge_key(s, z)))
    f.greedy_triangles(cands, 0)
    for r, e in enumerate(inside, 1):
        f.rank[e] = r
    f.max_rank = len(inside)
    forgotten = f.dec.forgotten_vertex(0)
    top = None
    if forgotten is not None:
        incident = [e for e in inside if forgotten in e]
        if incident:
            top = max(incident, key=f.rank.__getitem__)
            last = inside[-1] if inside else None
            if last != top:
                f.rank[top], f.rank[last] = f.rank[last], f.rank[top]
    if forgotten is not None:
        for a in x:
            if a != forgotten:
                f.lam.setdefault(a, {})
        keep = None if top is None else (top[0] if top[1] == forgotten else top[1])
        for a, b in inside:
            if (a, b) == top:
                continue
            a2 = keep if a == forgotten else a
            b2 = keep if b == forgotten else b
            f.lam_add_edge(a2, b2, f.rank[(a, b)])
    f.bag = 0
    if f.n_bags == 1:
        f.convert_dashed(0)
    return f


def step_free(f: ChargingForest, i: int, u: int) -> None:
    x = f.dec[i]
    if any(edge_key(u, w) in f.tree for w in x if w != u):
        raise ForestConstructionError(f"bag {i}: vertex {u} is not free")
    for w in sorted(x - {u}):
        f.add_phi(edge_key(u, w))
    for (a, b), r in sorted(f.lam_edges().items(), key=lambda t: t[1]):
        f.add_edge(edge_key(u, a), edge_key(u, b), DASHED, r, i)
    f.convert_dashed(i)
    v = f.dec.forgotten_vertex(i)
    if v is not None:
        if v == u:
            raise ForestConstructionError(f"bag {i}: vertex {u} is isolated in the tree")
        f.lam.setdefault(u, {})
        f.lam_forget(v)


def step_nonfree(f: ChargingForest, i: int, u: int) -> None:
    x = f.dec[i]
    v = f.dec.forgotten_vertex(i)
    nbrs = sorted(w for w in x if w != u and edge_key(u, w) in f.tree)
    if not nbrs:
        raise ForestConstructionError(f"bag {i}: vertex {u} is free")
    for w in sorted(x - {u}):
        f.add_phi(edge_key(u, w))
    cands = []
    for w in nbrs:
        for a in x:
            if a != u and a != w:
                cands.append((edge_key(a, u), edge_key(a, w)))
    if f.old_tree_triangles:
        for a, b in combinations(sorted(x - {u}), 2):
            if (a, b) in f.tree:
                cands.append((edge_key(u, a), edge_key(u, b)))
    f.greedy_triangles(cands, i)
    if v in nbrs:
        nbrs.remove(v)
        nbrs.insert(0, v)
    base = f.max_rank
    for j, w in enumerate(nbrs, 1):
        f.rank[edge_key(u, w)] = base + j
    f.max_rank = base + len(nbrs)
    branching = v is not None and v != u and v not in nbrs
    if branching:
        f.convert_dashed(i)
    if v is None:
        return
    if u == v:
        for j, (a, b) in enumerate(zip(nbrs, nbrs[1:]), 1):
            f.lam_add_edge(a, b, base + j)
    elif nbrs[0] == v:
        moved = f.lam.pop(v, {})
        for w, r in moved.items():
            del f.lam[w][v]
        f.lam.setdefault(u, {})
        for w, r in moved.items():
            f.lam_add_edge(u, w, r)
        for j, w in enumerate(nbrs[1:], 2):
            f.lam_add_edge(u, w, base + j)
    else:
        f.lam.setdefault(u, {})
        for j, w in enumerate(nbrs, 1):
            f.lam_add_edge(u, w, base + j)
        f.lam_forget(v)


def step(f: ChargingForest, i: int) -> None:
    """Process bag i >= 1."""
    if i != f.bag + 1:
        raise ForestConstructionError(f"bag {i} processed out of order (last was {f.bag})")
    u = f.dec.introduced_vertex(i)
    free = not any(edge_key(u, w) in f.tree for w in f.dec[i] if w != u)
    if free:
        step_free(f, i, u)
    else:
        step_nonfree(f, i, u)
    f.bag = i
    if i == f.n_bags - 1:
        f.convert_dashed(i)


def build_forest(
    ng: NormalizedGraph,
    tree: Iterable[Edge],
    *,
    after_bag: Callable[[ChargingForest, int], None] | None = None,
    **options,
) -> ChargingForest:
    f = init_forest(ng, tree, **options)
    if after_bag:
        after_bag(f, 0)
    for i in range(1, f.n_bags):
        step(f, i)
        if after_bag:
            after_bag(f, i)
    return f


# --- invariant checker ----------------------------------------------------


@dataclass
class InvariantReport:
    bag: int
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, tag: str, msg: str) -> None:
        self.violations.append((tag, msg))

    def broken(self) -> set[str]:
        return {tag for tag, _ in self.violations}


def _label(nodes: Iterable, nbrs: Callable) -> dict:
    lab: dict = {}
    for s in nodes:
        if s in lab:
            continue
        lab[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs(x):
                if y not in lab:
                    lab[y] = s
                    stack.append(y)
    return lab


def _tree_components(vertices: Iterable[int], edges: Iterable[Edge]) -> dict[int, int]:
    uf = UnionFind(vertices)
    for a, b in edges:
        uf.union(a, b)
    return {x: uf.find(x) for x in uf.parent}


def check_invariants(f: ChargingForest, i: int | None = None) -> InvariantReport:
    """Recompute everything from the explicit forest edges and test the
    four invariants plus the structural and contracted-forest claims."""
    i = f.bag if i is None else i
    rep = InvariantReport(i)
    dec, tree = f.dec, f.tree
    last = i == f.n_bags - 1
    nodes = sorted(f.adj)
    comp = _label(nodes, lambda x: f.adj[x])
    dff = _label(nodes, lambda x: (y for y, r in f.adj[x].items() if r.kind != DASHED))
    size: dict = {}
    n_edges: dict = {}
    roots: dict = {}
    for p in nodes:
        c = comp[p]
        size[c] = size.get(c, 0) + 1
        n_edges[c] = n_edges.get(c, 0) + len(f.adj[p])
        roots[c] = roots.get(c, 0) + (p in tree)
    for c in size:
        if n_edges[c] // 2 != size[c] - 1:
            rep.add("forest", f"component of {c} has a cycle")
        if roots[c] > 1:
            rep.add("forest", f"component of {c} has {roots[c]} roots")
    df_rooted: dict = {}
    for p in nodes:
        df_rooted[dff[p]] = df_rooted.get(dff[p], False) or p in tree

    seen = set().union(*dec.bags[: i + 1])
    t_now = [e for e in tree if f.edge_bag[e] <= i]
    tc = _tree_components(seen, t_now)

    classes: dict[tuple, set] = {}
    for p in nodes:
        a, b = tc[p[0]], tc[p[1]]
        if a == b:
            if not df_rooted[dff[p]]:
                rep.add("ii", f"{p} spans one tree component but its dashed-free tree is unrooted")
        else:
            classes.setdefault((min(a, b), max(a, b)), set()).add(comp[p])
    for cls, comps in classes.items():
        if len(comps) != 1:
            rep.add("i", f"phi-vertices between tree components {cls} lie in {len(comps)} forest trees")
        for c in comps:
            if roots[c]:
                rep.add("i", f"phi-vertices between tree components {cls} share a rooted tree")
    owner: dict = {}
    for cls, comps in classes.items():
        for c in comps:
            if c in owner and owner[c] != cls:
                rep.add("i", f"unrooted tree of {c} mixes classes {owner[c]} and {cls}")
            owner[c] = cls

    df_active: dict = {}
    for p in nodes:
        d = dff[p]
        df_active[d] = df_active.get(d, False) or f.is_active(p, i)
    for d, rooted in df_rooted.items():
        if not rooted and not df_active[d]:
            rep.add("iii", f"unrooted dashed-free tree of {d} has no active phi-vertex")
    if last:
        for p in nodes:
            for q, r in f.adj[p].items():
                if r.kind == DASHED and p < q:
                    rep.add("final", f"dashed edge {p}-{q} survives the last bag")

    # (iv): windows of bags j..i, grown leftwards
    xi = sorted(dec[i])
    uf = UnionFind()
    for x in xi:
        uf.add(x)
    by_bag: dict[int, list[Edge]] = {}
    for e in tree:
        by_bag.setdefault(f.edge_bag[e], []).append(e)
    for j in range(i, -1, -1):
        for x in dec[j]:
            uf.add(x)
        for a, b in by_bag.get(j, ()):
            uf.union(a, b)
        xj = sorted(dec[j])
        left: dict[tuple, set] = {}
        right: dict[tuple, set] = {}
        for side, verts in ((left, xj), (right, xi)):
            for a, b in combinations(verts, 2):
                ca, cb = uf.find(a), uf.find(b)
                if ca != cb and tc[a] != tc[b]:
                    side.setdefault((min(ca, cb), max(ca, cb)), set()).add(dff[(a, b)])
        for key in left.keys() & right.keys():
            trees = left[key] | right[key]
            if len(trees) > 1:
                rep.add("iv", f"window {j}..{i}: pairs between {key} lie in {len(trees)} dashed-free trees")
            elif df_rooted[next(iter(trees))]:
                rep.add("iv", f"window {j}..{i}: pairs between {key} lie in a rooted dashed-free tree")

    if not last:
        _check_contracted(f, i, rep, t_now)
    return rep


def _check_contracted(f: ChargingForest, i: int, rep: InvariantReport, t_now) -> None:
    v = f.dec.forgotten_vertex(i)
    expect = set(f.dec[i]) - {v}
    if set(f.lam) != expect:
        rep.add("lambda", f"contracted forest spans {sorted(f.lam)}, expected {sorted(expect)}")
        return
    edges = f.lam_edges()
    ranks = list(edges.values())
    if len(set(ranks)) != len(ranks):
        rep.add("lambda", "contracted forest ranks are not distinct")
    lc = _tree_components(f.lam, edges)
    if len(edges) != len(lc) - len(set(lc.values())):
        rep.add("lambda", "contracted forest has a cycle")
    paths = TreePaths(f.graph.n, t_now)
    for (a, b), r in edges.items():
        if not paths.connected(a, b):
            rep.add("lambda", f"edge {a}-{b} joins different tree components")
            continue
        low = min(f.rank.get(e, 0) for e in paths.path(a, b))
        if low != r:
            rep.add("lambda", f"edge {a}-{b} has rank {r}, tree path minimum is {low}")
    for a, b in combinations(sorted(f.lam), 2):
        if (lc[a] == lc[b]) != paths.connected(a, b):
            rep.add("lambda", f"connectivity of {a} and {b} differs from the tree")


# --- scheme extraction and audit --------------------------------------------


def preorder(f: ChargingForest) -> list[list[Edge]]:
    """DFS pre-order of every tree, from its root, children in sorted order."""
    out = []
    for r in sorted(f.tree):
        order = []
        stack = [(r, None)]
        while stack:
            x, parent = stack.pop()
            order.append(x)
            for y in sorted(f.adj[x], reverse=True):
                if y != parent:
                    stack.append((y, x))
        out.append(order)
    return out


def extract_scheme(f: ChargingForest) -> ChargingScheme:
    """Charging pairs on the k-path: each phi-vertex charges the cycle it
    closes together with its pre-order predecessor."""
    for p, nb in f.adj.items():
        for q, r in nb.items():
            if r.kind == DASHED:
                raise ForestConstructionError(f"dashed edge {p}-{q} left in the final forest")
    orders = preorder(f)
    covered = sum(len(o) for o in orders)
    if covered != len(f.adj):
        raise ForestConstructionError(f"{len(f.adj) - covered} phi-vertices lie in unrooted trees")
    paths = TreePaths(f.graph.n, f.tree)

    def cycle(e: Edge) -> frozenset[Edge]:
        if e in f.tree:
            return frozenset()
        return frozenset([e, *paths.path(*e)])

    pairs: dict[Edge, tuple[Edge, ...]] = {}
    for order in orders:
        for prev, cur in zip(order, order[1:]):
            if cur in f.tree:
                raise ForestConstructionError(f"tree {order[0]} contains a second root {cur}")
            pool = (cycle(cur) ^ cycle(prev)) - {cur}
            pairs[cur] = _path_in(pool, cur)
    return ChargingScheme(f.graph, f.tree, pairs)


def _path_in(pool: Iterable[Edge], e: Edge) -> tuple[Edge, ...]:
    nbrs: dict[int, list[int]] = {}
    for a, b in sorted(pool):
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    src, dst = e
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in nbrs.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if dst not in prev:
        raise ForestConstructionError(f"no path for {e} in the symmetric difference")
    seq = [dst]
    while prev[seq[-1]] is not None:
        seq.append(prev[seq[-1]])
    return edges_of(seq[::-1])


@dataclass
class AuditRecord:
    edge: Edge
    triangles: int
    pseudo_triangles: int
    total_charges: int
    flags: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "triangles": self.triangles,
            "pseudo_triangles": self.pseudo_triangles,
            "total_charges": self.total_charges,
            "flags": list(self.flags),
        }


def forest_triangles(f: ChargingForest) -> list[tuple[str, int, Edge]]:
    """(kind, shared vertex, associated pair) for every bold or mixed edge."""
    out = []
    for p, nb in f.adj.items():
        for q, r in nb.items():
            if p < q and r.kind != DASHED:
                (s,) = set(p) & set(q)
                y = p[0] if p[1] == s else p[1]
                z = q[0] if q[1] == s else q[1]
                out.append((r.kind, s, edge_key(y, z)))
    return sorted(out)


def audit_charges(f: ChargingForest, scheme: ChargingScheme, pw: int) -> list[AuditRecord]:
    """Per tree edge: associated triangles, pseudo-edges through it, and charges."""
    paths = TreePaths(f.graph.n, f.tree)
    tri = {e: 0 for e in f.tree}
    pseudo = {e: 0 for e in f.tree}
    for kind, _, yz in forest_triangles(f):
        if kind == BOLD:
            tri[yz] += 1
        else:
            for e in paths.path(*yz):
                pseudo[e] += 1
    charges = scheme.charges()
    out = []
    tri_cap, pseudo_cap, total_cap = pw - 2, 2 * pw * pw, charge_bound(pw)
    for e in sorted(f.tree):
        rec = AuditRecord(e, tri[e], pseudo[e], charges.get(e, 0))
        if rec.triangles > tri_cap:
            rec.flags.append("triangles")
        if rec.pseudo_triangles > pseudo_cap:
            rec.flags.append("pseudo_triangles")
        if rec.total_charges > total_cap:
            rec.flags.append("total_charges")
        out.append(rec)
    return out


__all__ = [
    "BOLD",
    "DASHED",
    "MIXED",
    "AuditRecord",
    "ChargingForest",
    "ForestEdge",
    "InvariantReport",
    "audit_charges",
    "build_forest",
    "charge_bound",
    "check_invariants",
    "extract_scheme",
    "forest_triangles",
    "init_forest",
    "preorder",
    "step",
    "step_free",
    "step_nonfree",
]
