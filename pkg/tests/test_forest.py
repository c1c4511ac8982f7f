from __future__ import annotations

import copy
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mutations import inject
from lightspan.charging import analyze_scheme
from lightspan.errors import ForestConstructionError, InputError
from lightspan.forest import (
    DASHED,
    MIXED,
    ChargingForest,
    ForestEdge,
    build_forest,
    charge_bound,
    check_invariants,
    extract_scheme,
    init_forest,
    step,
)
from lightspan.graph import WeightedGraph, mst
from lightspan.pathdec import PathDecomposition, SmoothPathDecomposition, generate_kpath, normalize
from lightspan.pipeline import charging_pipeline


def snapshots(g: WeightedGraph, bags) -> list[ChargingForest]:
    ng, tree = normalize(g, SmoothPathDecomposition(bags)), mst(g).edges
    out: list[ChargingForest] = []
    build_forest(ng, tree, after_bag=lambda f, i: out.append(copy.deepcopy(f)))
    return out


def dashed_free_tree(f: ChargingForest, p) -> set:
    seen, stack = {p}, [p]
    while stack:
        x = stack.pop()
        for y, r in f.adj[x].items():
            if r.kind != DASHED and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


# bags {0,1,2} -> {1,2,3} -> {2,3,4}; 3 is free when introduced
FREE_CASE = WeightedGraph(
    5,
    [(0, 1, 1), (1, 2, 1), (0, 2, 5), (1, 3, 50), (2, 3, 50), (2, 4, 1), (3, 4, 1)],
)
FREE_BAGS = [{0, 1, 2}, {1, 2, 3}, {2, 3, 4}]


class TestFirstBag:
    def test_single_edge_bag(self):
        g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
        f = snapshots(g, [{0, 1}, {1, 2}])[0]
        assert set(f.adj) == {(0, 1)} and (0, 1) in f.tree
        assert set(f.lam) == {1} and not f.lam_edges()

    def test_path_in_bag_joins_one_root(self):
        g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
        (f,) = snapshots(g, [{0, 1, 2}])
        tree_of_chord = dashed_free_tree(f, (0, 2))
        assert len(tree_of_chord & f.tree) == 1
        assert check_invariants(f, 0).ok

    def test_cross_pairs_share_unrooted_tree(self):
        g = WeightedGraph(4, [(0, 1, 1), (0, 2, 50), (1, 2, 50), (1, 3, 1), (2, 3, 1)])
        f = snapshots(g, [{0, 1, 2}, {1, 2, 3}])[0]
        t = dashed_free_tree(f, (0, 2))
        assert (1, 2) in t and not t & f.tree
        assert check_invariants(f, 0).ok

    def test_rank_swap_to_forgotten_vertex(self):
        # tree edges in bag 0: (0,1) and (1,2); 0 is forgotten, so (0,1) ranks highest
        f = snapshots(FREE_CASE, FREE_BAGS)[0]
        assert f.rank[(0, 1)] == 2 and f.rank[(1, 2)] == 1
        assert f.lam_edges() == {(1, 2): 1}

    def test_first_bag_must_be_clique(self):
        g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
        d = SmoothPathDecomposition([{0, 1, 2}])
        with pytest.raises(InputError, match="clique"):
            init_forest(normalize(g, d), mst(g).edges)


class TestSteps:
    def test_free_vertex_mirrors_contracted_edge(self):
        f0, f1, f2 = snapshots(FREE_CASE, FREE_BAGS)
        rec = f1.adj[(1, 3)][(2, 3)]
        assert rec.rank == 1 and rec.bag == 1
        # (1,3) dies after bag 1, so that one edge is converted and nothing else
        assert rec.kind == MIXED
        assert f1.stats["dashed"] == 1 and f1.stats["converted"] == 1
        assert check_invariants(f1, 1).ok and check_invariants(f2, 2).ok

    def test_forget_rule_chains_by_rank(self):
        f = snapshots(FREE_CASE, FREE_BAGS)[0]
        f.lam = {9: {1: 3, 2: 7}, 1: {9: 3}, 2: {9: 7}}
        f.lam_forget(9)
        assert f.lam_edges() == {(1, 2): 3}

    def test_forget_rule_three_neighbours(self):
        f = snapshots(FREE_CASE, FREE_BAGS)[0]
        f.lam = {9: {1: 5, 2: 2, 3: 8}, 1: {9: 5}, 2: {9: 2}, 3: {9: 8}}
        f.lam_forget(9)
        assert f.lam_edges() == {(1, 2): 2, (1, 3): 5}

    @pytest.mark.parametrize("seed", range(6))
    def test_full_run_pw2(self, seed):
        g, d = generate_kpath(12, 2, seed)
        ng = normalize(g, d)
        f = build_forest(ng, mst(g).edges)
        assert all(r.kind != DASHED for nb in f.adj.values() for r in nb.values())
        for p in f.adj:
            assert dashed_free_tree(f, p) & f.tree

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 25), st.integers(0, 10**6), st.sampled_from(["uniform", "constant", "rational"]))
    def test_invariants_after_every_bag(self, pw, extra, seed, dist):
        g, d = generate_kpath(pw + 1 + extra, pw, seed, dist)
        reports = []

        def hook(f, i):
            reports.append(check_invariants(f, i))
            # nothing is left for the conversion pass to do once a bag is done
            assert copy.deepcopy(f).convert_dashed(i) == 0

        build_forest(normalize(g, d), mst(g).edges, after_bag=hook)
        assert len(reports) == len(d)
        assert all(r.ok for r in reports), [r.violations for r in reports if not r.ok]

    def test_out_of_order_step(self):
        g, d = generate_kpath(6, 2, 1)
        f = init_forest(normalize(g, d), mst(g).edges)
        with pytest.raises(ForestConstructionError):
            step(f, 2)


class TestMutations:
    def test_checker_catches_single_faults(self):
        rng = random.Random(11)
        caught = total = 0
        for pw in (2, 3, 4):
            for seed in range(10):
                g, d = generate_kpath(rng.randint(pw + 2, 18), pw, seed)
                pick = rng.randrange(len(d))

                def hook(f, i):
                    nonlocal caught, total
                    if i == pick:
                        for h in inject(f, rng):
                            total += 1
                            caught += not check_invariants(h, i).ok

                build_forest(normalize(g, d), mst(g).edges, after_bag=hook)
        assert total >= 50
        assert caught / total >= 0.99

    def test_removed_bold_edge_on_first_bag(self):
        g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
        (f,) = snapshots(g, [{0, 1, 2}])
        ((p, q),) = [(p, q) for p in f.adj for q in f.adj[p] if p < q]
        del f.adj[p][q], f.adj[q][p]
        assert not check_invariants(f, 0).ok


class TestExtraction:
    def test_path_graph_gives_empty_scheme(self):
        g, d = generate_kpath(7, 1, 3)
        res = charging_pipeline(g, d, Fraction(1, 2))
        assert res.scheme.pairs == {}
        assert all(a.triangles == a.pseudo_triangles == a.total_charges == 0 for a in res.audit)

    def test_single_triangle(self):
        g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
        (f,) = snapshots(g, [{0, 1, 2}])
        cs = extract_scheme(f)
        assert cs.pairs == {(0, 2): ((0, 1), (1, 2))}

    def test_dashed_edge_blocks_extraction(self):
        g, d = generate_kpath(10, 2, 0)
        f = build_forest(normalize(g, d), mst(g).edges)
        p = next(iter(f.adj))
        q = next(x for x in f.adj if x != p and x not in f.adj[p])
        f.adj[p][q] = f.adj[q][p] = ForestEdge(DASHED, 1, 0)
        with pytest.raises(ForestConstructionError):
            extract_scheme(f)

    @pytest.mark.parametrize("pw, bound", [(0, 0), (1, 2), (2, 16), (3, 38), (4, 68), (5, 106)])
    def test_charge_bound(self, pw, bound):
        assert charge_bound(pw) == bound

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 30), st.integers(0, 10**6), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
    def test_pipeline_certificate(self, pw, extra, seed, eps):
        g, d = generate_kpath(pw + 1 + extra, pw, seed)
        res = charging_pipeline(g, d, eps)
        rep = res.report
        assert rep.verdict and rep.k == charge_bound(pw)
        assert set(res.scheme.pairs) == res.spanner.edges - mst(res.spanner.as_graph()).edges
        weak = analyze_scheme(res.weak_scheme.graph, res.weak_scheme, rep.k, None)
        assert rep.max_tree <= weak.max_tree
        for a in res.audit:
            assert a.pseudo_triangles <= 2 * pw * pw
            assert a.total_charges <= charge_bound(pw)
        assert res.spanner.weight <= (1 + Fraction(charge_bound(pw)) / eps) * res.mst_weight

    def test_pipeline_smooths_rough_input(self):
        g = WeightedGraph(4, [(0, 1, 1), (1, 2, 2), (0, 2, 2), (2, 3, 1)])
        res = charging_pipeline(g, PathDecomposition([{0, 1, 2}, {2, 3}]), 1)
        assert res.report.verdict and res.pw == 2

    def test_pipeline_needs_connected_graph(self):
        g = WeightedGraph(4, [(0, 1, 1), (2, 3, 1)])
        with pytest.raises(InputError):
            charging_pipeline(g, SmoothPathDecomposition([{0, 1}, {1, 2}, {2, 3}]), 1)
