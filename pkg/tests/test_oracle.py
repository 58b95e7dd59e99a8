from itertools import product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from planar_dh.decomp26 import decompose26
from planar_dh.decomp32 import decompose32
from planar_dh.decomp41 import decompose41
from planar_dh.errors import BudgetExceeded, ContractError
from planar_dh.gen import flipped_triangulation, named_solid, stacked_triangulation, stellate
from planar_dh.oracle import Prunes, exact_decide, min_h
from planar_dh.plane import PlaneGraph
from planar_dh.verify import check_dh

C5 = PlaneGraph({1: [2, 5], 2: [3, 1], 3: [4, 2], 4: [5, 3], 5: [1, 4]})
K4 = named_solid("tetrahedron").graph
OCTA = named_solid("octahedron").graph
ICO = named_solid("icosahedron").graph

# octahedron at d = 2: least h, from networkx core numbers over all 2^12 edge subsets
OCTA_MIN_H_2 = 2


def brute_force(g, d, h):
    """Feasibility by enumerating every H and asking networkx for the core number of the rest."""
    edges = sorted(g.edges())
    for bits in product((0, 1), repeat=len(edges)):
        hd = {}
        for e, b in zip(edges, bits):
            if b:
                for v in e:
                    hd[v] = hd.get(v, 0) + 1
        if max(hd.values(), default=0) > h:
            continue
        dg = nx.Graph()
        dg.add_nodes_from(g.vertices)
        dg.add_edges_from(e for e, b in zip(edges, bits) if not b)
        if max(nx.core_number(dg).values(), default=0) <= d:
            return True
    return False


def test_c5():
    assert not exact_decide(C5, 1, 0).feasible
    r = exact_decide(C5, 1, 1)
    assert r.feasible and check_dh(C5, r.witness, 1, 1).passed


def test_icosahedron_sharpness():
    r = exact_decide(ICO, 4, 0)
    assert not r.feasible and r.seconds < 1 and r.mode == "degeneracy"
    assert not exact_decide(ICO, 4, 0, strategy="edges").feasible
    r = exact_decide(ICO, 5, 0)
    assert r.feasible and check_dh(ICO, r.witness, 5, 0).passed
    r = exact_decide(ICO, 3, 1)
    assert not r.feasible and r.mode == "matching"
    r = exact_decide(ICO, 3, 1, strategy="edges")
    assert not r.feasible


def test_min_h_examples():
    m = min_h(ICO, 4)
    assert m.h == 1 and check_dh(ICO, m.witness, 4, 1).passed
    assert [r.feasible for r in m.refutations] == [False]
    assert min_h(K4, 3).h == 0
    assert min_h(OCTA, 2).h == OCTA_MIN_H_2


def test_octahedron_golden_is_independent():
    assert brute_force(OCTA, 2, OCTA_MIN_H_2)
    assert not brute_force(OCTA, 2, OCTA_MIN_H_2 - 1)


def test_exhaustive_mode():
    r = exact_decide(OCTA, 2, OCTA_MIN_H_2, exhaustive=True)
    assert r.feasible and r.mode == "exhaustive"
    assert check_dh(OCTA, r.witness, 2, OCTA_MIN_H_2).passed
    assert not exact_decide(OCTA, 2, OCTA_MIN_H_2 - 1, exhaustive=True).feasible


def test_budgets():
    with pytest.raises(BudgetExceeded):
        exact_decide(ICO, 2, 3, max_edges=20)
    with pytest.raises(BudgetExceeded):
        exact_decide(ICO, 2, 3, exhaustive=True, max_edges=29)
    with pytest.raises(BudgetExceeded):
        exact_decide(ICO, 2, 1, exhaustive=True, node_budget=100)
    with pytest.raises(BudgetExceeded):
        exact_decide(ICO, 2, 3, node_budget=5, strategy="edges")
    with pytest.raises(BudgetExceeded):
        exact_decide(stacked_triangulation(40, 1).graph, 2, 1, node_budget=1000)


def test_bad_arguments():
    with pytest.raises(ContractError):
        exact_decide(C5, -1, 0)
    with pytest.raises(ContractError):
        exact_decide(C5, 1, 2, strategy="matching")
    with pytest.raises(ContractError):
        exact_decide(C5, 1, 1, strategy="greedy")


# -- agreement ------------------------------------------------------------------------

def small_graphs():
    out = [C5, K4, OCTA, named_solid("tetrahedron").graph]
    for n in range(4, 7):
        for seed in range(3):
            out.append(stacked_triangulation(n, seed).graph)
            out.append(flipped_triangulation(n, seed).graph)
    for seed in range(8):
        g = nx.gnm_random_graph(7, 10 + seed % 5, seed=seed)
        if nx.check_planarity(g)[0]:
            _, emb = nx.check_planarity(g)
            rot = {v + 1: [u + 1 for u in emb.neighbors_cw_order(v)] for v in g}
            out.append(PlaneGraph(rot))
    return [g for g in out if g.m <= 16]


SMALL = small_graphs()


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_pruned_matches_exhaustive(g):
    for d in range(0, 4):
        for h in range(0, 4):
            a = exact_decide(g, d, h, exhaustive=True)
            b = exact_decide(g, d, h)
            c = exact_decide(g, d, h, strategy="edges")
            assert a.feasible == b.feasible == c.feasible
            for r in (a, b, c):
                if r.feasible:
                    assert check_dh(g, r.witness, d, h).passed


@pytest.mark.parametrize("g", SMALL[:8], ids=lambda g: f"n{g.n}m{g.m}")
def test_exhaustive_matches_networkx(g):
    for d, h in ((1, 0), (1, 1), (2, 0), (2, 1), (1, 2)):
        assert exact_decide(g, d, h, exhaustive=True).feasible == brute_force(g, d, h)


@pytest.mark.parametrize("off", ["caps", "count", "peel"])
def test_each_prune_is_optional(off):
    prunes = Prunes(**{off: False})
    for g in SMALL[:10]:
        for d, h in ((1, 1), (2, 0), (2, 1), (1, 3)):
            assert exact_decide(g, d, h, prunes=prunes, strategy="edges").feasible == \
                exact_decide(g, d, h, strategy="edges").feasible


def test_monotone():
    for g in SMALL:
        for d in range(3):
            for h in range(3):
                if exact_decide(g, d, h).feasible:
                    assert exact_decide(g, d + 1, h).feasible
                    assert exact_decide(g, d, h + 1).feasible


def test_worker_count_does_not_matter():
    g = flipped_triangulation(8, 2).graph
    for d, h in ((2, 1), (1, 3), (2, 2)):
        one = exact_decide(g, d, h, strategy="edges")
        two = exact_decide(g, d, h, strategy="edges", workers=2)
        assert (one.feasible, one.witness) == (two.feasible, two.witness)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 9), st.integers(0, 2**32))
def test_constructive_witnesses_accepted(n, seed):
    t = flipped_triangulation(n, seed)
    g = t.graph
    x, y, z = t.outer
    for (d, h), p in (((4, 1), decompose41(t).pair), ((3, 2), decompose32(t, x, y)),
                      ((2, 6), decompose26(t, x, y, z))):
        assert exact_decide(g, d, h).feasible
        assert check_dh(g, p, d, h).passed


def test_small_stellation_exploration():
    # not covered by the counting bound (n = 4 < 11); recorded as an observed value
    g = stellate(named_solid("tetrahedron"))
    g = getattr(g, "graph", g)
    r = exact_decide(g, 2, 3)
    assert r.feasible and check_dh(g, r.witness, 2, 3).passed
    assert exact_decide(g, 2, 3, exhaustive=True).feasible
    assert min_h(g, 2).h == 2
