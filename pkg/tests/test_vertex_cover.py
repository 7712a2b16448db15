import random

import pytest
from hypothesis import given, settings, strategies as st

from dynparam.core import DelE, DynGraph, IncK, DecK, InsE
from dynparam.oracles import oracle_vc
from dynparam.vertex_cover import SearchTree, VCState, is_cover, vc_paraT_solve


def build(n, kmax, edges):
    m = VCState(n, kmax)
    for e in edges:
        m.apply(InsE(*e))
    return m


def test_first_insertion():
    m = build(4, 2, [(1, 2)])
    assert m.tree.shape() == ((1, 2), (1,), (2,))


def test_second_insertion():
    m = build(4, 2, [(1, 2), (3, 4)])
    leaves = sorted(tuple(sorted(x.cand)) for x in m.tree.root.leaves())
    assert leaves == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert not m.query(1) and m.query(2)


def test_covered_insertion_keeps_shape():
    m = build(4, 2, [(1, 2), (3, 4)])
    shape = m.tree.shape()
    # every depth-1 node already branches; leaves sit at depth kmax
    m.apply(InsE(2, 4))
    assert m.tree.shape() == shape
    m.check_invariants()


def test_delete_collapses():
    m = build(4, 2, [(1, 2), (3, 4)])
    m.apply(DelE(3, 4))
    assert m.tree.shape() == ((1, 2), (1,), (2,))
    m.apply(DelE(1, 2))
    assert m.tree.shape() == ()
    assert m.query(1)


def test_star_spoke_deletion():
    m = build(5, 3, [(1, 2), (1, 3), (1, 4)])
    m.apply(DelE(1, 2))
    m.check_invariants()
    for k in range(1, 4):
        assert m.query(k) == oracle_vc(5, m.graph.edges(), k)


@pytest.mark.parametrize("edges,k,want", [
    ([(1, 2), (2, 3), (1, 3)], 1, False),
    ([(1, 2), (2, 3), (1, 3)], 2, True),
    ([], 1, True),
    ([(1, 2), (3, 4), (5, 6)], 2, False),
])
def test_query_examples(edges, k, want):
    m = build(6, 2, edges)
    assert m.query(k) is want


def test_paraT_examples():
    res = vc_paraT_solve(DynGraph(3, [(1, 2), (2, 3)]), 1)
    assert res.found and res.cover == {2}
    res = vc_paraT_solve(DynGraph(3, [(1, 2), (2, 3), (1, 3)]), 1)
    assert not res.found and res.steps <= 2 ** 3
    assert vc_paraT_solve(DynGraph(3), 1).cover == frozenset()


ops = st.lists(st.tuples(st.sampled_from("idkK"), st.integers(1, 7), st.integers(1, 7)),
               max_size=40)


@settings(max_examples=150, deadline=None)
@given(ops, st.integers(1, 3))
def test_random_sequences_match_oracle(seq, kmax):
    m = VCState(7, kmax)
    for kind, u, v in seq:
        if kind in "id" and u == v:
            continue
        op = {"i": InsE(u, v), "d": DelE(u, v), "k": DecK(), "K": IncK()}[kind]
        m.apply(op)
        m.check_invariants()
        for k in range(1, kmax + 1):
            assert m.query(k) == oracle_vc(7, m.graph.edges(), k)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**21 - 1), st.integers(1, 4))
def test_paraT_matches_oracle(mask, k):
    pairs = [(u, v) for u in range(1, 8) for v in range(u + 1, 8)]
    edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
    g = DynGraph(7, edges)
    res = vc_paraT_solve(g, k)
    assert res.found == oracle_vc(7, edges, k)
    assert res.steps <= 2 ** (k + 2)
    if res.found:
        assert len(res.cover) <= k and is_cover(g, res.cover)


def test_tree_node_bound_dense():
    rng = random.Random(4)
    m = VCState(10, 3)
    for _ in range(200):
        u, v = rng.sample(range(1, 11), 2)
        m.apply(InsE(u, v) if rng.random() < 0.6 else DelE(u, v))
        assert m.tree.size() <= 2 ** 4 - 1
    m.check_invariants()
