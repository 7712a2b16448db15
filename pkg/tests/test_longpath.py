import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from dynparam.colour_coding import ColouringIndex, build_family, eval as colour_of
from dynparam.core import DelE, DomainError, DynGraph, InsE
from dynparam.longpath import (
    ColourPathRelation,
    LayerStats,
    LongPathState,
    colour_set,
    deletion_rule_counterexamples,
    lp_insert_edge,
    lp_delete_edge,
    lp_paraT_solve,
    lp_rebuild,
)
from dynparam.oracles import oracle_longpath


def brute_relation(graph, colour, k):
    """Triples from enumerating simple paths directly."""
    out = set()
    for a in graph.vertices():
        stack = [[a]]
        while stack:
            path = stack.pop()
            cols = [colour[x] for x in path]
            if len(set(cols)) < len(cols):
                continue
            out.add((colour_set(cols), a, path[-1]))
            if len(path) < k:
                for w in graph.adj[path[-1]]:
                    if w not in path:
                        stack.append(path + [w])
    return out


def test_insert_from_singletons():
    g = DynGraph(2)
    rel = ColourPathRelation([0, 1, 2], 2)
    lp_insert_edge(g, rel, 1, 2)
    assert rel.contains(0b110, 1, 2) and rel.contains(0b110, 2, 1)


def test_insert_extends_path():
    g = DynGraph(3, [(1, 2)])
    rel = lp_rebuild(g, [0, 1, 2, 3], 3)
    lp_insert_edge(g, rel, 2, 3)
    assert rel.contains(0b1110, 1, 3)
    assert rel == lp_rebuild(g, [0, 1, 2, 3], 3)


def test_same_colour_endpoints_add_nothing():
    g = DynGraph(2)
    rel = ColourPathRelation([0, 1, 1], 2)
    before = rel.triples()
    lp_insert_edge(g, rel, 1, 2)
    assert rel.triples() == before


def test_delete_only_edge():
    g = DynGraph(2, [(1, 2)])
    rel = lp_rebuild(g, [0, 1, 2], 2)
    lp_delete_edge(g, rel, 1, 2)
    assert rel.triples() == {(0b10, 1, 1), (0b100, 2, 2)}


def test_delete_in_triangle_keeps_detour():
    g = DynGraph(3, [(1, 2), (2, 3), (1, 3)])
    rel = lp_rebuild(g, [0, 1, 2, 3], 3)
    lp_delete_edge(g, rel, 1, 2)
    assert rel.contains(0b1110, 1, 2)
    assert not rel.contains(0b110, 1, 2)


def test_rebuild_examples():
    assert lp_rebuild(DynGraph(1), [0, 1], 3).triples() == {(0b10, 1, 1)}
    g = DynGraph(3, [(1, 2), (2, 3), (1, 3)])
    rel = lp_rebuild(g, [0, 1, 2, 3], 3)
    pairs = {(a, b) for (mask, a, b) in rel.triples() if bin(mask).count("1") == 2}
    assert pairs == {(a, b) for a, b in permutations(range(1, 4), 2)}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**15 - 1), st.lists(st.integers(1, 3), min_size=6, max_size=6))
def test_rebuild_matches_path_enumeration(mask, cols):
    pairs = [(u, v) for u in range(1, 7) for v in range(u + 1, 7)]
    g = DynGraph(6, [e for i, e in enumerate(pairs) if mask >> i & 1])
    colour = [0] + cols
    assert lp_rebuild(g, colour, 3).triples() == brute_relation(g, colour, 3)


@pytest.mark.parametrize("edges,s,t,ell,want", [
    ([(1, 2), (2, 3)], 1, 3, 2, True),
    ([], 1, 2, 1, False),
    ([(1, 2), (2, 3), (1, 3)], 1, 2, 2, True),
])
def test_query_examples(edges, s, t, ell, want):
    m = LongPathState(3, 3, s=s, t=t, ell=ell)
    for e in edges:
        m.apply(InsE(*e))
    assert m.answer() is want
    assert lp_paraT_solve(m.graph, s, t, ell) is want


def test_ell_zero_convention():
    m = LongPathState(3, 2)
    assert m.query(2, 2, 0) and not m.query(1, 2, 0)


def test_paraT_examples():
    assert not lp_paraT_solve(DynGraph(4, [(1, 2), (3, 4)]), 1, 4, 1)
    full = DynGraph(4, [(u, v) for u in range(1, 5) for v in range(u + 1, 5)])
    assert not lp_paraT_solve(full, 1, 2, 4)
    stats = LayerStats()
    assert lp_paraT_solve(DynGraph(3, [(1, 2), (2, 3)]), 1, 3, 2, stats)
    assert stats.rounds <= 3 * stats.orders


def test_kmax_guard():
    with pytest.raises(DomainError):
        LongPathState(5, 4)
    assert LongPathState(5, 4, max_ell=4).ell == 4


def test_projection_matches_member_rebuild():
    rng = random.Random(2)
    m = LongPathState(6, 2)
    for _ in range(12):
        u, v = rng.sample(range(1, 7), 2)
        m.apply(InsE(u, v) if rng.random() < 0.7 else DelE(u, v))
    k = m.family.k
    members = list(m.family_members())
    for idx in rng.sample(members, 40):
        colour = [0] + [colour_of(idx, k, x, m.family.c) for x in range(1, 7)]
        assert m.relation_for(idx) == lp_rebuild(m.graph, colour, k).triples()


def test_random_changes_match_oracle_and_rebuild():
    rng = random.Random(9)
    for trial in range(10):
        n = rng.randint(3, 8)
        m = LongPathState(n, 3, s=1, t=n)
        for _ in range(25):
            u, v = rng.sample(range(1, n + 1), 2)
            m.apply(InsE(u, v) if rng.random() < 0.6 else DelE(u, v))
            m.audit()
            m.check_invariants()
            for ell in range(0, 4):
                assert m.query(ell=ell) == oracle_longpath(n, m.graph.edges(), 1, n, ell)


def test_literal_deletion_rule_is_incomplete():
    # triangle with injective colours: the detour 1-3-2 does not place the
    # colours of 1 and 2 next to each other, so the one-step rule drops it
    g = DynGraph(3, [(1, 2), (1, 3), (2, 3)])
    missed, spurious = deletion_rule_counterexamples(g, [0, 1, 2, 3], 3, (1, 2))
    assert missed == {(0b1110, 1, 2), (0b1110, 2, 1)}
    assert spurious == set()


def test_restricted_deletion_is_exact_where_literal_fails():
    g = DynGraph(3, [(1, 2), (1, 3), (2, 3)])
    rel = lp_rebuild(g, [0, 1, 2, 3], 3)
    g.remove_edge(1, 2)
    rel.delete_edge(1, 2, g)
    assert rel == lp_rebuild(g, [0, 1, 2, 3], 3)
