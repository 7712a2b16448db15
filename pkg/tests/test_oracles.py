import random

import pytest

from dynparam.core import DelE, InsE, Query
from dynparam.oracles import (
    OracleSizeError,
    PROBLEMS,
    gen_boundary_crossing,
    gen_change_sequence,
    oracle_cstring,
    oracle_fvs,
    oracle_knapsack,
    oracle_longpath,
    oracle_plc,
    oracle_vc,
)

TRIANGLE = [(1, 2), (2, 3), (1, 3)]


def test_vc():
    assert oracle_vc(3, TRIANGLE, 2)
    assert not oracle_vc(3, TRIANGLE, 1)
    assert oracle_vc(3, [], 1)
    with pytest.raises(OracleSizeError):
        oracle_vc(21, [], 1)


def test_longpath():
    assert oracle_longpath(3, [(1, 2), (2, 3)], 1, 3, 2)
    assert not oracle_longpath(3, [(1, 2), (2, 3)], 1, 3, 3)
    assert oracle_longpath(3, [], 2, 2, 0)


def test_fvs():
    assert oracle_fvs(3, TRIANGLE, 1)
    assert oracle_fvs(5, [(1, 2), (2, 3), (4, 5)], 1)
    assert not oracle_fvs(6, TRIANGLE + [(4, 5), (5, 6), (4, 6)], 1)


def test_knapsack():
    assert oracle_knapsack([(3, 2), (4, 3)], 5, 7)
    assert not oracle_knapsack([(3, 2), (4, 3)], 4, 7)
    assert oracle_knapsack([(3, 2)], 0, 0)


def test_plc():
    assert oracle_plc([(i, i) for i in range(5)], 1)
    assert not oracle_plc([(0, 0), (1, 0), (0, 1)], 1)
    assert oracle_plc([], 1)


def test_cstring():
    assert oracle_cstring("AB", ["AAAA", "AAAB", "ABAA"], 1)
    assert not oracle_cstring("AB", ["AA", "BB"], 0)
    assert oracle_cstring("AB", ["AB", "BA"], 1)


def test_generator_empty_and_deterministic():
    assert gen_change_sequence("vcover", random.Random(1), 0).ops == []
    for p in PROBLEMS:
        a = gen_change_sequence(p, random.Random(8), 30)
        b = gen_change_sequence(p, random.Random(8), 30)
        assert a == b and a.to_script() == b.to_script()
        assert sum(isinstance(op, Query) for op in a.ops) == 30


@pytest.mark.parametrize("seed", range(20))
def test_deletions_target_present_edges(seed):
    scen = gen_change_sequence("fvs", random.Random(seed), 50)
    edges = set()
    for op in scen.ops:
        if isinstance(op, InsE):
            edges.add((min(op.u, op.v), max(op.u, op.v)))
        elif isinstance(op, DelE):
            assert (min(op.u, op.v), max(op.u, op.v)) in edges
            edges.discard((min(op.u, op.v), max(op.u, op.v)))


def test_boundary_generator_is_deterministic():
    assert gen_boundary_crossing(4).ops == gen_boundary_crossing(4).ops
