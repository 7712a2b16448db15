import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from dynparam.core import DecK, Disable, Enable, FlipBit, IncK
from dynparam.oracles import oracle_collinear, oracle_plc
from dynparam.plc_kernel import (
    NO,
    PASSTHROUGH,
    Kernel,
    PointSet,
    collinear,
    collinear_points,
    cover_with_lines,
    passthrough_threshold,
    plc_decide,
    plc_kernel,
)


def place(ps, i, coords):
    for dim, value in enumerate(coords, 1):
        cur = ps.coords[i][dim - 1]
        diff = cur ^ value
        b = 0
        while diff:
            if diff & 1:
                ps.apply(FlipBit(i, dim, b))
            diff >>= 1
            b += 1
    ps.apply(Enable(i))


def point_set(points, kmax, n=None):
    ps = PointSet(n or len(points), 2, kmax)
    for i, p in enumerate(points, 1):
        place(ps, i, p)
    return ps


def test_flip_makes_collinear():
    ps = point_set([(0, 0), (1, 1), (2, 3)], 1)
    assert not collinear(ps, 1, 2, 3)
    ps.apply(FlipBit(3, 2, 0))
    assert collinear(ps, 1, 2, 3)


def test_flip_twice_is_identity():
    ps = point_set([(0, 0), (1, 1), (2, 3)], 1)
    before = ps.snapshot()
    ps.apply(FlipBit(2, 1, 5))
    ps.apply(FlipBit(2, 1, 5))
    assert ps.snapshot() == before


def test_disabled_point_still_tracked():
    ps = point_set([(0, 0), (1, 1), (2, 3)], 1)
    ps.apply(Disable(3))
    ps.apply(FlipBit(3, 2, 0))
    assert collinear(ps, 1, 2, 3)
    assert ps.representatives() == [1, 2]


@pytest.mark.parametrize("a,b,c,want", [
    ((0, 0), (1, 1), (2, 2), True),
    ((0, 0), (1, 1), (2, 3), False),
    ((5, 5), (5, 5), (7, 9), True),
    ((3, 1), (3, 4), (3, 9), True),
])
def test_collinear_examples(a, b, c, want):
    assert collinear_points(a, b, c) is want
    assert collinear(point_set([a, b, c], 1), 1, 2, 3) is want


def test_kernel_five_collinear():
    ps = point_set([(i, i) for i in range(5)], 1, n=8)
    assert plc_kernel(ps) == Kernel((), 0)
    assert ps.answer()


def test_kernel_triangle_is_no():
    ps = point_set([(0, 0), (1, 0), (0, 1)], 1, n=8)
    assert plc_kernel(ps) is NO
    assert not ps.answer()


def test_kernel_empty():
    ps = PointSet(8, 2, 2)
    assert plc_kernel(ps) == Kernel((), 2)
    assert ps.answer()


def test_passthrough_threshold():
    assert [passthrough_threshold(n) for n in (1, 2, 3, 4, 5, 8)] == [0, 1, 2, 2, 3, 3]
    ps = PointSet(4, 2, 3)
    assert plc_kernel(ps) is PASSTHROUGH
    ps.apply(DecK())
    assert plc_kernel(ps) is PASSTHROUGH
    ps.apply(DecK())
    assert plc_kernel(ps) is not PASSTHROUGH


def test_decide_examples():
    assert plc_decide(Kernel((), 0))
    assert plc_decide(Kernel(((0, 0), (1, 0), (0, 1), (1, 1)), 2))
    assert not plc_decide(Kernel(((0, 0), (1, 0), (0, 1)), 1))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=3, max_size=3))
def test_collinear_matches_rational(pts):
    assert collinear_points(*pts) == oracle_collinear(*pts)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8),
       st.integers(1, 3))
def test_kernel_soundness(pts, k):
    ps = point_set(pts, 3, n=8)
    while ps.param.k > k:
        ps.apply(DecK())
    assert ps.answer() == oracle_plc(pts, k)
    assert cover_with_lines(pts, k) == oracle_plc(pts, k)


def test_line_identity():
    ps = point_set([(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 3)], 1, n=8)
    for a, b, c, d in combinations(range(1, 7), 4):
        same = all(ps.in_C(*t) for t in combinations((a, b, c, d), 3))
        if ps.in_C(a, b, c) and ps.in_C(a, b, d):
            assert same


def test_random_flips_keep_cache():
    rng = random.Random(6)
    ps = PointSet(6, 2, 2)
    for _ in range(120):
        ps.apply(FlipBit(rng.randint(1, 6), rng.randint(1, 2), rng.randint(0, 7)))
        if rng.random() < 0.3:
            ps.apply(Enable(rng.randint(1, 6)))
        if rng.random() < 0.1:
            ps.apply(IncK())
        ps.check_invariants()
        pts = [ps.point(i) for i in sorted(ps.enabled)]
        assert ps.answer() == oracle_plc(pts, ps.param.k)
