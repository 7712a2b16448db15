"""Point-line cover: cached collinearity under bit flips, kernel, decision."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, log2
from typing import Sequence

from .core import DomainError, FlipBit, InvariantViolation, Maintainer, ParamState

Point = tuple[int, ...]


@dataclass(frozen=True)
class Kernel:
    points: tuple[Point, ...]
    k: int


class _Outcome:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


NO = _Outcome("NO")
PASSTHROUGH = _Outcome("PASSTHROUGH")


def collinear_points(a: Point, b: Point, c: Point) -> bool:
    """Cross-multiplied direction test on integer coordinates."""
    d = len(a)
    for j, l in combinations(range(d), 2):
        if (b[j] - a[j]) * (c[l] - a[l]) != (b[l] - a[l]) * (c[j] - a[j]):
            return False
    return True


def passthrough_threshold(n: int) -> int:
    return ceil(log2(n)) if n > 1 else 0


class PointSet(Maintainer):
    """n points in d dimensions with bit-addressed natural coordinates.

    Points start at the origin and disabled.  ``prod[(x, a, y, b)]`` caches
    ``p_x^a * p_y^b`` for x < y; ``C`` is the set of collinear triples
    ``(x, y, z)``, x < y < z, derived from the cached products.
    """

    problem = "plc"

    def __init__(self, n: int, d: int, kmax: int):
        if n < 1 or d < 2:
            raise DomainError(f"need n >= 1 points and d >= 2 dimensions, got n={n}, d={d}")
        self.n = n
        self.d = d
        self.coords: list[list[int]] = [[0] * d for _ in range(n + 1)]
        self.enabled: set[int] = set()
        self.param = ParamState(kmax)
        self.prod: dict[tuple[int, int, int, int], int] = {}
        for x, y in combinations(range(1, n + 1), 2):
            for a in range(d):
                for b in range(d):
                    self.prod[(x, a, y, b)] = 0
        self.C: set[tuple[int, int, int]] = set(combinations(range(1, n + 1), 3))

    def point(self, i: int) -> Point:
        return tuple(self.coords[i])

    def _check_point(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise DomainError(f"point {i} outside 1..{self.n}")

    def _product(self, x: int, a: int, y: int, b: int) -> int:
        if x < y:
            return self.prod[(x, a, y, b)]
        return self.prod[(y, b, x, a)]

    def collinear(self, i1: int, i2: int, i3: int) -> bool:
        """Test from cached products only.

        For dimensions j < l the condition
        ``(q^j - p^j)(r^l - p^l) = (q^l - p^l)(r^j - p^j)`` expands into
        products of two coordinates of distinct points; the ``p^j p^l`` terms
        cancel.
        """
        p, q, r = i1, i2, i3
        P = self._product
        for j, l in combinations(range(self.d), 2):
            lhs = P(q, j, r, l) - P(q, j, p, l) - P(p, j, r, l)
            rhs = P(q, l, r, j) - P(q, l, p, j) - P(p, l, r, j)
            if lhs != rhs:
                return False
        return True

    def on_FlipBit(self, op) -> None:
        i, dim, bit = op.i, op.dim, op.bit
        self._check_point(i)
        if not 1 <= dim <= self.d:
            raise DomainError(f"dimension {dim} outside 1..{self.d}")
        if bit < 0:
            raise DomainError(f"bit index {bit} is negative")
        a = dim - 1
        self.coords[i][a] ^= 1 << bit
        for y in range(1, self.n + 1):
            if y == i:
                continue
            for b in range(self.d):
                value = self.coords[i][a] * self.coords[y][b]
                if i < y:
                    self.prod[(i, a, y, b)] = value
                else:
                    self.prod[(y, b, i, a)] = value
        for t in combinations(range(1, self.n + 1), 3):
            if i in t:
                if self.collinear(*t):
                    self.C.add(t)
                else:
                    self.C.discard(t)

    def on_Enable(self, op) -> None:
        self._check_point(op.i)
        self.enabled.add(op.i)

    def on_Disable(self, op) -> None:
        self._check_point(op.i)
        self.enabled.discard(op.i)

    def on_IncK(self, op) -> None:
        self.param.inc()

    def on_DecK(self, op) -> None:
        self.param.dec()

    def in_C(self, x: int, y: int, z: int) -> bool:
        return tuple(sorted((x, y, z))) in self.C

    def representatives(self) -> list[int]:
        """Smallest enabled index at every distinct enabled position."""
        seen: dict[Point, int] = {}
        for i in sorted(self.enabled):
            seen.setdefault(self.point(i), i)
        return sorted(seen.values())

    def answer(self) -> bool:
        return plc_decide(plc_kernel(self), self)

    def check_invariants(self) -> None:
        for (x, a, y, b), value in self.prod.items():
            if value != self.coords[x][a] * self.coords[y][b]:
                raise InvariantViolation(f"stale product for points {x},{y} dims {a + 1},{b + 1}")
        for t in combinations(range(1, self.n + 1), 3):
            if (t in self.C) != collinear_points(*(self.point(i) for i in t)):
                raise InvariantViolation(f"collinearity of {t} out of date")

    def snapshot(self):
        return (tuple(map(tuple, self.coords)), frozenset(self.enabled), self.param.k,
                frozenset(self.C))


def plc_flip_bit(state: PointSet, i: int, dim: int, j: int) -> PointSet:
    state.apply(FlipBit(i, dim, j))
    return state


def collinear(state: PointSet, i1: int, i2: int, i3: int) -> bool:
    return state.in_C(i1, i2, i3)


def plc_kernel(state: PointSet):
    """Kernel (points, k'), or ``NO``, or ``PASSTHROUGH`` for large k."""
    k = state.param.k
    if k >= passthrough_threshold(state.n):
        return PASSTHROUGH
    reps = state.representatives()
    lines: dict[tuple[int, int], frozenset[int]] = {}
    covered: set[int] = set()
    for x, y in combinations(reps, 2):
        if any(x in ln and y in ln for ln in lines.values()):
            continue
        members = frozenset([x, y] + [z for z in reps if z != x and z != y and state.in_C(x, y, z)])
        if len(members) >= k + 1:
            lines[(x, y)] = members
            covered |= members
    if len(lines) > k:
        return NO
    rest = [state.point(i) for i in reps if i not in covered]
    if len(rest) > k * k:
        return NO
    return Kernel(tuple(rest), k - len(lines))


class DecideStats:
    def __init__(self):
        self.nodes = 0


def cover_with_lines(points: Sequence[Point], k: int, stats: DecideStats | None = None) -> bool:
    """Can k lines cover ``points``?  Branch on the first uncovered point."""
    stats = stats if stats is not None else DecideStats()
    stack = [(tuple(dict.fromkeys(points)), k)]
    while stack:
        rest, budget = stack.pop()
        stats.nodes += 1
        if not rest:
            return True
        if budget == 0:
            continue
        p = rest[0]
        stack.append((rest[1:], budget - 1))
        for q in rest[1:]:
            left = tuple(r for r in rest[1:] if r != q and not collinear_points(p, q, r))
            stack.append((left, budget - 1))
    return False


def plc_decide(kernel, state: PointSet | None = None) -> bool:
    if kernel is NO:
        return False
    if kernel is PASSTHROUGH:
        if state is None:
            raise ValueError("PASSTHROUGH needs the original point set")
        pts = [state.point(i) for i in state.representatives()]
        return cover_with_lines(pts, state.param.k)
    return cover_with_lines(kernel.points, kernel.k)
