"""Knapsack under item replacement via the interval profit table."""

from __future__ import annotations

from typing import Optional

from .core import DomainError, InvariantViolation, Maintainer, ParameterBoundError, SetItem

BOTTOM = None
Row = list[Optional[int]]


def _bottom_row(bmax: int) -> Row:
    row: Row = [BOTTOM] * (bmax + 1)
    row[0] = 0
    return row


def maxplus(left: Row, right: Row, shift: int = 0, bonus: int = 0) -> Row:
    """``out[b] = max over b1 + b2 + shift = b of left[b1] + right[b2] + bonus``."""
    bmax = len(left) - 1
    out: Row = [BOTTOM] * (bmax + 1)
    for b1, x in enumerate(left):
        if x is BOTTOM:
            continue
        for b2 in range(bmax + 1 - b1 - shift):
            y = right[b2]
            if y is BOTTOM:
                continue
            b = b1 + b2 + shift
            val = x + y + bonus
            if out[b] is BOTTOM or val > out[b]:
                out[b] = val
    return out


def merge(a: Row, b: Row) -> Row:
    return [y if x is BOTTOM else x if y is BOTTOM else max(x, y) for x, y in zip(a, b)]


class KnapsackState(Maintainer):
    """Items 1..n, capacity B, threshold T and the table ``A[(i, j)][b]``.

    ``A[(i, j)][b]`` is the best profit of a subset of items i..j with total
    weight exactly b, or BOTTOM; intervals range over 1 <= i <= j+1 <= n+1.
    Items start as (0, 0) and B = T = 0.
    """

    problem = "knapsack"

    def __init__(self, n: int, bmax: int):
        if n < 1 or bmax < 0:
            raise DomainError(f"need n >= 1 items and bmax >= 0, got n={n}, bmax={bmax}")
        self.n = n
        self.bmax = bmax
        self.profit = [0] * (n + 1)
        self.weight = [0] * (n + 1)
        self.B = 0
        self.T = 0
        self.A: dict[tuple[int, int], Row] = build_table(self.profit, self.weight, n, bmax)

    def on_SetItem(self, op: SetItem) -> None:
        if not 1 <= op.i <= self.n:
            raise DomainError(f"item {op.i} outside 1..{self.n}")
        if op.profit < 0 or op.weight < 0:
            raise DomainError("profits and weights must be non-negative")
        ks_set_item(self, op.i, op.profit, op.weight)

    def on_SetB(self, op) -> None:
        if op.value < 0:
            raise DomainError("B must be non-negative")
        self.B = op.value

    def on_SetT(self, op) -> None:
        if op.value < 0:
            raise DomainError("T must be non-negative")
        self.T = op.value

    def answer(self) -> bool:
        return ks_query(self)

    def check_invariants(self) -> None:
        if self.A != build_table(self.profit, self.weight, self.n, self.bmax):
            raise InvariantViolation("interval table differs from a fresh build")

    def snapshot(self):
        return (tuple(self.profit), tuple(self.weight), self.B, self.T,
                tuple(sorted((key, tuple(row)) for key, row in self.A.items())))


def build_table(profit, weight, n: int, bmax: int) -> dict[tuple[int, int], Row]:
    """Fill every interval by extending i..j-1 with item j."""
    A: dict[tuple[int, int], Row] = {}
    for i in range(1, n + 2):
        A[(i, i - 1)] = _bottom_row(bmax)
        for j in range(i, n + 1):
            prev = A[(i, j - 1)]
            A[(i, j)] = merge(prev, maxplus(prev, _bottom_row(bmax), weight[j], profit[j]))
    return A


def ks_set_item(state: KnapsackState, l: int, p: int, w: int) -> KnapsackState:
    """Replace item l; only intervals containing l change.

    Each such entry splits into the items left of l and right of l, neither
    of which contains l, so every update reads only unchanged entries.
    """
    state.profit[l] = p
    state.weight[l] = w
    for i in range(1, l + 1):
        for j in range(l, state.n + 1):
            left, right = state.A[(i, l - 1)], state.A[(l + 1, j)]
            without = maxplus(left, right)
            with_l = maxplus(left, right, w, p)
            state.A[(i, j)] = merge(without, with_l)
    return state


def ks_query(state: KnapsackState) -> bool:
    if state.B > state.bmax:
        raise ParameterBoundError(f"B={state.B} exceeds bmax={state.bmax}")
    row = state.A[(1, state.n)]
    return any(x is not BOTTOM and x >= state.T for x in row[: state.B + 1])


def ks_set_bounds(state: KnapsackState, which: str, value: int) -> KnapsackState:
    if which not in ("B", "T"):
        raise DomainError(f"unknown bound {which!r}")
    if value < 0:
        raise DomainError(f"{which} must be non-negative")
    setattr(state, which, value)
    return state
