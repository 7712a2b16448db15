"""Shared instance model, change operations and the maintainer contract."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class DynParamError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DynParamError, ValueError):
    """A change or query referenced an index outside the instance domain."""


class ParameterBoundError(DynParamError):
    """The parameter left the range the maintainer was initialised for."""


class InvariantViolation(DynParamError):
    """An auxiliary structure failed its self-check."""


class DynGraph:
    """Undirected simple graph over the fixed vertex domain ``1..n``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise DomainError(f"domain size must be >= 1, got {n}")
        self.n = n
        self.adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for u, v in edges:
            self.add_edge(u, v)

    def check_pair(self, u: int, v: int) -> tuple[int, int]:
        for x in (u, v):
            if not 1 <= x <= self.n:
                raise DomainError(f"vertex {x} outside domain 1..{self.n}")
        if u == v:
            raise DomainError(f"self-loop ({u},{v}) is not allowed")
        return (u, v) if u < v else (v, u)

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge (u, v); return False if it was already present."""
        u, v = self.check_pair(u, v)
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        return True

    def remove_edge(self, u: int, v: int) -> bool:
        u, v = self.check_pair(u, v)
        if v not in self.adj[u]:
            return False
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted pairs, in lexicographic order."""
        return sorted((u, v) for u in self.adj for v in self.adj[u] if u < v)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbours(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def copy(self) -> "DynGraph":
        g = DynGraph.__new__(DynGraph)
        g.n = self.n
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        return g

    def without(self, removed: Iterable[int]) -> "DynGraph":
        """Copy with every edge at a removed vertex deleted."""
        gone = set(removed)
        g = self.copy()
        for v in gone:
            for w in list(g.adj[v]):
                g.adj[w].discard(v)
            g.adj[v].clear()
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DynGraph) and self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"DynGraph(n={self.n}, edges={self.edges()})"


class ParamState:
    """Explicit parameter k, clamped to ``1..kmax``."""

    def __init__(self, kmax: int, k: int | None = None):
        if kmax < 1:
            raise DomainError(f"kmax must be >= 1, got {kmax}")
        self.kmax = kmax
        self.k = kmax if k is None else k
        if not 1 <= self.k <= kmax:
            raise ParameterBoundError(f"k={self.k} outside 1..{kmax}")

    def inc(self) -> bool:
        if self.k >= self.kmax:
            return False
        self.k += 1
        return True

    def dec(self) -> bool:
        if self.k <= 1:
            return False
        self.k -= 1
        return True

    def __repr__(self) -> str:
        return f"ParamState(k={self.k}, kmax={self.kmax})"


# Change operations. Each variant is a small frozen record; ``ChangeOp`` is
# their union.

@dataclass(frozen=True)
class InsE:
    u: int
    v: int


@dataclass(frozen=True)
class DelE:
    u: int
    v: int


@dataclass(frozen=True)
class IncK:
    pass


@dataclass(frozen=True)
class DecK:
    pass


@dataclass(frozen=True)
class SetItem:
    i: int
    profit: int
    weight: int


@dataclass(frozen=True)
class SetB:
    value: int


@dataclass(frozen=True)
class SetT:
    value: int


@dataclass(frozen=True)
class FlipBit:
    i: int
    dim: int
    bit: int


@dataclass(frozen=True)
class Enable:
    i: int


@dataclass(frozen=True)
class Disable:
    i: int


@dataclass(frozen=True)
class SetString:
    i: int
    text: str


@dataclass(frozen=True)
class Query:
    pass


ChangeOp = Union[InsE, DelE, IncK, DecK, SetItem, SetB, SetT, FlipBit, Enable,
                 Disable, SetString, Query]


def format_op(op: ChangeOp) -> str:
    """Render an operation as one line of the change-script grammar."""
    match op:
        case InsE(u, v):
            return f"ins {u} {v}"
        case DelE(u, v):
            return f"del {u} {v}"
        case IncK():
            return "k+"
        case DecK():
            return "k-"
        case SetItem(i, p, w):
            return f"setitem {i} {p} {w}"
        case SetB(value):
            return f"setB {value}"
        case SetT(value):
            return f"setT {value}"
        case FlipBit(i, dim, bit):
            return f"flip {i} {dim} {bit}"
        case Enable(i):
            return f"enable {i}"
        case Disable(i):
            return f"disable {i}"
        case SetString(i, text):
            return f"str {i} {text}"
        case Query():
            return "query"
    raise TypeError(f"not a change operation: {op!r}")


def op_kind(op: ChangeOp) -> str:
    return format_op(op).split()[0]


class Maintainer:
    """Stateful object that answers a fixed query after every change.

    Subclasses implement the handlers they support; ``apply`` rejects the
    rest. A handler must validate indices before mutating anything so that a
    rejected change leaves the state untouched.
    """

    problem = "abstract"

    def apply(self, op: ChangeOp) -> None:
        handler = getattr(self, "on_" + type(op).__name__, None)
        if handler is None:
            raise DomainError(f"{self.problem} does not support {format_op(op)!r}")
        handler(op)

    def apply_all(self, ops: Iterable[ChangeOp]) -> Iterator[bool]:
        """Apply ops in order, yielding an answer for every Query."""
        for op in ops:
            if isinstance(op, Query):
                yield self.answer()
            else:
                self.apply(op)

    def on_Query(self, op: Query) -> None:
        pass

    def answer(self) -> bool:
        raise NotImplementedError

    def check_invariants(self) -> None:
        """Raise InvariantViolation if the auxiliary state is inconsistent."""

    def snapshot(self):
        """A comparable value describing the full state (input + auxiliary)."""
        raise NotImplementedError


class GraphMaintainer(Maintainer):
    """Common edge/parameter handling for graph problems with explicit k."""

    def __init__(self, n: int, kmax: int):
        self.graph = DynGraph(n)
        self.param = ParamState(kmax)

    def on_InsE(self, op: InsE) -> None:
        u, v = self.graph.check_pair(op.u, op.v)
        if self.graph.has_edge(u, v):
            return
        self.graph.add_edge(u, v)
        self.edge_inserted(u, v)

    def on_DelE(self, op: DelE) -> None:
        u, v = self.graph.check_pair(op.u, op.v)
        if not self.graph.has_edge(u, v):
            return
        self.graph.remove_edge(u, v)
        self.edge_deleted(u, v)

    def on_IncK(self, op: IncK) -> None:
        self.param.inc()

    def on_DecK(self, op: DecK) -> None:
        self.param.dec()

    def edge_inserted(self, u: int, v: int) -> None:
        pass

    def edge_deleted(self, u: int, v: int) -> None:
        pass
