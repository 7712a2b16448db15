"""Feedback vertex set by degree reductions and short-cycle branching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .core import DomainError, DynGraph, GraphMaintainer, InvariantViolation


class MultiGraph:
    """Undirected multigraph with multiplicities capped at two.

    ``adj[v][w]`` is the number of parallel (v, w) edges (1 or 2) and
    ``loops`` the set of vertices carrying a self-loop.  ``via`` records, for
    each parallel copy of an edge, the original vertices contracted into it.
    """

    def __init__(self):
        self.adj: dict[int, dict[int, int]] = {}
        self.loops: set[int] = set()
        self.via: dict[tuple[int, int], list[frozenset[int]]] = {}

    @classmethod
    def from_graph(cls, graph: DynGraph, removed: Iterable[int] = ()) -> "MultiGraph":
        gone = set(removed)
        mg = cls()
        for v in graph.vertices():
            if v not in gone:
                mg.adj[v] = {}
        for u, v in graph.edges():
            if u not in gone and v not in gone:
                mg.add_edge(u, v, frozenset())
        return mg

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u in self.adj for v in self.adj[u] if u < v}

    @property
    def parallel(self) -> set[tuple[int, int]]:
        """The relation of duplicate edges: pairs of multiplicity two."""
        return {(u, v) for u in self.adj for v, m in self.adj[u].items() if u < v and m == 2}

    def degree(self, v: int) -> int:
        return sum(self.adj[v].values()) + (2 if v in self.loops else 0)

    def add_edge(self, u: int, v: int, inner: frozenset[int]) -> None:
        if u == v:
            self.loops.add(u)
            return
        key = (min(u, v), max(u, v))
        m = self.adj[u].get(v, 0)
        if m >= 2:
            return
        self.adj[u][v] = self.adj[v][u] = m + 1
        self.via.setdefault(key, []).append(inner)

    def remove_vertex(self, v: int) -> None:
        for w in self.adj.pop(v):
            del self.adj[w][v]
            self.via.pop((min(v, w), max(v, w)), None)
        self.loops.discard(v)

    def is_edgeless(self) -> bool:
        return not self.loops and not any(self.adj.values())

    def copy(self) -> "MultiGraph":
        mg = MultiGraph()
        mg.adj = {v: dict(nb) for v, nb in self.adj.items()}
        mg.loops = set(self.loops)
        mg.via = {k: list(v) for k, v in self.via.items()}
        return mg


def fvs_reduce(mg: MultiGraph) -> MultiGraph:
    """Remove attached trees and contract degree-2 paths, to a fixed point.

    Vertices of degree at most one are deleted repeatedly, which strips every
    tree hanging off the graph.  A loop-free vertex of degree two is bypassed
    by an edge between its neighbours; a vertex whose two edges go to the same
    neighbour becomes a loop there.  Larger vertex ids are contracted first,
    so a component that is a bare cycle ends as a loop at its smallest vertex.
    """
    mg = mg.copy()
    changed = True
    while changed:
        changed = False
        for v in sorted(mg.adj, reverse=True):
            if v not in mg.adj or v in mg.loops:
                continue
            deg = mg.degree(v)
            if deg <= 1:
                mg.remove_vertex(v)
                changed = True
            elif deg == 2:
                ends = [w for w, m in mg.adj[v].items() for _ in range(m)]
                a, b = ends
                inner = frozenset({v})
                for w in set(ends):
                    for part in mg.via.get((min(v, w), max(v, w)), []):
                        inner |= part
                mg.remove_vertex(v)
                mg.add_edge(a, b, inner)
                changed = True
    for v in [v for v in mg.adj if not mg.adj[v] and v not in mg.loops]:
        del mg.adj[v]
    return mg


@dataclass
class BfsCycleSearch:
    """Breadth-first trees of bounded depth, one per root.

    ``B`` holds tree edges ``(root, parent, child)``; ``I`` holds triples
    ``(root, v, w)`` meaning v lies on the tree path from the root to w.
    """

    depth: int
    B: set[tuple[int, int, int]] = field(default_factory=set)
    I: set[tuple[int, int, int]] = field(default_factory=set)

    def path(self, root: int, w: int) -> list[int]:
        """Tree path root..w reconstructed from I."""
        on = [v for (r, v, x) in self.I if r == root and x == w]
        level = {v: sum(1 for (r, a, x) in self.I if r == root and x == v) for v in on}
        return sorted(on, key=level.__getitem__)


def fvs_find_short_cycle(mg: MultiGraph, k0: int,
                         search: BfsCycleSearch | None = None) -> list[int] | None:
    """A shortest cycle of length at most ``2 * k0``, or None.

    Loops and parallel pairs are cycles of length one and two.  Otherwise a
    BFS tree of depth k0 is grown from every root; an edge closing onto the
    tree (a second parent or an edge between two tree vertices) closes a
    cycle through the lowest common ancestor, found through ``I``.
    """
    if mg.loops:
        return [min(mg.loops)]
    par = sorted(mg.parallel)
    if par:
        return list(par[0])
    if k0 < 1:
        return None
    search = search if search is not None else BfsCycleSearch(k0)
    best: list[int] | None = None
    for root in sorted(mg.adj):
        parent = {root: None}
        depth = {root: 0}
        search.I.add((root, root, root))
        layer = [root]
        for d in range(k0):
            nxt = []
            for x in layer:
                for y in sorted(mg.adj[x]):
                    if y == parent[x]:
                        continue
                    if y not in parent:
                        parent[y] = x
                        depth[y] = d + 1
                        search.B.add((root, x, y))
                        for (r, v, w) in list(search.I):
                            if r == root and w == x:
                                search.I.add((root, v, y))
                        search.I.add((root, y, y))
                        nxt.append(y)
                        continue
                    cyc = _close_cycle(search, root, x, y)
                    if len(cyc) <= 2 * k0 and (best is None or len(cyc) < len(best)):
                        best = cyc
            layer = nxt
        if best is not None and len(best) == 3:
            break
    return best


def _close_cycle(search: BfsCycleSearch, root: int, x: int, y: int) -> list[int]:
    px = search.path(root, x)
    py = search.path(root, y)
    common = 0
    while common < min(len(px), len(py)) and px[common] == py[common]:
        common += 1
    lca = px[common - 1]
    return [lca] + px[common:] + list(reversed(py[common:]))


def is_forest(graph: DynGraph, removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    seen: set[int] = set()
    for s in graph.vertices():
        if s in gone or s in seen:
            continue
        seen.add(s)
        queue = deque([(s, 0)])
        while queue:
            x, par = queue.popleft()
            for y in graph.adj[x]:
                if y in gone or y == par:
                    continue
                if y in seen:
                    return False
                seen.add(y)
                queue.append((y, x))
    return True


class FvsResult:
    def __init__(self, found: bool, witness: frozenset[int] | None, nodes: int):
        self.found = found
        self.witness = witness
        self.nodes = nodes

    def __bool__(self) -> bool:
        return self.found

    def __repr__(self) -> str:
        return f"FvsResult(found={self.found}, witness={self.witness}, nodes={self.nodes})"


def fvs_solve(graph: DynGraph, k: int) -> FvsResult:
    """Decide whether at most k vertices hit every cycle.

    Search nodes are candidate sets F.  At each node the graph minus F is
    reduced; an empty reduction means F is a solution, otherwise the branch
    picks every vertex of a cycle of length at most ``2 * (k - |F|)``.
    """
    nodes = 0
    stack: list[frozenset[int]] = [frozenset()]
    while stack:
        chosen = stack.pop()
        nodes += 1
        reduced = fvs_reduce(MultiGraph.from_graph(graph, chosen))
        if reduced.is_edgeless():
            return FvsResult(True, chosen, nodes)
        budget = k - len(chosen)
        if budget <= 0:
            continue
        cycle = fvs_find_short_cycle(reduced, budget)
        if cycle is None:
            continue
        for v in reversed(cycle):
            stack.append(chosen | {v})
    return FvsResult(False, None, nodes)


class SplitGraph:
    """Directed graph with every vertex v split into ``(v, 'in') -> (v, 'out')``.

    Removing a vertex deletes only its inner edge, which cuts every path
    through it.
    """

    def __init__(self, vertices: Iterable[int]):
        self.succ: dict[tuple[int, str], set[tuple[int, str]]] = {}
        self.removed: set[int] = set()
        for v in vertices:
            self.succ[(v, "in")] = {(v, "out")}
            self.succ[(v, "out")] = set()

    def _check(self, *vs: int) -> None:
        for v in vs:
            if (v, "in") not in self.succ:
                raise DomainError(f"vertex {v} not in split graph")

    def insert_arc(self, u: int, v: int) -> None:
        self._check(u, v)
        self.succ[(u, "out")].add((v, "in"))

    def delete_arc(self, u: int, v: int) -> None:
        self._check(u, v)
        self.succ[(u, "out")].discard((v, "in"))

    def remove_vertex(self, v: int) -> None:
        self._check(v)
        self.succ[(v, "in")].discard((v, "out"))
        self.removed.add(v)

    def reach(self, a: int, b: int) -> bool:
        """Is ``b_out`` reachable from ``a_in``?"""
        self._check(a, b)
        if a in self.removed or b in self.removed:
            raise DomainError(f"vertex {a if a in self.removed else b} was removed")
        start, goal = (a, "in"), (b, "out")
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if x == goal:
                return True
            for y in self.succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return False

    def copy(self) -> "SplitGraph":
        other = SplitGraph(())
        other.succ = {x: set(ys) for x, ys in self.succ.items()}
        other.removed = set(self.removed)
        return other


def reach_split(arcs: Iterable[tuple[int, int]], vertices: Iterable[int],
                removed: Iterable[int], a: int, b: int) -> bool:
    sg = SplitGraph(vertices)
    for u, v in arcs:
        sg.insert_arc(u, v)
    for v in removed:
        sg.remove_vertex(v)
    return sg.reach(a, b)


def acyclic_after_removal(sg: SplitGraph, graph: DynGraph, removed: Iterable[int]) -> bool:
    """Cycle test by reachability: an edge (u, v) lies on a cycle iff v still
    reaches u once both arcs of the edge are taken out."""
    work = sg.copy()
    gone = set(removed)
    for v in gone:
        work.remove_vertex(v)
    for u, v in graph.edges():
        if u in gone or v in gone:
            continue
        work.delete_arc(u, v)
        work.delete_arc(v, u)
        closes = work.reach(v, u)
        work.insert_arc(u, v)
        work.insert_arc(v, u)
        if closes:
            return False
    return True


class FVSState(GraphMaintainer):
    """Re-solves with parameter-bounded search after every change."""

    problem = "fvs"

    def __init__(self, n: int, kmax: int):
        super().__init__(n, kmax)
        self.split = SplitGraph(self.graph.vertices())
        self.last: FvsResult | None = None

    def edge_inserted(self, u, v):
        self.split.insert_arc(u, v)
        self.split.insert_arc(v, u)
        self.last = None

    def edge_deleted(self, u, v):
        self.split.delete_arc(u, v)
        self.split.delete_arc(v, u)
        self.last = None

    def on_IncK(self, op):
        super().on_IncK(op)
        self.last = None

    def on_DecK(self, op):
        super().on_DecK(op)
        self.last = None

    def solve(self) -> FvsResult:
        if self.last is None:
            res = fvs_solve(self.graph, self.param.k)
            if res.found and not acyclic_after_removal(self.split, self.graph, res.witness):
                raise InvariantViolation(f"witness {sorted(res.witness)} leaves a cycle")
            self.last = res
        return self.last

    def answer(self) -> bool:
        return self.solve().found

    def check_invariants(self) -> None:
        for u in self.graph.vertices():
            outs = {v for (v, side) in self.split.succ[(u, "out")]}
            if outs != self.graph.adj[u]:
                raise InvariantViolation(f"split graph out of sync at vertex {u}")

    def snapshot(self):
        return (self.graph.edges(), self.param.k)


def fvs_maintain(state: FVSState, op) -> FVSState:
    state.apply(op)
    return state
