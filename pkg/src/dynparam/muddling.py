"""Round-robin rebuild scheduling and the compression-based vertex cover.

A short-term maintainer only has to stay correct for a bounded number of
changes after it was initialised from an arbitrary graph.  The scheduler
starts a fresh logical thread at every change; each thread spends its first
steps rebuilding (two rebuild iterations per change), then replays the
changes it buffered meanwhile (two per change) and finally serves answers for
a bounded window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Generator, Iterator

from .core import (
    ChangeOp,
    DecK,
    DelE,
    DynGraph,
    GraphMaintainer,
    IncK,
    InsE,
    InvariantViolation,
    ParamState,
    Query,
)
from .vertex_cover import SearchTree, TreeNode, is_cover, smallest_uncovered, vc_paraT_solve

OVERFLOW = None


@dataclass
class CompressionState:
    """Minimum vertex cover of size at most ``2 * bound``, or overflow."""

    graph: DynGraph
    cover: frozenset[int] | None
    bound: int
    param: ParamState

    @property
    def overflowed(self) -> bool:
        return self.cover is OVERFLOW

    def answer(self) -> bool:
        return not self.overflowed and len(self.cover) <= self.param.k


def neighbourhood(graph: DynGraph, vertices) -> set[int]:
    out: set[int] = set()
    for v in vertices:
        out |= graph.adj[v]
    return out


def compress(graph: DynGraph, cover: frozenset[int]) -> frozenset[int]:
    """One compression round: a cover one smaller than ``cover`` or ``cover``.

    For every split of ``cover`` into kept vertices Z and dropped vertices,
    the only candidate is Z plus all neighbours of the dropped vertices.
    """
    target = len(cover) - 1
    best: tuple[int, ...] | None = None
    members = sorted(cover)
    for r in range(len(members) + 1):
        for kept in combinations(members, r):
            z = set(kept)
            cand = z | neighbourhood(graph, cover - z)
            if len(cand) != target or cand & cover != z:
                continue
            if not is_cover(graph, cand):
                continue
            key = tuple(sorted(cand))
            if best is None or key < best:
                best = key
    return cover if best is None else frozenset(best)


def compress_step(state: CompressionState, op: ChangeOp) -> CompressionState:
    """Apply one change to the graph and restore a minimum cover."""
    if isinstance(op, InsE):
        u, v = state.graph.check_pair(op.u, op.v)
        if not state.graph.add_edge(u, v) or state.overflowed:
            return state
        trivial = state.cover | {u}
    elif isinstance(op, DelE):
        u, v = state.graph.check_pair(op.u, op.v)
        if not state.graph.remove_edge(u, v) or state.overflowed:
            return state
        trivial = state.cover
    else:
        if isinstance(op, IncK):
            state.param.inc()
        elif isinstance(op, DecK):
            state.param.dec()
        return state
    cover = compress(state.graph, trivial)
    state.cover = OVERFLOW if len(cover) > 2 * state.bound else cover
    return state


def rebuild_iterations(k: int) -> int:
    """Iterations ``vc_rebuild_2k`` needs: four levels first, then two each."""
    return max(1, k - 1)


def vc_rebuild_2k(graph: DynGraph, k: int) -> Generator[None, None, frozenset[int] | None]:
    """Build the depth-2k search tree level batch by level batch.

    A generator: every ``next`` performs one iteration (four levels first,
    two levels afterwards).  The final iteration returns, through
    ``StopIteration.value``, a minimum cover of size at most 2k or ``None``
    for overflow.
    """
    depth = 2 * k
    tree = SearchTree(depth)
    frontier: list[TreeNode] = [tree.root]
    grown = 0
    while True:
        grown = min(depth, grown + (4 if grown == 0 else 2))
        nxt: list[TreeNode] = []
        while frontier:
            x = frontier.pop()
            edge = smallest_uncovered(graph, x.cand)
            if edge is None or x.depth >= depth:
                continue
            tree.branch(x, edge)
            if x.depth + 1 < grown:
                frontier.extend((x.left, x.right))
            else:
                nxt.extend((x.left, x.right))
        if grown >= depth or not nxt:
            return tree.best_cover(graph)
        frontier = nxt
        yield


def run_rebuild(graph: DynGraph, k: int) -> tuple[frozenset[int] | None, int]:
    gen = vc_rebuild_2k(graph, k)
    count = 0
    while True:
        count += 1
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value, count


@dataclass
class Thread:
    """A logical thread: private snapshot, buffered changes, phase counter."""

    start: int
    budget: int
    window_end: int
    work: Iterator
    phase: str = "rebuilding"
    state: object = None
    buffered: list[ChangeOp] = field(default_factory=list)
    iterations: int = 0

    def work_unit(self, step) -> bool:
        """Perform one unit of work; False when there is nothing to do."""
        if self.phase == "rebuilding":
            self.iterations += 1
            try:
                next(self.work)
            except StopIteration as stop:
                self.state = stop.value
                self.phase = "replaying"
            return True
        if self.buffered:
            self.state = step(self.state, self.buffered.pop(0))
            return True
        return False


class MuddlingScheduler:
    """Round-robin composition of a rebuilder and a short-term maintainer.

    ``rebuild(graph, param)`` returns a generator performing one rebuild
    iteration per ``next`` and returning the initial short-term state.
    ``step(state, op)`` applies one change to such a state and ``query(state)``
    answers from it.  ``budget(k)`` is the number of rebuild iterations for
    parameter k; a thread started at time t with parameter k serves from
    ``t + budget(k)`` up to ``t + budget(k + 1)``.  Until the first thread
    serves, answers come from ``bootstrap(graph, param)``.
    """

    def __init__(self, graph: DynGraph, param: ParamState,
                 rebuild, step, query, budget: Callable[[int], int], bootstrap):
        self.graph = graph
        self.param = param
        self.rebuild = rebuild
        self.step = step
        self.query = query
        self.budget = budget
        self.bootstrap = bootstrap
        self.clock = 0
        self.threads: list[Thread] = []
        self.max_live = 0
        self._start_thread()
        self._retire()

    def _start_thread(self) -> None:
        k = self.param.k
        work = self.rebuild(self.graph.copy(), ParamState(self.param.kmax, k))
        th = Thread(self.clock, self.budget(k), self.clock + self.budget(k + 1), work)
        self.threads.append(th)
        if th.budget == 0:
            while th.phase == "rebuilding":
                th.work_unit(self.step)
            if th.iterations > 1:
                raise InvariantViolation("rebuild needed work under a zero budget")
        self._promote(th)

    def _promote(self, th: Thread) -> None:
        if th.phase == "replaying" and not th.buffered and self.clock >= th.start + th.budget:
            th.phase = "serving"

    def apply(self, op: ChangeOp) -> None:
        """Advance the clock: every thread buffers ``op`` and works twice."""
        self.clock += 1
        for th in self.threads:
            th.buffered.append(op)
            for _ in range(2):
                if not th.work_unit(self.step):
                    break
            if th.iterations > max(th.budget, 1):
                raise InvariantViolation(
                    f"thread {th.start} exceeded its rebuild budget {th.budget}")
            self._promote(th)
        self._start_thread()
        self._retire()

    def _retire(self) -> None:
        alive = [th for th in self.threads if self.clock <= th.window_end]
        serving = [th for th in alive if th.phase == "serving"]
        answers = {bool(self.query(th.state)) for th in serving}
        if len(answers) > 1:
            raise InvariantViolation(f"serving threads disagree at time {self.clock}")
        if serving:
            newest = serving[-1]
            alive = [th for th in alive if th.phase != "serving" or th is newest]
        self.threads = alive
        self.max_live = max(self.max_live, len(self.threads))

    def serving(self) -> Thread | None:
        for th in self.threads:
            if th.phase == "serving":
                return th
        return None

    def answer(self) -> bool:
        th = self.serving()
        if th is None:
            if self.clock < self.budget(self.param.kmax):
                return bool(self.bootstrap(self.graph, self.param))
            raise InvariantViolation(f"no serving thread at time {self.clock}")
        return bool(self.query(th.state))


def _compression_rebuild(graph: DynGraph, param: ParamState):
    bound = param.k
    cover = yield from vc_rebuild_2k(graph, bound)
    return CompressionState(graph, cover, bound, param)


def _compression_query(state: CompressionState) -> bool:
    return state.answer()


def _bootstrap(graph: DynGraph, param: ParamState) -> bool:
    return vc_paraT_solve(graph, param.k).found


class CompressionVCMaintainer(GraphMaintainer):
    """Vertex cover maintained by iterative compression under muddling."""

    problem = "vcover-compress"

    def __init__(self, n: int, kmax: int, budget: Callable[[int], int] = rebuild_iterations):
        super().__init__(n, kmax)
        self.sched = MuddlingScheduler(self.graph, self.param, _compression_rebuild,
                                       compress_step, _compression_query, budget, _bootstrap)

    def apply(self, op: ChangeOp) -> None:
        if isinstance(op, Query):
            return
        super().apply(op)
        self.sched.apply(op)

    def answer(self) -> bool:
        return self.sched.answer()

    def check_invariants(self) -> None:
        limit = self.sched.budget(self.param.kmax) + 1
        if len(self.sched.threads) > limit:
            raise InvariantViolation(
                f"{len(self.sched.threads)} live threads, limit {limit}")
        for th in self.sched.threads:
            if th.phase != "serving":
                continue
            st = th.state
            if st.graph != self.graph:
                raise InvariantViolation("serving thread lost track of the graph")
            if not st.overflowed and not is_cover(st.graph, st.cover):
                raise InvariantViolation(f"thread cover {sorted(st.cover)} is not a cover")

    def current_cover(self) -> frozenset[int] | None:
        th = self.sched.serving()
        return None if th is None else th.state.cover

    def snapshot(self):
        return (self.graph.edges(), self.param.k, self.sched.clock,
                [(th.start, th.phase, th.state.cover if th.state else None)
                 for th in self.sched.threads])
