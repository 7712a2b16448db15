"""Vertex cover through a maintained bounded-depth search tree."""

from __future__ import annotations

from typing import Iterator

from .core import DynGraph, GraphMaintainer, InvariantViolation


class TreeNode:
    __slots__ = ("depth", "added", "cand", "branch", "left", "right")

    def __init__(self, depth: int, added: int | None, cand: frozenset[int]):
        self.depth = depth
        self.added = added
        self.cand = cand
        self.branch: tuple[int, int] | None = None
        self.left: TreeNode | None = None
        self.right: TreeNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.branch is None

    def walk(self) -> Iterator["TreeNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if node.branch is not None:
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> Iterator["TreeNode"]:
        return (x for x in self.walk() if x.is_leaf)


def uncovered_edges(graph: DynGraph, cand: frozenset[int]) -> Iterator[tuple[int, int]]:
    for u in sorted(graph.adj):
        if u in cand:
            continue
        for v in sorted(graph.adj[u]):
            if u < v and v not in cand:
                yield (u, v)


def smallest_uncovered(graph: DynGraph, cand: frozenset[int]) -> tuple[int, int] | None:
    return next(uncovered_edges(graph, cand), None)


def is_cover(graph: DynGraph, cand) -> bool:
    return smallest_uncovered(graph, frozenset(cand)) is None


class SearchTree:
    """Prefix-closed binary search tree of depth at most ``kmax``.

    An inner node branches on an edge (u, v), u < v, that its candidate set
    leaves uncovered; the left child adds u and the right child adds v.  A
    node is a leaf exactly when its candidate set covers the graph or it sits
    at depth ``kmax``.
    """

    def __init__(self, kmax: int):
        self.kmax = kmax
        self.root = TreeNode(0, None, frozenset())

    def nodes(self) -> Iterator[TreeNode]:
        return self.root.walk()

    def size(self) -> int:
        return sum(1 for _ in self.root.walk())

    def branch(self, node: TreeNode, edge: tuple[int, int]) -> None:
        u, v = edge
        node.branch = edge
        node.left = TreeNode(node.depth + 1, u, node.cand | {u})
        node.right = TreeNode(node.depth + 1, v, node.cand | {v})

    def expand(self, graph: DynGraph, node: TreeNode) -> None:
        """Grow a leaf until every leaf below it is a cover or at depth kmax.

        Branching always uses the lexicographically smallest uncovered edge.
        For a leaf whose uncovered edges all share one endpoint this yields a
        path where one child of every node is a covering leaf.
        """
        stack = [node]
        while stack:
            x = stack.pop()
            if x.depth >= self.kmax:
                continue
            edge = smallest_uncovered(graph, x.cand)
            if edge is None:
                continue
            self.branch(x, edge)
            stack.append(x.right)
            stack.append(x.left)

    def insert_edge(self, graph: DynGraph, u: int, v: int) -> None:
        """``graph`` already contains (u, v)."""
        targets = [x for x in self.root.leaves()
                   if x.depth < self.kmax and u not in x.cand and v not in x.cand]
        for x in targets:
            # x covered the old graph, so (u, v) is its only uncovered edge
            self.branch(x, (u, v))

    def delete_edge(self, graph: DynGraph, u: int, v: int) -> None:
        """``graph`` no longer contains (u, v); u < v."""
        # a node branching on (u, v) contains neither endpoint while all its
        # descendants contain one, so these nodes are pairwise unrelated
        hits = [x for x in self.root.walk() if x.branch == (u, v)]
        hits.sort(key=lambda x: x.depth)
        for x in hits:
            y = x.left
            x.branch, x.left, x.right = y.branch, y.left, y.right
            if x.branch is not None:
                for z in x.left.walk():
                    z.depth -= 1
                    z.cand = z.cand - {u}
                for z in x.right.walk():
                    z.depth -= 1
                    z.cand = z.cand - {u}
            defects = [z for z in x.leaves()
                       if z.depth < self.kmax and not is_cover(graph, z.cand)]
            for z in defects:
                self.expand(graph, z)

    def query(self, graph: DynGraph, k: int) -> bool:
        return any(x.depth <= k and is_cover(graph, x.cand) for x in self.root.leaves())

    def best_cover(self, graph: DynGraph) -> frozenset[int] | None:
        covers = [x.cand for x in self.root.leaves() if is_cover(graph, x.cand)]
        if not covers:
            return None
        return min(covers, key=lambda c: (len(c), sorted(c)))

    def audit(self, graph: DynGraph) -> None:
        """Check prefix closure, branch edges, leaf condition and sizes."""
        for x in self.nodes():
            if len(x.cand) != x.depth:
                raise InvariantViolation(f"candidate set {sorted(x.cand)} at depth {x.depth}")
            if x.depth > self.kmax:
                raise InvariantViolation(f"node below depth kmax={self.kmax}")
            covers = is_cover(graph, x.cand)
            if x.is_leaf:
                if not covers and x.depth != self.kmax:
                    raise InvariantViolation(
                        f"leaf {sorted(x.cand)} at depth {x.depth} is not a cover")
                continue
            a, b = x.branch
            if not (a < b and graph.has_edge(a, b)):
                raise InvariantViolation(f"branch edge {x.branch} is not an edge")
            if a in x.cand or b in x.cand:
                raise InvariantViolation(f"branch edge {x.branch} already covered")
            for child, w in ((x.left, a), (x.right, b)):
                if child is None or child.cand != x.cand | {w} or child.depth != x.depth + 1:
                    raise InvariantViolation(f"bad child under {sorted(x.cand)}")
        if self.size() > 2 ** (self.kmax + 1) - 1:
            raise InvariantViolation("search tree exceeds 2^(kmax+1)-1 nodes")

    def shape(self):
        def rec(x):
            if x.is_leaf:
                return tuple(sorted(x.cand))
            return (x.branch, rec(x.left), rec(x.right))
        return rec(self.root)


class VCState(GraphMaintainer):
    """Answers "is there a vertex cover of size at most k"."""

    problem = "vcover"

    def __init__(self, n: int, kmax: int):
        super().__init__(n, kmax)
        self.tree = SearchTree(kmax)

    def edge_inserted(self, u, v):
        self.tree.insert_edge(self.graph, u, v)

    def edge_deleted(self, u, v):
        self.tree.delete_edge(self.graph, u, v)

    def query(self, k: int | None = None) -> bool:
        return self.tree.query(self.graph, self.param.k if k is None else k)

    def answer(self) -> bool:
        return self.query()

    def check_invariants(self) -> None:
        self.tree.audit(self.graph)

    def snapshot(self):
        return (self.graph.edges(), self.param.k, self.tree.shape())


def vc_query(state: VCState, k: int) -> bool:
    return state.query(k)


class TraversalResult:
    def __init__(self, found: bool, cover: frozenset[int] | None, steps: int):
        self.found = found
        self.cover = cover
        self.steps = steps

    def __bool__(self) -> bool:
        return self.found

    def __repr__(self) -> str:
        return f"TraversalResult(found={self.found}, cover={self.cover}, steps={self.steps})"


def vc_paraT_solve(graph: DynGraph, k: int) -> TraversalResult:
    """Depth-first search-tree traversal using level-indexed relations.

    ``P[level]`` is the branch edge chosen at that level and ``C[level]`` the
    endpoint currently taken.  Each loop iteration is one elementary step:
    descend along the left child, or backtrack to the deepest level that
    still took the smaller endpoint and switch it to the larger one.
    """
    P: dict[int, tuple[int, int]] = {}
    C: dict[int, int] = {}
    steps = 0
    while True:
        cand = frozenset(C.values())
        edge = smallest_uncovered(graph, cand)
        if edge is None:
            return TraversalResult(True, cand, steps)
        steps += 1
        level = len(C)
        if level < k:
            P[level + 1] = edge
            C[level + 1] = edge[0]
            continue
        back = [lv for lv in P if C.get(lv) == P[lv][0]]
        if not back:
            return TraversalResult(False, None, steps)
        lv = max(back)
        for i in [i for i in P if i > lv]:
            del P[i]
        for i in [i for i in C if i >= lv]:
            del C[i]
        C[lv] = P[lv][1]
