"""Long path queries through colour coding.

``ColourPathRelation`` stores, for one vertex colouring, every triple
``(C, a, b)`` such that the graph has a path from a to b whose vertices are
coloured bijectively onto the colour set C.  Colour sets are bitmasks (bit c
for colour c) and the triples sharing ``(C, a)`` are packed into an integer
bitset over ``b``.

``LongPathState`` keeps one relation per distinct colour-class partition of
the hash family.  Every member ``omega o h`` of the family is recovered from
the relation of ``h`` by relabelling colour sets through ``omega``.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Sequence

from .colour_coding import (
    ColouringIndex,
    FamilyParams,
    build_family,
    hash_pairs,
    omega_value,
    raw_hash,
)
from .core import DomainError, DynGraph, GraphMaintainer, InvariantViolation

Triple = tuple[int, int, int]

DEFAULT_MAX_ELL = 3


def bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def colour_set(colours: Iterable[int]) -> int:
    mask = 0
    for c in colours:
        mask |= 1 << c
    return mask


class ColourPathRelation:
    """Colour-set path relation for a fixed colouring.

    ``colour[v]`` is the colour of vertex v (index 0 unused). Only colour sets
    with at most ``max_size`` colours are stored.
    """

    __slots__ = ("colour", "max_size", "n", "rows")

    def __init__(self, colour: Sequence[int], max_size: int):
        self.colour = list(colour)
        self.max_size = max_size
        self.n = len(self.colour) - 1
        # colour-set mask -> per-vertex bitset of partner endpoints
        self.rows: dict[int, list[int]] = {}
        for a in range(1, self.n + 1):
            self._row(1 << self.colour[a])[a] |= 1 << a

    def _row(self, mask: int) -> list[int]:
        row = self.rows.get(mask)
        if row is None:
            row = self.rows[mask] = [0] * (self.n + 1)
        return row

    def contains(self, mask: int, a: int, b: int) -> bool:
        row = self.rows.get(mask)
        return row is not None and bool(row[a] >> b & 1)

    def triples(self) -> set[Triple]:
        return {(mask, a, b) for mask, row in self.rows.items()
                for a in range(1, self.n + 1) for b in bits(row[a])}

    def copy(self) -> "ColourPathRelation":
        other = ColourPathRelation.__new__(ColourPathRelation)
        other.colour = self.colour
        other.max_size = self.max_size
        other.n = self.n
        other.rows = {m: list(r) for m, r in self.rows.items()}
        return other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColourPathRelation):
            return NotImplemented
        return self.colour == other.colour and self._nonempty() == other._nonempty()

    def _nonempty(self) -> dict[int, list[int]]:
        return {m: r for m, r in self.rows.items() if any(r)}

    def insert_edge(self, u: int, v: int) -> None:
        """One-step composition through the new edge (u, v).

        Every new path uses the edge exactly once, so it splits into an old
        path ending at u and an old path starting at v.
        """
        col = self.colour
        if col[u] == col[v]:
            return
        ends_u = [(m, r[u]) for m, r in self.rows.items() if m >> col[u] & 1 and r[u]]
        starts_v = [(m, r[v]) for m, r in self.rows.items() if m >> col[v] & 1 and r[v]]
        additions: list[tuple[int, int, int]] = []
        for m1, a_set in ends_u:
            for m2, b_set in starts_v:
                if m1 & m2:
                    continue
                mask = m1 | m2
                if mask.bit_count() > self.max_size:
                    continue
                additions.append((mask, a_set, b_set))
        for mask, a_set, b_set in additions:
            row = self._row(mask)
            for a in bits(a_set):
                row[a] |= b_set
            for b in bits(b_set):
                row[b] |= a_set

    def delete_edge(self, u: int, v: int, graph: DynGraph) -> None:
        """Restore the relation after (u, v) was removed from ``graph``.

        Colour sets missing the colour of u or of v describe paths that cannot
        use the edge, so they are kept; the rest are recomputed bottom-up.
        """
        col = self.colour
        if col[u] == col[v]:
            return
        need = (1 << col[u]) | (1 << col[v])
        stale = sorted((m for m in self.rows if m & need == need), key=int.bit_count)
        for mask in stale:
            row = [0] * (self.n + 1)
            for b in range(1, self.n + 1):
                cb = 1 << col[b]
                if not mask & cb:
                    continue
                prev = self.rows.get(mask ^ cb)
                if prev is None:
                    continue
                acc = 0
                for w in graph.adj[b]:
                    acc |= prev[w]
                row[b] = acc
            self.rows[mask] = row
        for mask in stale:
            if not any(self.rows[mask]):
                del self.rows[mask]

    def delete_edge_literal(self, u: int, v: int, graph: DynGraph) -> None:
        """The single-step deletion rule that only re-derives a triple through
        another edge joining the two endpoint colours.

        Kept for experimental comparison: it misses paths on which the two
        colours are not adjacent (see ``deletion_rule_counterexamples``).
        """
        col = self.colour
        if col[u] == col[v]:
            return
        cu, cv = col[u], col[v]
        need = (1 << cu) | (1 << cv)
        old = {m: list(r) for m, r in self.rows.items()}
        bridges = [(x, y) for x in range(1, self.n + 1) for y in graph.adj[x]
                   if col[x] == cu and col[y] == cv]
        for mask in [m for m in old if m & need == need]:
            row = [0] * (self.n + 1)
            for x, y in bridges:
                for m1, r1 in old.items():
                    if m1 & mask != m1 or not m1 >> cu & 1 or m1 >> cv & 1:
                        continue
                    r2 = old.get(mask ^ m1)
                    if r2 is None or not r2[y]:
                        continue
                    for a in bits(r1[x]):
                        row[a] |= r2[y]
                    for b in bits(r2[y]):
                        row[b] |= r1[x]
            if any(row):
                self.rows[mask] = row
            else:
                del self.rows[mask]


def lp_rebuild(graph: DynGraph, colour: Sequence[int], k: int) -> ColourPathRelation:
    """Exact relation for ``graph`` by dynamic programming over set size."""
    rel = ColourPathRelation(colour, k)
    col = rel.colour
    frontier = list(rel.rows)
    for _ in range(1, k):
        grown: set[int] = set()
        for mask in frontier:
            prev = rel.rows[mask]
            for b in range(1, rel.n + 1):
                cb = 1 << col[b]
                if mask & cb:
                    continue
                acc = 0
                for w in graph.adj[b]:
                    acc |= prev[w]
                if acc:
                    rel._row(mask | cb)[b] |= acc
                    grown.add(mask | cb)
        frontier = list(grown)
    return rel


def lp_insert_edge(graph: DynGraph, rel: ColourPathRelation, u: int, v: int) -> None:
    if not graph.add_edge(u, v):
        raise DomainError(f"edge ({u},{v}) already present")
    rel.insert_edge(u, v)


def lp_delete_edge(graph: DynGraph, rel: ColourPathRelation, u: int, v: int) -> None:
    if not graph.remove_edge(u, v):
        raise DomainError(f"edge ({u},{v}) not present")
    rel.delete_edge(u, v, graph)


def class_colouring(hashes: Sequence[int]) -> tuple[int, ...]:
    """Relabel hash values by order of first appearance (index 0 unused)."""
    seen: dict[int, int] = {}
    return (0,) + tuple(seen.setdefault(h, len(seen)) for h in hashes)


class LongPathState(GraphMaintainer):
    """Maintains simple s-t paths of length ell under edge changes.

    The parameter is ell (``1..kmax``). Relations are kept for the colouring
    family with ``K = min(kmax + 1, n)`` colours, which also serves every
    shorter path length: a family that separates every K-subset separates
    every smaller subset.
    """

    problem = "longpath"

    def __init__(self, n: int, kmax: int, s: int = 1, t: int | None = None,
                 ell: int | None = None, max_ell: int = DEFAULT_MAX_ELL):
        if kmax > max_ell:
            raise DomainError(
                f"longpath stores one relation per colouring; kmax={kmax} exceeds the "
                f"desk-scale limit {max_ell} (raise max_ell to override)")
        super().__init__(n, kmax)
        t = n if t is None else t
        for x in (s, t):
            if not 1 <= x <= n:
                raise DomainError(f"vertex {x} outside domain 1..{n}")
        self.s, self.t = s, t
        if ell is not None:
            if not 1 <= ell <= kmax:
                raise DomainError(f"ell={ell} outside 1..{kmax}")
            self.param.k = ell
        self.family = FamilyParams(n, min(kmax + 1, n), min(kmax + 1, n))
        self.members: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for pj in hash_pairs(n, self.family.k):
            hashes = [raw_hash(pj, self.family.k, x) for x in range(1, n + 1)]
            self.members.setdefault(class_colouring(hashes), []).append(pj)
        self.relations = {part: ColourPathRelation(part, self.family.k)
                          for part in self.members}

    @property
    def ell(self) -> int:
        return self.param.k

    def edge_inserted(self, u, v):
        for rel in self.relations.values():
            rel.insert_edge(u, v)

    def edge_deleted(self, u, v):
        for rel in self.relations.values():
            rel.delete_edge(u, v, self.graph)

    def query(self, s: int | None = None, t: int | None = None, ell: int | None = None) -> bool:
        s = self.s if s is None else s
        t = self.t if t is None else t
        ell = self.ell if ell is None else ell
        if ell == 0:
            return s == t
        size = ell + 1
        if size > self.family.k:
            return False
        for rel in self.relations.values():
            for mask, row in rel.rows.items():
                if mask.bit_count() == size and row[s] >> t & 1:
                    return True
        return False

    def answer(self) -> bool:
        return self.query()

    def partition_of(self, idx: ColouringIndex) -> tuple[int, ...]:
        hashes = [raw_hash(idx, self.family.k, x) for x in range(1, self.graph.n + 1)]
        return class_colouring(hashes)

    def relation_for(self, idx: ColouringIndex) -> set[Triple]:
        """Relation of one family member, projected from its partition.

        A path is C-coloured under ``omega o h`` exactly when it is H-coloured
        under h for some H that omega maps injectively onto C.
        """
        k = self.family.k
        part = self.partition_of(idx)
        rel = self.relations[part]
        # hash value carried by each class
        class_hash: dict[int, int] = {}
        for x in range(1, self.graph.n + 1):
            class_hash.setdefault(part[x], raw_hash(idx, k, x))
        out: set[Triple] = set()
        for mask, row in rel.rows.items():
            cols = {omega_value(idx.omega_idx, self.family.c, class_hash[c]) for c in bits(mask)}
            if len(cols) != mask.bit_count():
                continue
            target = colour_set(cols)
            for a in range(1, self.graph.n + 1):
                for b in bits(row[a]):
                    out.add((target, a, b))
        return out

    def family_members(self) -> Iterable[ColouringIndex]:
        return build_family(self.family)

    def check_invariants(self) -> None:
        for rel in self.relations.values():
            for mask, row in rel.rows.items():
                for a in range(1, rel.n + 1):
                    for b in bits(row[a]):
                        if not row[b] >> a & 1:
                            raise InvariantViolation(f"asymmetric triple ({mask},{a},{b})")
            for a in range(1, rel.n + 1):
                if not rel.contains(1 << rel.colour[a], a, a):
                    raise InvariantViolation(f"missing singleton triple for vertex {a}")

    def audit(self) -> None:
        """Compare every stored relation with a fresh rebuild."""
        for part, rel in self.relations.items():
            if rel != lp_rebuild(self.graph, part, self.family.k):
                raise InvariantViolation(f"relation for partition {part} drifted")

    def snapshot(self):
        return (self.graph.edges(), self.param.k,
                {p: r._nonempty() for p, r in self.relations.items()})


def lp_query(state: LongPathState, s: int, t: int) -> bool:
    return state.query(s, t)


class LayerStats:
    """Counters filled in by ``lp_paraT_solve``."""

    def __init__(self):
        self.colourings = 0
        self.orders = 0
        self.rounds = 0


def lp_paraT_solve(graph: DynGraph, s: int, t: int, ell: int,
                   stats: LayerStats | None = None) -> bool:
    """Iterate colourings and colour orders, growing layers from s.

    For every family member (with ``k = ell + 1`` colours) and every ordering
    pi of the colours, layer i holds the vertices reachable from s along a
    path coloured pi(1), ..., pi(i).  Members that colour the domain
    identically are visited once.
    """
    stats = stats if stats is not None else LayerStats()
    n = graph.n
    if ell == 0:
        return s == t
    k = ell + 1
    if k > n:
        return False
    seen: set[tuple[int, ...]] = set()
    for pj in hash_pairs(n, k):
        hashes = [raw_hash(pj, k, x) for x in range(1, n + 1)]
        image = sorted(set(hashes))
        # only omega's values on the image of the domain matter
        for cols in product(range(1, k + 1), repeat=len(image)):
            lookup = dict(zip(image, cols))
            colouring = (0,) + tuple(lookup[h] for h in hashes)
            if colouring in seen:
                continue
            seen.add(colouring)
            stats.colourings += 1
            for order in permutations(range(1, k + 1)):
                stats.orders += 1
                if _coloured_walk(graph, colouring, order, s, t, stats):
                    return True
    return False


def _coloured_walk(graph, colouring, order, s, t, stats) -> bool:
    layer = {s} if colouring[s] == order[0] else set()
    stats.rounds += 1
    for c in order[1:]:
        if not layer:
            return False
        layer = {w for x in layer for w in graph.adj[x] if colouring[w] == c}
        stats.rounds += 1
    return t in layer


def deletion_rule_counterexamples(graph: DynGraph, colour: Sequence[int], k: int,
                                  edge: tuple[int, int]) -> tuple[set[Triple], set[Triple]]:
    """Run the literal single-step deletion rule next to the exact one.

    Returns ``(missed, spurious)`` triples of the literal rule relative to a
    rebuild of the graph without ``edge``.
    """
    u, v = edge
    rel = lp_rebuild(graph, colour, k)
    after = graph.copy()
    after.remove_edge(u, v)
    rel.delete_edge_literal(u, v, after)
    exact = lp_rebuild(after, colour, k).triples()
    got = rel.triples()
    return exact - got, got - exact

