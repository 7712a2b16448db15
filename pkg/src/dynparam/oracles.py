"""Brute-force reference solvers and seeded change-sequence generators.

Nothing here imports the maintainer modules; the oracles work on plain
edge lists, tuples and strings so they cannot share bugs with the code they
check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .core import (
    ChangeOp,
    DecK,
    DelE,
    Disable,
    Enable,
    FlipBit,
    IncK,
    InsE,
    Query,
    SetB,
    SetItem,
    SetString,
    SetT,
    format_op,
)


class OracleSizeError(ValueError):
    """Instance exceeds the oracle's enumeration guard."""


def _guard(name: str, value: int, limit: int) -> None:
    if value > limit:
        raise OracleSizeError(f"{name} = {value} exceeds oracle limit {limit}")


def _adjacency(n: int, edges) -> dict[int, set[int]]:
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def oracle_vc(n: int, edges, k: int) -> bool:
    _guard("n", n, 20)
    edges = list(edges)
    for size in range(0, min(k, n) + 1):
        for s in combinations(range(1, n + 1), size):
            chosen = set(s)
            if all(u in chosen or v in chosen for u, v in edges):
                return True
    return False


def oracle_min_vc(n: int, edges) -> int:
    _guard("n", n, 20)
    for k in range(n + 1):
        if oracle_vc(n, edges, k):
            return k
    return n


def oracle_longpath(n: int, edges, s: int, t: int, ell: int) -> bool:
    """Simple path with exactly ``ell`` edges from s to t."""
    _guard("n", n, 12)
    if ell == 0:
        return s == t
    adj = _adjacency(n, edges)
    stack = [(s, 1 << s, 0)]
    while stack:
        v, seen, length = stack.pop()
        if length == ell:
            if v == t:
                return True
            continue
        for w in adj[v]:
            if not seen >> w & 1:
                stack.append((w, seen | 1 << w, length + 1))
    return False


def _acyclic(n: int, edges, removed: set[int]) -> bool:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u in removed or v in removed:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def oracle_fvs(n: int, edges, k: int) -> bool:
    _guard("n", n, 12)
    edges = list(edges)
    for size in range(0, min(k, n) + 1):
        for s in combinations(range(1, n + 1), size):
            if _acyclic(n, edges, set(s)):
                return True
    return False


def oracle_min_fvs(n: int, edges) -> int:
    for k in range(n + 1):
        if oracle_fvs(n, edges, k):
            return k
    return n


def oracle_girth(n: int, edges) -> int | None:
    """Length of a shortest cycle: BFS from every vertex, minimum over the
    cycles closed by non-tree edges (exact once the root lies on a shortest
    cycle)."""
    _guard("n", n, 12)
    adj = _adjacency(n, edges)
    best = None
    for root in range(1, n + 1):
        dist = {root: 0}
        parent = {root: 0}
        queue = [root]
        for x in queue:
            for y in sorted(adj[x]):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def oracle_knapsack(items, B: int, T: int) -> bool:
    """``items`` is a list of (profit, weight)."""
    _guard("items", len(items), 16)
    for mask in range(1 << len(items)):
        p = w = 0
        for i, (pi, wi) in enumerate(items):
            if mask >> i & 1:
                p += pi
                w += wi
        if w <= B and p >= T:
            return True
    return False


def oracle_interval_table(items, bmax: int) -> dict[tuple[int, int], list]:
    """Best profit for every interval i..j and exact weight b, None if none."""
    n = len(items)
    _guard("items", n, 8)
    table = {}
    for i in range(1, n + 2):
        for j in range(i - 1, n + 1):
            row = [None] * (bmax + 1)
            span = list(range(i, j + 1))
            for r in range(len(span) + 1):
                for sub in combinations(span, r):
                    w = sum(items[x - 1][1] for x in sub)
                    p = sum(items[x - 1][0] for x in sub)
                    if w <= bmax and (row[w] is None or p > row[w]):
                        row[w] = p
            table[(i, j)] = row
    return table


def oracle_collinear(a, b, c) -> bool:
    """Rational test: c lies on the line through a and b (duplicates count)."""
    if a == b or a == c or b == c:
        return True
    direction = [Fraction(y - x) for x, y in zip(a, b)]
    pivot = next(i for i, x in enumerate(direction) if x != 0)
    t = Fraction(c[pivot] - a[pivot]) / direction[pivot]
    return all(a[i] + t * direction[i] == c[i] for i in range(len(a)))


def oracle_plc(points, k: int) -> bool:
    """Cover ``points`` with k lines by branching on the first point."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    _guard("points", len(pts), 10)

    def solve(rest, budget):
        if not rest:
            return True
        if budget == 0:
            return False
        p = rest[0]
        if solve(rest[1:], budget - 1):
            return True
        for q in rest[1:]:
            left = [r for r in rest[1:] if not oracle_collinear(p, q, r)]
            if solve(left, budget - 1):
                return True
        return False

    return solve(pts, k)


def oracle_cstring(alphabet: str, strings, d: int) -> bool:
    """Try every string within distance d of the first one."""
    if not strings:
        return True
    first = strings[0]
    _guard("len", len(first), 12)
    for r in range(0, min(d, len(first)) + 1):
        for pos in combinations(range(len(first)), r):
            choices = [[ch for ch in alphabet if ch != first[j]] for j in pos]
            for syms in product(*choices):
                cand = list(first)
                for j, ch in zip(pos, syms):
                    cand[j] = ch
                if all(sum(x != y for x, y in zip(cand, s)) <= d for s in strings):
                    return True
    return False


class ShadowInstance:
    """Plain copy of the input that mirrors every change, for oracle calls."""

    def __init__(self, problem: str, header: dict):
        self.problem = problem
        self.header = dict(header)
        self.kmax = header.get("kmax", 1)
        self.k = self.kmax
        self.edges: set[tuple[int, int]] = set()
        n = header.get("domain") or header.get("items") or header.get("points", (1,))[0]
        self.n = n
        if problem == "plc":
            self.n, self.d = header["points"]
            self.coords = {i: [0] * self.d for i in range(1, self.n + 1)}
            self.enabled: set[int] = set()
        if problem == "knapsack":
            self.items = [(0, 0)] * self.n
            self.B = 0
            self.T = 0
        if problem == "cstring":
            self.strings: dict[int, str] = {}

    def apply(self, op: ChangeOp) -> None:
        if isinstance(op, InsE):
            self.edges.add((min(op.u, op.v), max(op.u, op.v)))
        elif isinstance(op, DelE):
            self.edges.discard((min(op.u, op.v), max(op.u, op.v)))
        elif isinstance(op, IncK):
            self.k = min(self.kmax, self.k + 1)
        elif isinstance(op, DecK):
            self.k = max(1, self.k - 1)
        elif isinstance(op, SetItem):
            self.items[op.i - 1] = (op.profit, op.weight)
        elif isinstance(op, SetB):
            self.B = op.value
        elif isinstance(op, SetT):
            self.T = op.value
        elif isinstance(op, FlipBit):
            self.coords[op.i][op.dim - 1] ^= 1 << op.bit
        elif isinstance(op, Enable):
            self.enabled.add(op.i)
        elif isinstance(op, Disable):
            self.enabled.discard(op.i)
        elif isinstance(op, SetString):
            self.strings[op.i] = op.text

    def answer(self) -> bool:
        p = self.problem
        if p in ("vcover", "vcover-compress"):
            return oracle_vc(self.n, self.edges, self.k)
        if p == "fvs":
            return oracle_fvs(self.n, self.edges, self.k)
        if p == "longpath":
            s = self.header.get("s", 1)
            t = self.header.get("t", self.n)
            return oracle_longpath(self.n, self.edges, s, t, self.k)
        if p == "knapsack":
            return oracle_knapsack(self.items, self.B, self.T)
        if p == "plc":
            return oracle_plc([tuple(self.coords[i]) for i in sorted(self.enabled)], self.k)
        if p == "cstring":
            m = max(self.strings, default=0)
            return oracle_cstring(self.header["alphabet"],
                                  [self.strings[i] for i in range(1, m + 1)], self.header["d"])
        raise ValueError(f"unknown problem {p!r}")


@dataclass
class Scenario:
    problem: str
    header: dict
    ops: list[ChangeOp] = field(default_factory=list)

    def header_lines(self) -> list[str]:
        lines = [f"problem {self.problem}"]
        for key, value in self.header.items():
            if isinstance(value, tuple):
                value = " ".join(map(str, value))
            lines.append(f"{key} {value}")
        return lines

    def to_script(self) -> str:
        return "\n".join(self.header_lines() + [format_op(op) for op in self.ops]) + "\n"


PROBLEMS = ("vcover", "vcover-compress", "longpath", "fvs", "plc", "knapsack", "cstring")


def random_header(problem: str, rng: random.Random) -> dict:
    if problem in ("vcover", "vcover-compress", "fvs"):
        return {"domain": rng.randint(2, 10), "kmax": rng.randint(1, 3)}
    if problem == "longpath":
        n = rng.randint(2, 10)
        return {"domain": n, "kmax": rng.randint(1, 3), "s": rng.randint(1, n),
                "t": rng.randint(1, n)}
    if problem == "plc":
        return {"points": (rng.randint(1, 8), 2), "kmax": rng.randint(1, 3)}
    if problem == "knapsack":
        return {"items": rng.randint(1, 6), "bmax": rng.randint(0, 20)}
    if problem == "cstring":
        return {"alphabet": "ABC"[: rng.randint(1, 3)], "len": rng.randint(1, 8),
                "d": rng.randint(0, 2)}
    raise ValueError(f"unknown problem {problem!r}")


def _graph_op(rng: random.Random, n: int, edges: set) -> ChangeOp:
    roll = rng.random()
    if roll < 0.12:
        return IncK() if rng.random() < 0.5 else DecK()
    if edges and roll < 0.45:
        u, v = rng.choice(sorted(edges))
        edges.discard((u, v))
        return DelE(u, v)
    u, v = rng.sample(range(1, n + 1), 2)
    edges.add((min(u, v), max(u, v)))
    return InsE(u, v)


def gen_change_sequence(problem: str, rng: random.Random | int, length: int,
                        header: dict | None = None, query_every: int = 1) -> Scenario:
    """``length`` changes, each followed by a query when ``query_every`` divides
    its 1-based position.  Deletions only target present edges."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    header = header if header is not None else random_header(problem, rng)
    scen = Scenario(problem, header)
    edges: set[tuple[int, int]] = set()
    strings_defined = 0
    for step in range(1, length + 1):
        if problem in ("vcover", "vcover-compress", "fvs", "longpath"):
            op = _graph_op(rng, header["domain"], edges)
        elif problem == "plc":
            n, d = header["points"]
            roll = rng.random()
            i = rng.randint(1, n)
            if roll < 0.6:
                op = FlipBit(i, rng.randint(1, d), rng.randint(0, 7))
            elif roll < 0.8:
                op = Enable(i)
            elif roll < 0.9:
                op = Disable(i)
            else:
                op = IncK() if rng.random() < 0.5 else DecK()
        elif problem == "knapsack":
            roll = rng.random()
            if roll < 0.7:
                op = SetItem(rng.randint(1, header["items"]), rng.randint(0, 30),
                             rng.randint(0, 12))
            elif roll < 0.85:
                op = SetB(rng.randint(0, header["bmax"]))
            else:
                op = SetT(rng.randint(0, 60))
        elif problem == "cstring":
            if strings_defined < 5 and (strings_defined == 0 or rng.random() < 0.5):
                strings_defined += 1
                i = strings_defined
            else:
                i = rng.randint(1, strings_defined)
            text = "".join(rng.choice(header["alphabet"]) for _ in range(header["len"]))
            op = SetString(i, text)
        else:
            raise ValueError(f"unknown problem {problem!r}")
        scen.ops.append(op)
        if query_every and step % query_every == 0:
            scen.ops.append(Query())
    return scen


def gen_boundary_crossing(rng: random.Random | int, length: int = 50,
                          crossings: int = 5) -> Scenario:
    """vcover-compress sequence whose minimum cover crosses 2k both ways.

    Edges of a perfect matching on 2(2k+1) vertices push the minimum cover
    above 2k; deletions of random present edges pull it back.  Sprinkled
    random edges and parameter moves keep runs varied.  Generation continues
    past ``length`` changes until both directions were crossed ``crossings``
    times.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    # 2(2k+1) vertices must stay within the n <= 10 guard
    kmax = rng.randint(1, 2)
    n = 2 * (2 * kmax + 1)
    scen = Scenario("vcover-compress", {"domain": n, "kmax": kmax})
    matching = [(2 * i + 1, 2 * i + 2) for i in range(2 * kmax + 1)]
    edges: set[tuple[int, int]] = set()
    ups = downs = changes = 0
    above = False
    while changes < length or ups < crossings or downs < crossings:
        roll = rng.random()
        if roll < 0.1:
            op = IncK() if rng.random() < 0.5 else DecK()
        elif roll < 0.25:
            u, v = sorted(rng.sample(range(1, n + 1), 2))
            op = DelE(u, v) if (u, v) in edges else InsE(u, v)
        elif above:
            op = DelE(*rng.choice(sorted(edges)))
        else:
            missing = [e for e in matching if e not in edges]
            op = InsE(*rng.choice(missing)) if missing else DelE(*rng.choice(sorted(edges)))
        if isinstance(op, InsE):
            edges.add((op.u, op.v))
        elif isinstance(op, DelE):
            edges.discard((op.u, op.v))
        scen.ops += [op, Query()]
        changes += 1
        size = oracle_min_vc(n, edges)
        if not above and size > 2 * kmax:
            above, ups = True, ups + 1
        elif above and size <= 2 * kmax:
            above, downs = False, downs + 1
    return scen
