"""Closest string by a depth-d search tree with an explicit DFS stack."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .core import DomainError, Maintainer, SetString


def hamming(a: str, b: str) -> int:
    if len(a) != len(b):
        raise DomainError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def first_mismatches(a, b, limit: int) -> list[int]:
    """Positions of the first ``limit`` mismatches; the scan stops there."""
    out = []
    for j, (x, y) in enumerate(zip(a, b)):
        if x != y:
            out.append(j)
            if len(out) == limit:
                break
    return out


@dataclass
class StringInstance:
    alphabet: str
    strings: list[str]
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("d must be non-negative")
        if not self.strings:
            raise DomainError("need at least one string")
        length = len(self.strings[0])
        for s in self.strings:
            if len(s) != length:
                raise DomainError(f"string {s!r} has length {len(s)}, expected {length}")
            bad = set(s) - set(self.alphabet)
            if bad:
                raise DomainError(f"string {s!r} uses symbols {sorted(bad)} outside the alphabet")


class CsStep(NamedTuple):
    level: int
    i: int
    j: int
    m: int


@dataclass
class CsResult:
    found: bool
    witness: str | None
    nodes: int
    path: list[CsStep] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.found


def cs_solve(inst: StringInstance) -> CsResult:
    """Search from s_1; every node fixes one more position of the candidate.

    ``path`` is the DFS stack: entry ``(level, i, j, m)`` says the branch at
    that level copied position j (the m-th mismatch, 1-based) from string i.
    Backtracking pops to the deepest entry with ``m <= d`` and moves to the
    next mismatch.
    """
    d = inst.d
    strings = inst.strings
    cand = list(strings[0])
    path: list[CsStep] = []
    saved: list[str] = []
    mism: list[list[int]] = []
    nodes = 0
    descend = True
    while True:
        if descend:
            nodes += 1
            bad = None
            for i, s in enumerate(strings):
                pos = first_mismatches(cand, s, d + 1)
                if len(pos) > d:
                    bad = (i, pos)
                    break
            if bad is None:
                return CsResult(True, "".join(cand), nodes, list(path))
            if len(path) < d:
                i, pos = bad
                mism.append(pos)
                j = pos[0]
                path.append(CsStep(len(path) + 1, i + 1, j, 1))
                saved.append(cand[j])
                cand[j] = strings[i][j]
                continue
        # backtrack
        while path and path[-1].m > d:
            top = path.pop()
            cand[top.j] = saved.pop()
            mism.pop()
        if not path:
            return CsResult(False, None, nodes, [])
        top = path.pop()
        cand[top.j] = saved.pop()
        nxt = mism[-1][top.m] if top.m < len(mism[-1]) else None
        if nxt is None:
            # fewer than d+1 positions cannot happen for a violating string
            raise AssertionError("mismatch list shorter than d+1")
        path.append(CsStep(top.level, top.i, nxt, top.m + 1))
        saved.append(cand[nxt])
        cand[nxt] = strings[top.i - 1][nxt]
        descend = True


class CStringMaintainer(Maintainer):
    """Holds strings defined by ``str`` commands and solves on every query."""

    problem = "cstring"

    def __init__(self, alphabet: str, length: int, d: int):
        if not alphabet:
            raise DomainError("alphabet must be non-empty")
        if length < 0 or d < 0:
            raise DomainError("len and d must be non-negative")
        self.alphabet = alphabet
        self.length = length
        self.d = d
        self.strings: dict[int, str] = {}
        self.last: CsResult | None = None

    def on_SetString(self, op: SetString) -> None:
        if op.i < 1:
            raise DomainError(f"string index {op.i} must be >= 1")
        if len(op.text) != self.length:
            raise DomainError(f"string {op.text!r} has length {len(op.text)}, expected {self.length}")
        bad = set(op.text) - set(self.alphabet)
        if bad:
            raise DomainError(f"symbols {sorted(bad)} are not in the alphabet")
        self.strings[op.i] = op.text
        self.last = None

    def instance(self) -> StringInstance:
        m = max(self.strings, default=0)
        missing = [i for i in range(1, m + 1) if i not in self.strings]
        if missing:
            raise DomainError(f"strings {missing} are undefined")
        return StringInstance(self.alphabet, [self.strings[i] for i in range(1, m + 1)], self.d)

    def answer(self) -> bool:
        if not self.strings:
            return True
        if self.last is None:
            self.last = cs_solve(self.instance())
        return self.last.found

    def snapshot(self):
        return tuple(sorted(self.strings.items()))
