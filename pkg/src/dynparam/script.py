"""Change-script parsing and execution."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import (
    ChangeOp,
    DecK,
    DelE,
    Disable,
    DomainError,
    DynParamError,
    Enable,
    FlipBit,
    IncK,
    InsE,
    InvariantViolation,
    Maintainer,
    ParameterBoundError,
    Query,
    SetB,
    SetItem,
    SetString,
    SetT,
)


class ScriptError(DynParamError):
    """Malformed or rejected script line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# header key -> number of integer arguments (0 means a raw string)
HEADER_KEYS = {
    "domain": 1, "kmax": 1, "s": 1, "t": 1, "ell": 1, "points": 2,
    "items": 1, "bmax": 1, "alphabet": 0, "len": 1, "d": 1,
}

COMMANDS: dict[str, tuple[int, Callable[..., ChangeOp]]] = {
    "ins": (2, InsE),
    "del": (2, DelE),
    "k+": (0, IncK),
    "k-": (0, DecK),
    "query": (0, Query),
    "setitem": (3, SetItem),
    "setB": (1, SetB),
    "setT": (1, SetT),
    "flip": (3, FlipBit),
    "enable": (1, Enable),
    "disable": (1, Disable),
}


def _require(header: dict, *keys: str) -> list:
    missing = [k for k in keys if k not in header]
    if missing:
        raise DomainError(f"missing header line(s): {', '.join(missing)}")
    return [header[k] for k in keys]


def _vcover(h):
    from .vertex_cover import VCState
    return VCState(*_require(h, "domain", "kmax"))


def _vcover_compress(h):
    from .muddling import CompressionVCMaintainer
    return CompressionVCMaintainer(*_require(h, "domain", "kmax"))


def _longpath(h):
    from .longpath import LongPathState
    n, kmax = _require(h, "domain", "kmax")
    return LongPathState(n, kmax, s=h.get("s", 1), t=h.get("t"), ell=h.get("ell"))


def _fvs(h):
    from .fvs import FVSState
    return FVSState(*_require(h, "domain", "kmax"))


def _plc(h):
    from .plc_kernel import PointSet
    (n, d), kmax = _require(h, "points", "kmax")
    return PointSet(n, d, kmax)


def _knapsack(h):
    from .knapsack import KnapsackState
    return KnapsackState(*_require(h, "items", "bmax"))


def _cstring(h):
    from .closest_string import CStringMaintainer
    return CStringMaintainer(*_require(h, "alphabet", "len", "d"))


REGISTRY: dict[str, Callable[[dict], Maintainer]] = {
    "vcover": _vcover,
    "vcover-compress": _vcover_compress,
    "longpath": _longpath,
    "fvs": _fvs,
    "plc": _plc,
    "knapsack": _knapsack,
    "cstring": _cstring,
}


def make_maintainer(problem: str, header: dict) -> Maintainer:
    if problem not in REGISTRY:
        raise DomainError(f"unknown problem {problem!r}")
    return REGISTRY[problem](header)


@dataclass
class ParsedScript:
    problem: str
    header: dict
    ops: list[tuple[int, ChangeOp]] = field(default_factory=list)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ScriptError(lineno, f"expected an integer, got {tok!r}") from None


def parse_script(text: str) -> ParsedScript:
    problem = None
    header: dict = {}
    ops: list[tuple[int, ChangeOp]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "problem":
            if len(args) != 1 or problem is not None or ops:
                raise ScriptError(lineno, "'problem <name>' must appear once, first")
            if args[0] not in REGISTRY:
                raise ScriptError(lineno, f"unknown problem {args[0]!r}")
            problem = args[0]
            continue
        if problem is None:
            raise ScriptError(lineno, "script must start with 'problem <name>'")
        if head in HEADER_KEYS:
            if ops:
                raise ScriptError(lineno, f"header {head!r} after the first command")
            arity = HEADER_KEYS[head]
            if arity == 0:
                if len(args) != 1:
                    raise ScriptError(lineno, f"'{head}' takes one argument")
                header[head] = args[0]
            else:
                if len(args) != arity:
                    raise ScriptError(lineno, f"'{head}' takes {arity} integer argument(s)")
                vals = [_int(a, lineno) for a in args]
                header[head] = vals[0] if arity == 1 else tuple(vals)
            continue
        if head == "str":
            if len(args) != 2:
                raise ScriptError(lineno, "'str' takes an index and a string")
            ops.append((lineno, SetString(_int(args[0], lineno), args[1])))
            continue
        if head not in COMMANDS:
            raise ScriptError(lineno, f"unknown command {head!r}")
        arity, ctor = COMMANDS[head]
        if len(args) != arity:
            raise ScriptError(lineno, f"'{head}' takes {arity} argument(s), got {len(args)}")
        ops.append((lineno, ctor(*(_int(a, lineno) for a in args))))
    if problem is None:
        raise ScriptError(1, "empty script: no 'problem' line")
    return ParsedScript(problem, header, ops)


def run_parsed(parsed: ParsedScript, check: bool = True) -> list[bool]:
    try:
        m = make_maintainer(parsed.problem, parsed.header)
    except (DomainError, ParameterBoundError) as exc:
        raise ScriptError(1, str(exc)) from None
    answers = []
    for lineno, op in parsed.ops:
        try:
            if isinstance(op, Query):
                answers.append(m.answer())
            else:
                m.apply(op)
            if check:
                m.check_invariants()
        except InvariantViolation as exc:
            raise InvariantViolation(f"line {lineno}: {exc}") from None
        except (DomainError, ParameterBoundError) as exc:
            raise ScriptError(lineno, str(exc)) from None
    return answers


def run_script(text: str, check: bool = True) -> list[bool]:
    """Answers, one per ``query`` line, in order."""
    return run_parsed(parse_script(text), check)
