"""Command-line front end: run, verify, bench and colouring check."""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .colour_coding import FamilyParams, check_universal, family_size
from .core import DynParamError, InvariantViolation, Maintainer, Query, op_kind
from .oracles import PROBLEMS, Scenario, ShadowInstance, gen_change_sequence
from .script import ScriptError, make_maintainer, run_script

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


@dataclass
class BenchRecord:
    idx: int
    kind: str
    maint_ns: int
    recompute_ns: int
    answer: bool

    def row(self) -> str:
        return f"{self.idx},{self.kind},{self.maint_ns},{self.recompute_ns},{yn(self.answer)}"


def yn(b: bool) -> str:
    return "yes" if b else "no"


def cmd_run(args, out=None) -> int:
    out = out or sys.stdout
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        answers = run_script(text, check=not args.no_check)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DynParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for i, a in enumerate(answers, 1):
        print(f"q{i} {yn(a)}", file=out)
    return EXIT_OK


@dataclass
class VerifyFailure:
    seed: int
    step: int
    expected: bool
    got: bool
    scenario: Scenario


def verify_trial(scen: Scenario, factory: Callable[[str, dict], Maintainer],
                 check: bool = True) -> tuple[int, bool, bool] | None:
    """First (step, expected, got) mismatch, or None."""
    m = factory(scen.problem, scen.header)
    shadow = ShadowInstance(scen.problem, scen.header)
    for step, op in enumerate(scen.ops, 1):
        if isinstance(op, Query):
            got, expected = m.answer(), shadow.answer()
            if got != expected:
                return step, expected, got
        else:
            m.apply(op)
            shadow.apply(op)
        if check:
            m.check_invariants()
    return None


def run_verify(problem: str, seed: int, trials: int, length: int,
               factory: Callable[[str, dict], Maintainer] = make_maintainer,
               check: bool = True) -> tuple[int, VerifyFailure | None]:
    passed = 0
    first = None
    for trial in range(trials):
        trial_seed = seed + trial
        scen = gen_change_sequence(problem, random.Random(trial_seed), length)
        bad = verify_trial(scen, factory, check)
        if bad is None:
            passed += 1
        elif first is None:
            first = VerifyFailure(trial_seed, bad[0], bad[1], bad[2], scen)
    return passed, first


def cmd_verify(args, out=None, factory=make_maintainer) -> int:
    out = out or sys.stdout
    try:
        passed, failure = run_verify(args.problem, args.seed, args.trials, args.len, factory)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DynParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"pass {passed}/{args.trials}", file=out)
    if failure is None:
        return EXIT_OK
    path = Path(args.repro or f"repro-{args.problem}-seed{failure.seed}.script")
    path.write_text(failure.scenario.to_script(), encoding="utf-8")
    print(f"first failure: seed {failure.seed} step {failure.step} "
          f"expected {yn(failure.expected)} got {yn(failure.got)}", file=out)
    print(f"reproducer: {path}", file=out)
    return EXIT_INPUT


def bench_records(scen: Scenario) -> list[BenchRecord]:
    """Time each change plus its answer against a from-scratch recomputation."""
    m = make_maintainer(scen.problem, scen.header)
    shadow = ShadowInstance(scen.problem, scen.header)
    records = []
    changes = [op for op in scen.ops if not isinstance(op, Query)]
    for idx, op in enumerate(changes, 1):
        t0 = time.perf_counter_ns()
        m.apply(op)
        ans = m.answer()
        t1 = time.perf_counter_ns()
        shadow.apply(op)
        ref = shadow.answer()
        t2 = time.perf_counter_ns()
        if ans != ref:
            raise InvariantViolation(f"change {idx}: maintainer says {yn(ans)}, recompute {yn(ref)}")
        records.append(BenchRecord(idx, op_kind(op), t1 - t0, t2 - t1, ans))
    return records


def cmd_bench(args, out=None) -> int:
    out = out or sys.stdout
    scen = gen_change_sequence(args.problem, random.Random(args.seed), args.len)
    if args.script_out:
        Path(args.script_out).write_text(scen.to_script(), encoding="utf-8")
    try:
        records = bench_records(scen)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DynParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print("idx,kind,maint_ns,recompute_ns,answer", file=out)
    for rec in records:
        print(rec.row(), file=out)
    return EXIT_OK


def cmd_colouring_check(args, out=None) -> int:
    out = out or sys.stdout
    try:
        params = FamilyParams(args.n, args.k, args.c)
        ok = check_universal(params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"universal: {yn(ok)}", file=out)
    print(f"family size: {family_size(params)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynparam",
                                     description="Dynamic parameterised maintainers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a change script")
    p.add_argument("file")
    p.add_argument("--no-check", action="store_true", help="skip invariant checks")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="fuzz a maintainer against its oracle")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--len", type=int, default=50)
    p.add_argument("--repro", help="where to write the reproducer script")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="per-change cost against recomputation, as CSV")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len", type=int, default=50)
    p.add_argument("--script-out", help="also write the generated script here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("colouring", help="colouring family tools")
    csub = p.add_subparsers(dest="action", required=True)
    c = csub.add_parser("check", help="exhaustively test universality")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--c", type=int, required=True)
    c.set_defaults(func=cmd_colouring_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
