import io
import random

from dynparam.cli import build_parser, cmd_verify, main, run_verify
from dynparam.oracles import gen_change_sequence
from dynparam.script import make_maintainer, run_script


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_run_outputs_answers(tmp_path, capsys):
    f = tmp_path / "s.script"
    f.write_text("problem vcover\ndomain 3\nkmax 1\nins 1 2\nquery\nins 2 3\nins 1 3\nquery\n")
    code, out = run_cli(capsys, "run", str(f))
    assert code == 0
    assert out.out.splitlines() == ["q1 yes", "q2 no"]


def test_run_missing_file(tmp_path, capsys):
    code, out = run_cli(capsys, "run", str(tmp_path / "nope"))
    assert code == 1


def test_run_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.script"
    f.write_text("problem vcover\ndomain 3\nkmax 1\nins 1\n")
    code, out = run_cli(capsys, "run", str(f))
    assert code == 1 and "line 4" in out.err


def test_run_invariant_failure(tmp_path, capsys, monkeypatch):
    from dynparam.core import InvariantViolation
    from dynparam.vertex_cover import VCState

    def broken(self):
        raise InvariantViolation("forced")

    monkeypatch.setattr(VCState, "check_invariants", broken)
    f = tmp_path / "s.script"
    f.write_text("problem vcover\ndomain 3\nkmax 1\nins 1 2\n")
    code, out = run_cli(capsys, "run", str(f))
    assert code == 2


def test_knapsack_bound_error_exit(tmp_path, capsys):
    f = tmp_path / "k.script"
    f.write_text("problem knapsack\nitems 2\nbmax 3\nsetB 4\nquery\n")
    code, out = run_cli(capsys, "run", str(f))
    assert code == 1 and "bmax" in out.err


def test_verify_passes(capsys):
    code, out = run_cli(capsys, "verify", "vcover", "--seed", "7", "--trials", "100", "--len", "50")
    assert code == 0 and out.out.strip() == "pass 100/100"


def test_verify_zero_trials(capsys):
    code, out = run_cli(capsys, "verify", "fvs", "--trials", "0")
    assert code == 0 and out.out.strip() == "pass 0/0"


def test_verify_reports_injected_fault(tmp_path):
    class Flipped:
        def __init__(self, inner):
            self.inner = inner
            self.queries = 0

        def apply(self, op):
            self.inner.apply(op)

        def check_invariants(self):
            self.inner.check_invariants()

        def answer(self):
            self.queries += 1
            a = self.inner.answer()
            return not a if self.queries == 3 else a

    def factory(problem, header):
        return Flipped(make_maintainer(problem, header))

    repro = tmp_path / "repro.script"
    args = build_parser().parse_args(["verify", "vcover", "--seed", "2", "--trials", "3",
                                      "--repro", str(repro)])
    out = io.StringIO()
    code = cmd_verify(args, out=out, factory=factory)
    assert code == 1
    text = out.getvalue()
    assert "pass 0/3" in text and "first failure: seed 2 step 6" in text
    assert repro.read_text().startswith("problem vcover\n")
    # the reproducer replays cleanly on the real maintainer
    run_script(repro.read_text())


def test_bench_header_only(capsys):
    code, out = run_cli(capsys, "bench", "knapsack", "--len", "0")
    assert code == 0 and out.out == "idx,kind,maint_ns,recompute_ns,answer\n"


def test_bench_matches_run(tmp_path, capsys):
    script = tmp_path / "b.script"
    code, out = run_cli(capsys, "bench", "fvs", "--seed", "3", "--len", "25",
                        "--script-out", str(script))
    rows = out.out.splitlines()[1:]
    assert code == 0 and len(rows) == 25
    code, run_out = run_cli(capsys, "run", str(script))
    ran = [line.split()[1] for line in run_out.out.splitlines()]
    assert [r.split(",")[-1] for r in rows] == ran
    assert gen_change_sequence("fvs", random.Random(3), 25).to_script() == script.read_text()


def test_colouring_check(capsys):
    code, out = run_cli(capsys, "colouring", "check", "--n", "8", "--k", "2", "--c", "2")
    assert code == 0
    assert out.out.splitlines() == ["universal: yes", "family size: 368"]


def test_colouring_guard(capsys):
    code, out = run_cli(capsys, "colouring", "check", "--n", "40", "--k", "6", "--c", "6")
    assert code == 1 and "enumeration needs" in out.err


def test_bad_arguments(capsys):
    code, _ = run_cli(capsys, "verify", "nosuch")
    assert code == 1
