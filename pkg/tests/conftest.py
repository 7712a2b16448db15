import random

import pytest

from dynparam.core import DynGraph


@pytest.fixture
def rng():
    return random.Random(12345)


def random_graph(rng, n, p=0.4):
    return DynGraph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                        if rng.random() < p])


_acceptance_key = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance_key] = []


@pytest.fixture
def acceptance_report(request):
    lines = request.config.stash[_acceptance_key]

    def report(n, ok, detail):
        lines.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
