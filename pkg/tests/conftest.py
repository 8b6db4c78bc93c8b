import os
import time

import numpy as np
import pytest

from czsynth.bench import sweep


def direct_ckz_diagonal(n, wires):
    """Oracle: -1 exactly where every touched wire reads 1 (wire 0 = MSB)."""
    idx = np.arange(1 << n)
    hit = np.ones(1 << n, dtype=bool)
    for w in wires:
        hit &= ((idx >> (n - 1 - w)) & 1).astype(bool)
    return np.where(hit, -1.0, 1.0)


@pytest.fixture(scope="session")
def sweeps():
    """Exhaustive sweeps for n = 2, 3, 4 and their wall times, computed once."""
    workers = max(1, min(8, os.cpu_count() or 1))
    out, times = {}, {}
    for n in (2, 3, 4):
        start = time.perf_counter()
        out[n] = sweep(n, workers=workers)
        times[n] = time.perf_counter() - start
    return out, times


@pytest.fixture(scope="session")
def fig5_path():
    return os.path.join(os.path.dirname(__file__), "data", "fig5.txt")


# lines recorded by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
