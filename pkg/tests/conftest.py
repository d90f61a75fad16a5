import numpy as np
import pytest

from presort_geom.core import make_presorting


def presort(n, seed):
    rng = np.random.default_rng(seed)
    return make_presorting(rng.random((n, 2)).tolist())


@pytest.fixture
def small_pre():
    return make_presorting([(0.1, 0.1), (0.2, 0.9), (0.3, 0.3), (0.8, 0.5), (0.81, 0.52)])


ACCEPTANCE = {}


def report(criterion, ok, detail=""):
    """Record and print one acceptance line."""
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
