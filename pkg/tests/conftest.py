import numpy as np
import pytest

from perceptlet import Perceptlet


@pytest.fixture(params=["linear", "sin"])
def family(request):
    return request.param


@pytest.fixture
def perceptlet(family):
    return Perceptlet.from_name(family)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_VERDICTS_KEY = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for the acceptance summary, then assert it."""
    lines = request.config.stash.setdefault(_VERDICTS_KEY, [])

    def record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_VERDICTS_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
