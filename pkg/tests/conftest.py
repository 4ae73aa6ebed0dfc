import numpy as np
import pytest
from hypothesis import settings

from extbloch.rand import rng

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

_ACCEPTANCE = []


@pytest.fixture
def gen():
    return rng(12345)


@pytest.fixture
def acceptance_log():
    """Collects one line per acceptance criterion; printed in the terminal summary."""

    def record(label, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def max_abs(x):
    return float(np.max(np.abs(np.asarray(x))))
