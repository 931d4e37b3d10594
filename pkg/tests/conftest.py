import numpy as np
import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running Monte Carlo / sweep test")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion, shown at the end of the run."""

    def record(cid: str, passed: bool, detail: str) -> bool:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {cid}: {detail}")
        print(_ACCEPTANCE_LINES[-1])
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
