import logging

import numpy as np
import pytest

BLOB4 = [(0.1, 0.1), (0.15, 0.1), (0.9, 0.9), (0.85, 0.9)]


@pytest.fixture
def blob4():
    return np.array(BLOB4)


@pytest.fixture(autouse=True)
def _quiet_config_warnings(caplog):
    caplog.set_level(logging.ERROR, logger="deepartmap")


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def emit(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
