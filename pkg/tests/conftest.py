import numpy as np
import pytest

_acceptance_lines = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if report.when != "call" or "acceptance" not in report.keywords:
        return
    verdict = "PASS" if report.passed else "FAIL"
    _acceptance_lines.append(f"[{verdict}] {report.head_line}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
