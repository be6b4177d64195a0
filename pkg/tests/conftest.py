import mpmath
import pytest


@pytest.fixture(autouse=True)
def working_precision():
    with mpmath.workdps(60):
        yield


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for n in sorted(REPORT):
            terminalreporter.write_line(REPORT[n])
