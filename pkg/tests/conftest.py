from pathlib import Path

import pytest

from cupcap.core import parse_pair_function

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fig1():
    return parse_pair_function((DATA / "fig1.pairfn").read_text())


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES[name] = f"{status} {name} ({report.duration:.2f}s)"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[name])
