import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parents[1] / "src" / "curvequot" / "data"


@pytest.fixture
def data_dir():
    return DATA


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number, func, title in CRITERIA:
        key = next((k for k in _acceptance if k.endswith("::" + func.__name__)), None)
        outcome = _acceptance.get(key, "not run")
        status = "PASS" if outcome == "passed" else "FAIL" if key else "NOT RUN"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
