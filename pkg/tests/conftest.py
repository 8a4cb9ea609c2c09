import pytest
from hypothesis import settings

from helpers import flagship

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def flagship_graph():
    return flagship()


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        summary = dict(report.user_properties).get("summary", "")
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = ("PASS" if report.outcome == "passed" else "FAIL", summary)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (verdict, summary) in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"[{verdict}] {name}: {summary}")
