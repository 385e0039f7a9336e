import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criterion_of: dict[str, int] = {}
_outcomes: dict[int, list[bool]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criterion_of[item.nodeid] = m.args[0]


def pytest_runtest_logreport(report):
    n = _criterion_of.get(report.nodeid)
    if n is None:
        return
    if report.failed or (report.when == "call" and report.passed) or report.skipped:
        _outcomes.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_of:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(set(_criterion_of.values())):
        results = _outcomes.get(n)
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status}")
