from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[str, str] = {}
_DETAILS: dict[str, list] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA[name] = "PASS" if report.outcome == "passed" else "FAIL"
        _DETAILS[name] = list(report.user_properties)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        terminalreporter.write_line(f"{name}: {_CRITERIA[name]}")
        for key, value in _DETAILS.get(name, ()):
            terminalreporter.write_line(f"    {key}: {value} cases")
