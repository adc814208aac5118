import random

import pytest

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    previous = _criteria.get(number)
    if previous is None or previous[1] == "PASS":
        _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] {number}. {title}")
