import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return random.Random(20240611)


# --- acceptance criteria: time limits and a one-line-per-criterion summary -----------------------

_ACCEPTANCE: dict[int, tuple[str, float, bool, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title, limit = marker.args
    if report.when == "call":
        if report.passed and report.duration > limit:
            report.outcome = "failed"
            report.longrepr = f"criterion {number} took {report.duration:.2f} s, limit {limit} s"
        _ACCEPTANCE[number] = (title, limit, report.passed, report.duration)
    elif report.failed:
        _ACCEPTANCE[number] = (title, limit, False, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, limit, passed, duration = _ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {number:>2}. {title:<32} {duration:8.2f} s  (limit {limit} s)")
