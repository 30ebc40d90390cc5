import pytest
from hypothesis import HealthCheck, settings

# the first call into a kernel compiles it; keep that out of hypothesis timing
settings.register_profile(
    "csfkit", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("csfkit")

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "failed": [], "ran": False})
    if report.when == "call" or report.failed:
        entry["ran"] = True
        if report.failed:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        verdict = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number}: {verdict}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
