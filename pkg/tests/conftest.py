import pytest

_criteria: dict[str, tuple[int, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    key = report.nodeid
    if report.when == "call" or report.outcome == "failed":
        outcome = "PASS" if report.passed else "FAIL"
        if report.skipped:
            outcome = "SKIP"
        if key not in _criteria or outcome == "FAIL":
            _criteria[key] = (number, title, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_criteria.values()):
        terminalreporter.write_line(f"criterion {number:>2}  {outcome}  {title}")
