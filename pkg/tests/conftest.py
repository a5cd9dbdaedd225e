import pytest

_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or rep.failed:
        prev = _criteria.get(number)
        status = "FAIL" if rep.failed or (prev and prev[1] == "FAIL") else "PASS"
        elapsed = rep.duration + (prev[2] if prev else 0.0)
        _criteria[number] = (title, status, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, status, elapsed = _criteria[number]
        terminalreporter.write_line(f"{status}  criterion {number}: {title} ({elapsed:.2f}s)")
