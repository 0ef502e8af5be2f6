import pytest

_criteria: dict[str, tuple[int, str]] = {}
_outcomes: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid in _criteria:
        number, _ = _criteria[report.nodeid]
        ok = _outcomes.get(number, True) and not report.failed
        if report.when == "call" or not ok:
            _outcomes[number] = ok


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    titles = dict(_criteria.values())
    for number in sorted(_outcomes):
        status = "PASS" if _outcomes[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({titles[number]}): {status}")
