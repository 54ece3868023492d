"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

_titles = {}
_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.module.__name__.endswith("test_acceptance"):
            doc = (item.function.__doc__ or item.name).strip()
            _titles[item.nodeid] = doc.splitlines()[0]


def pytest_runtest_logreport(report):
    if report.nodeid not in _titles:
        return
    if report.failed:
        _results[report.nodeid] = "FAIL"
    elif report.when == "call":
        _results.setdefault(report.nodeid, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, title in _titles.items():
        if nodeid in _results:
            terminalreporter.write_line(f"{_results[nodeid]}  {title}")
