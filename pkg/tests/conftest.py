import pytest

_RESULTS: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _RESULTS.setdefault(m.args[0], {"title": m.args[1], "outcomes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m and (rep.when == "call" or rep.failed):
        _RESULTS[m.args[0]]["outcomes"].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        r = _RESULTS[n]
        ok = bool(r["outcomes"]) and all(r["outcomes"])
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {r['title']}")
