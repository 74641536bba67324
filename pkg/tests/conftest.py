import pytest

_criteria = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion under its number."""
    def record(number, title):
        _criteria[number] = [title, None]
        request.node._criterion = number
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    number = getattr(item, "_criterion", None)
    if number is not None and rep.when == "call":
        _criteria[number][1] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
