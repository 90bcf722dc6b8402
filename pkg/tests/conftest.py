import pytest

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Register the test as an acceptance criterion: ``criterion("1", "label")``."""

    def register(key, label):
        _CRITERIA[request.node.nodeid] = (key, label)

    return register


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.nodeid in _CRITERIA and (rep.when == "call" or status != "passed"):
                outcomes[rep.nodeid] = "PASS" if status == "passed" else "FAIL"
    terminalreporter.section("acceptance criteria")
    for nodeid, (key, label) in sorted(_CRITERIA.items(), key=lambda kv: kv[1][0]):
        terminalreporter.write_line(f"criterion {key}: {outcomes.get(nodeid, 'FAIL')}  {label}")
