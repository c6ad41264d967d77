import pytest

# Filled by tests/test_acceptance.py: criterion number -> (passed, description).
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, desc = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {desc}")


@pytest.fixture
def criterion(request):
    """Record pass/fail of an acceptance test under its criterion number."""
    marker = request.node.get_closest_marker("criterion")
    number, desc = marker.args
    ACCEPTANCE_RESULTS[number] = (False, desc)
    yield
    rep = getattr(request.node, "rep_call", None)
    ACCEPTANCE_RESULTS[number] = (bool(rep and rep.passed), desc)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, description): acceptance criterion")
