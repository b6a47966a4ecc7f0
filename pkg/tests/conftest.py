import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion.

    Usage: ``criterion(k, detail)`` at the end of a passing test; failures
    are recorded by the report hook below.
    """
    marker = request.node.get_closest_marker("criterion")
    number = marker.args[0]
    ACCEPTANCE[number] = (False, "did not finish")

    def done(detail=""):
        ACCEPTANCE[number] = (True, detail)

    return done


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call" and rep.failed:
        msg = str(call.excinfo.value).splitlines()[0] if call.excinfo else "failed"
        ACCEPTANCE[marker.args[0]] = (False, msg[:160])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
