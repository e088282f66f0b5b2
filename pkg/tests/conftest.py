import pytest

CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, printed now and in the run summary."""

    class Recorder:
        def __init__(self):
            self.number = None
            self.title = ""

        def __call__(self, number, title):
            self.number, self.title = number, title

    rec = Recorder()
    yield rec
    if rec.number is None:
        return
    call = getattr(request.node, "rep_call", None)
    ok = call is not None and call.passed
    line = f"{'PASS' if ok else 'FAIL'} criterion {rec.number:>2}: {rec.title}"
    CRITERIA[rec.number] = line
    print(line)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
