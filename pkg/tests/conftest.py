import pytest

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record ``(label, passed, detail)`` for the acceptance summary.

    The test calls ``criterion(label, passed, detail)`` once; the outcome is
    also asserted so a failing criterion fails the test.
    """
    def record(label, passed, detail=""):
        _CRITERIA[label] = (bool(passed), detail)
        line = f"{'PASS' if passed else 'FAIL'}  {label}  {detail}"
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA):
        passed, detail = _CRITERIA[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
